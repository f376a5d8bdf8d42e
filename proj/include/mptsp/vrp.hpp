#ifndef MPTSP_VRP_HPP
#define MPTSP_VRP_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "mptsp/instance.hpp"
#include "mptsp/multipath.hpp"

namespace mptsp {

// Multi-depot instance: every commodity is (d, d) for a distinct depot d.
class VrpInstance {
 public:
  VrpInstance(Graph graph, std::vector<Vertex> depots);
  // Throws kInvalidArgument unless every commodity has s == t.
  explicit VrpInstance(Instance inst);

  const Instance& instance() const noexcept { return instance_; }
  const Graph& graph() const noexcept { return instance_.graph(); }
  const std::vector<Vertex>& depots() const noexcept { return depots_; }
  int num_depots() const noexcept { return static_cast<int>(depots_.size()); }

 private:
  Instance instance_;
  std::vector<Vertex> depots_;
};

// parent[v] in the BFS forest rooted at the depots (-1 at a depot) and the
// depot index owning v. A vertex joins its nearest depot, ties to the lowest
// depot index, and hangs below the lowest such vertex of the previous layer.
struct DepotForest {
  std::vector<Vertex> parent;
  std::vector<int> owner;
};

DepotForest depot_forest(const VrpInstance& inst);

// Doubles the depot forest and walks each tree from its depot with children
// in ascending order. Cost 2(n - k).
Solution solve_vrp_forest(const VrpInstance& inst);

using VrpAlgorithm = std::function<Solution(const VrpInstance&)>;

// D(I): sum of hop distances dist(s_i, t_i).
std::int64_t distance_sum(const Instance& inst);

// The depot instance on the distinct sources of inst, in first-appearance
// order.
VrpInstance associated_vrp(const Instance& inst);

enum class CombinerBranch { kMultipath, kVrp };

struct CombinerResult {
  Solution solution;
  CombinerBranch winner = CombinerBranch::kMultipath;
  Solution multipath;  // F1
  Solution vrp;        // F2
  std::int64_t distance_sum = 0;
  double lp = 0.0;
};

// F2 from a depot solution: commodity i takes its source's depot walk (only
// the first commodity of each source does; later ones start from [s_i]) and
// appends a shortest s_i -> t_i path.
Solution lift_vrp_solution(const Instance& inst, const Solution& depot_walks);

// Returns the cheaper of F1 and F2, F1 on ties.
CombinerResult combine(const Instance& inst, const MultipathResult& f1,
                       const VrpAlgorithm& vrp_alg = solve_vrp_forest);
CombinerResult solve_combiner(const Instance& inst,
                              const VrpAlgorithm& vrp_alg = solve_vrp_forest);

}  // namespace mptsp

#endif  // MPTSP_VRP_HPP
