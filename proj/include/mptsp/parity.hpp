#ifndef MPTSP_PARITY_HPP
#define MPTSP_PARITY_HPP

#include <cstdint>
#include <vector>

#include "mptsp/graph.hpp"
#include "mptsp/lp.hpp"

namespace mptsp {

// Multiplicity per base edge of a Graph.
class EdgeMultiset {
 public:
  explicit EdgeMultiset(const Graph& g) : graph_(&g), counts_(g.num_edges(), 0) {}

  const Graph& graph() const noexcept { return *graph_; }
  int count(int edge) const { return counts_[edge]; }
  const std::vector<int>& counts() const noexcept { return counts_; }

  void add_edge(int edge, int times = 1) { counts_[edge] += times; }
  // Adds the edge joining u and v; throws if there is none.
  void add_pair(Vertex u, Vertex v);
  // Adds every consecutive pair of a vertex sequence.
  void add_walk(const std::vector<Vertex>& walk);
  void add_all(const EdgeMultiset& other);

  std::int64_t size() const;
  int degree(Vertex v) const;

  friend bool operator==(const EdgeMultiset& a, const EdgeMultiset& b) {
    return a.counts_ == b.counts_;
  }

 private:
  const Graph* graph_;
  std::vector<int> counts_;
};

// Vertices of odd degree, ascending.
std::vector<Vertex> odd_vertices(const EdgeMultiset& m);

struct TJoin {
  std::vector<int> edges;  // base edge ids, ascending, each at most once
  std::vector<Vertex> targets;
  std::int64_t cost() const { return static_cast<std::int64_t>(edges.size()); }
};

// Minimum T-join: min-weight perfect matching of targets under hop
// distances, then the matched shortest paths summed modulo 2.
// Throws kOddCardinality if |targets| is odd.
TJoin min_tjoin(const Graph& g, const std::vector<Vertex>& targets);

// LP / 2, an upper bound on the smallest T-join for any T arising from an
// ordered instance.
double tjoin_fractional_bound(const FractionalSolution& x);

}  // namespace mptsp

#endif  // MPTSP_PARITY_HPP
