#ifndef MPTSP_MATCHING_HPP
#define MPTSP_MATCHING_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace mptsp {

struct WeightedEdge {
  int u;
  int v;
  std::int64_t weight;
};

// Edmonds' weighted blossom algorithm, O(n^3), exact on integer weights.
// Returns mate[v] (or -1). With max_cardinality set, the result is a
// maximum-weight matching among the maximum-cardinality ones.
std::vector<int> max_weight_matching(int num_vertices,
                                     const std::vector<WeightedEdge>& edges,
                                     bool max_cardinality);

using CostMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

// Minimum-cost perfect matching on the complete graph with symmetric
// nonnegative costs. Requires an even dimension.
std::vector<int> min_weight_perfect_matching(const CostMatrix& cost);

}  // namespace mptsp

#endif  // MPTSP_MATCHING_HPP
