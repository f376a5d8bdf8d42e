#ifndef MPTSP_ORDERED_HPP
#define MPTSP_ORDERED_HPP

#include <cstdint>
#include <vector>

#include "mptsp/decomposition.hpp"
#include "mptsp/instance.hpp"
#include "mptsp/lp.hpp"
#include "mptsp/multipath.hpp"
#include "mptsp/parity.hpp"

namespace mptsp {

// Walk i runs from o_i to o_{i+1}. The report's reconnection field counts
// one edge per attached vertex and parity holds |J|.
struct OrderedResult {
  Solution solution;
  CostReport report;
  TJoin join;
  std::vector<int> chosen;
};

// Splits the extra edges into the connected components of their support,
// walks each as an Euler circuit and splices it into the lowest-indexed walk
// touching the component, at that walk's first vertex in the component.
// Throws kParityViolation on an odd degree and kDisconnectedUnion when a
// component touches no walk.
std::vector<std::vector<Vertex>> extract_ordered_walks(
    const Graph& g, std::vector<std::vector<Vertex>> walks, const EdgeMultiset& extra);

// Sampling, single-edge reconnection, smallest T-join on the odd vertices
// and extraction. inst is the multipath form of an ordered instance.
OrderedResult run_ordered(const Instance& inst, const LpResult& lp,
                          const Decomposition& dec, std::uint64_t seed);
OrderedResult solve_ordered(const OrderedInstance& inst, std::uint64_t seed);

// Walk i starts at o_i and ends at o_{i+1}, so the concatenation visits the
// terminals in cyclic order.
bool preserves_order(const OrderedInstance& inst, const Solution& sol);

}  // namespace mptsp

#endif  // MPTSP_ORDERED_HPP
