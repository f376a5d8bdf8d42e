#ifndef MPTSP_INSTANCE_HPP
#define MPTSP_INSTANCE_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mptsp/graph.hpp"

namespace mptsp {

struct Commodity {
  Vertex source;
  Vertex sink;

  bool closed() const noexcept { return source == sink; }
  friend bool operator==(const Commodity&, const Commodity&) = default;
  friend auto operator<=>(const Commodity&, const Commodity&) = default;
};

// Graph plus k >= 1 pairwise distinct source-sink pairs. The constructor
// enforces connectivity and pair distinctness; s == t is allowed.
class Instance {
 public:
  Instance(Graph graph, std::vector<Commodity> commodities);

  const Graph& graph() const noexcept { return graph_; }
  const std::vector<Commodity>& commodities() const noexcept { return commodities_; }
  const Commodity& commodity(int i) const { return commodities_[i]; }
  int num_commodities() const noexcept { return static_cast<int>(commodities_.size()); }
  int num_vertices() const noexcept { return graph_.num_vertices(); }

  // Indicator over V of S union T.
  std::vector<char> terminal_mask() const;
  // Indicator over V of T.
  std::vector<char> sink_mask() const;

 private:
  Graph graph_;
  std::vector<Commodity> commodities_;
};

// Graph plus a cyclic sequence of k >= 2 distinct terminals.
class OrderedInstance {
 public:
  OrderedInstance(Graph graph, std::vector<Vertex> order);

  const Graph& graph() const noexcept { return graph_; }
  const std::vector<Vertex>& order() const noexcept { return order_; }
  int num_terminals() const noexcept { return static_cast<int>(order_.size()); }

  // The commodities (o_i, o_{i+1}) with o_{k+1} = o_1.
  Instance to_multipath() const;

 private:
  Graph graph_;
  std::vector<Vertex> order_;
};

// One walk per commodity, stored as vertex sequences. A commodity with
// s == t and nothing to visit holds the singleton walk [s].
struct Solution {
  std::vector<std::vector<Vertex>> walks;
  std::int64_t cost = 0;

  // Total edge count over all walks, recomputed from the sequences.
  std::int64_t walk_cost() const;
};

struct Validation {
  bool ok = true;
  std::string diagnostic;

  explicit operator bool() const noexcept { return ok; }
};

// Every s_i reaches t_i and every vertex reaches some s_i.
bool check_feasible(const Instance& inst);

// Checks endpoints, adjacency, coverage and the recorded cost. Never throws.
Validation validate_solution(const Instance& inst, const Solution& sol);

}  // namespace mptsp

#endif  // MPTSP_INSTANCE_HPP
