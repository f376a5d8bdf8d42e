#include "mptsp/instance.hpp"

#include <algorithm>
#include <set>

#include "mptsp/error.hpp"

namespace mptsp {

namespace {

void require_vertex(const Graph& g, Vertex v, const char* what) {
  if (v < 0 || v >= g.num_vertices()) {
    throw Error(ErrorCode::kIndexOutOfRange,
                std::string(what) + " out of range: " + std::to_string(v));
  }
}

}  // namespace

Instance::Instance(Graph graph, std::vector<Commodity> commodities)
    : graph_(std::move(graph)), commodities_(std::move(commodities)) {
  if (commodities_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "at least one commodity is required");
  }
  std::set<Commodity> seen;
  for (const auto& c : commodities_) {
    require_vertex(graph_, c.source, "commodity source");
    require_vertex(graph_, c.sink, "commodity sink");
    if (!seen.insert(c).second) {
      throw Error(ErrorCode::kDuplicateCommodity,
                  "duplicate commodity [" + std::to_string(c.source) + "," +
                      std::to_string(c.sink) + "]");
    }
  }
  if (!is_connected(graph_)) {
    throw Error(ErrorCode::kDisconnected, "graph is not connected");
  }
}

std::vector<char> Instance::terminal_mask() const {
  std::vector<char> mask(num_vertices(), 0);
  for (const auto& c : commodities_) mask[c.source] = mask[c.sink] = 1;
  return mask;
}

std::vector<char> Instance::sink_mask() const {
  std::vector<char> mask(num_vertices(), 0);
  for (const auto& c : commodities_) mask[c.sink] = 1;
  return mask;
}

OrderedInstance::OrderedInstance(Graph graph, std::vector<Vertex> order)
    : graph_(std::move(graph)), order_(std::move(order)) {
  if (order_.size() < 2) {
    throw Error(ErrorCode::kInvalidOrder, "an order needs at least two terminals");
  }
  std::set<Vertex> seen;
  for (Vertex o : order_) {
    require_vertex(graph_, o, "terminal");
    if (!seen.insert(o).second) {
      throw Error(ErrorCode::kInvalidOrder,
                  "terminal repeated in order: " + std::to_string(o));
    }
  }
  if (!is_connected(graph_)) {
    throw Error(ErrorCode::kDisconnected, "graph is not connected");
  }
}

Instance OrderedInstance::to_multipath() const {
  std::vector<Commodity> commodities;
  const int k = num_terminals();
  for (int i = 0; i < k; ++i) commodities.push_back({order_[i], order_[(i + 1) % k]});
  return Instance(graph_, std::move(commodities));
}

std::int64_t Solution::walk_cost() const {
  std::int64_t total = 0;
  for (const auto& w : walks) {
    if (!w.empty()) total += static_cast<std::int64_t>(w.size()) - 1;
  }
  return total;
}

bool check_feasible(const Instance& inst) {
  const Graph& g = inst.graph();
  // Label components, then test both reachability conditions per label.
  std::vector<int> comp(g.num_vertices(), -1);
  int label = 0;
  for (Vertex r = 0; r < g.num_vertices(); ++r) {
    if (comp[r] >= 0) continue;
    const auto dist = bfs_distances(g, r);
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      if (dist[v] != kUnreachable) comp[v] = label;
    }
    ++label;
  }
  std::vector<char> has_source(label, 0);
  for (const auto& c : inst.commodities()) {
    if (comp[c.source] != comp[c.sink]) return false;
    has_source[comp[c.source]] = 1;
  }
  return std::all_of(comp.begin(), comp.end(),
                     [&](int l) { return has_source[l] != 0; });
}

Validation validate_solution(const Instance& inst, const Solution& sol) {
  auto fail = [](std::string msg) { return Validation{false, std::move(msg)}; };
  const Graph& g = inst.graph();
  if (static_cast<int>(sol.walks.size()) != inst.num_commodities()) {
    return fail("walk count " + std::to_string(sol.walks.size()) +
                " does not match commodity count " +
                std::to_string(inst.num_commodities()));
  }
  std::vector<char> covered(g.num_vertices(), 0);
  for (int i = 0; i < inst.num_commodities(); ++i) {
    const auto& walk = sol.walks[i];
    const auto& c = inst.commodity(i);
    const std::string tag = "walk " + std::to_string(i) + ": ";
    if (walk.empty()) return fail(tag + "empty walk");
    for (Vertex v : walk) {
      if (v < 0 || v >= g.num_vertices()) {
        return fail(tag + "vertex out of range " + std::to_string(v));
      }
      covered[v] = 1;
    }
    if (walk.front() != c.source) return fail(tag + "does not start at its source");
    if (walk.back() != c.sink) return fail(tag + "does not end at its sink");
    for (std::size_t j = 1; j < walk.size(); ++j) {
      if (!g.adjacent(walk[j - 1], walk[j])) {
        return fail(tag + "not an edge {" + std::to_string(walk[j - 1]) + "," +
                    std::to_string(walk[j]) + "}");
      }
    }
  }
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (!covered[v]) return fail("uncovered vertex " + std::to_string(v));
  }
  if (sol.cost != sol.walk_cost()) {
    return fail("cost mismatch: recorded " + std::to_string(sol.cost) +
                ", walks use " + std::to_string(sol.walk_cost()));
  }
  return {};
}

}  // namespace mptsp
