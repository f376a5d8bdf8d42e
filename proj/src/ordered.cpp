#include "mptsp/ordered.hpp"

#include <algorithm>

#include "mptsp/error.hpp"

namespace mptsp {

namespace {

// Hierholzer's algorithm on the edges of `remaining`, consuming them. Takes
// the lowest-neighbor unused edge at every step.
std::vector<Vertex> euler_circuit(const Graph& g, std::vector<int>& remaining, Vertex start) {
  std::vector<std::size_t> cursor(g.num_vertices(), 0);
  std::vector<Vertex> stack{start};
  std::vector<Vertex> circuit;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    const auto inc = g.incident(v);
    while (cursor[v] < inc.size() && remaining[inc[cursor[v]].edge] == 0) ++cursor[v];
    if (cursor[v] == inc.size()) {
      circuit.push_back(v);
      stack.pop_back();
      continue;
    }
    --remaining[inc[cursor[v]].edge];
    stack.push_back(inc[cursor[v]].neighbor);
  }
  std::reverse(circuit.begin(), circuit.end());
  return circuit;
}

}  // namespace

std::vector<std::vector<Vertex>> extract_ordered_walks(
    const Graph& g, std::vector<std::vector<Vertex>> walks, const EdgeMultiset& extra) {
  const int n = g.num_vertices();
  for (Vertex v = 0; v < n; ++v) {
    if (extra.degree(v) % 2 != 0) {
      throw Error(ErrorCode::kParityViolation,
                  "extra edges have odd degree at vertex " + std::to_string(v));
    }
  }

  // Component labels of the extra-edge support.
  std::vector<int> component(n, -1);
  int num_components = 0;
  for (Vertex root = 0; root < n; ++root) {
    if (component[root] >= 0 || extra.degree(root) == 0) continue;
    std::vector<Vertex> queue{root};
    component[root] = num_components;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (const auto& inc : g.incident(queue[head])) {
        if (extra.count(inc.edge) == 0 || component[inc.neighbor] >= 0) continue;
        component[inc.neighbor] = num_components;
        queue.push_back(inc.neighbor);
      }
    }
    ++num_components;
  }

  std::vector<int> remaining = extra.counts();
  for (int c = 0; c < num_components; ++c) {
    int walk = -1;
    std::size_t position = 0;
    for (int i = 0; i < static_cast<int>(walks.size()) && walk < 0; ++i) {
      for (std::size_t j = 0; j < walks[i].size(); ++j) {
        if (component[walks[i][j]] == c) {
          walk = i;
          position = j;
          break;
        }
      }
    }
    if (walk < 0) {
      throw Error(ErrorCode::kDisconnectedUnion,
                  "extra-edge component " + std::to_string(c) + " touches no walk");
    }
    auto& w = walks[walk];
    const auto circuit = euler_circuit(g, remaining, w[position]);
    w.insert(w.begin() + position + 1, circuit.begin() + 1, circuit.end());
  }
  return walks;
}

OrderedResult run_ordered(const Instance& inst, const LpResult& lp,
                          const Decomposition& dec, std::uint64_t seed) {
  const Graph& g = inst.graph();
  SamplerState state = sample_paths(inst, dec, seed);

  OrderedResult result;
  result.chosen = state.chosen;
  result.report.lp = lp.solution.objective;
  for (const auto& w : state.walks) result.report.sampling += static_cast<std::int64_t>(w.size()) - 1;

  EdgeMultiset all(g);
  for (const auto& w : state.walks) all.add_walk(w);
  EdgeMultiset extra(g);
  const auto plan = plan_attachments(g, state.walks, state.covered);
  for (const auto& att : plan) extra.add_pair(att.vertex, att.anchor);
  all.add_all(extra);
  result.report.reconnection = static_cast<std::int64_t>(plan.size());

  result.join = min_tjoin(g, odd_vertices(all));
  for (int e : result.join.edges) extra.add_edge(e);
  result.report.parity = result.join.cost();

  result.solution.walks = extract_ordered_walks(g, std::move(state.walks), extra);
  result.solution.cost = result.solution.walk_cost();
  return result;
}

OrderedResult solve_ordered(const OrderedInstance& inst, std::uint64_t seed) {
  const Instance multi = inst.to_multipath();
  const LpResult lp = solve_lp(multi);
  const Decomposition dec = decompose(multi, lp.solution);
  return run_ordered(multi, lp, dec, seed);
}

bool preserves_order(const OrderedInstance& inst, const Solution& sol) {
  const auto& order = inst.order();
  const int k = inst.num_terminals();
  if (static_cast<int>(sol.walks.size()) != k) return false;
  for (int i = 0; i < k; ++i) {
    const auto& w = sol.walks[i];
    if (w.empty() || w.front() != order[i] || w.back() != order[(i + 1) % k]) return false;
  }
  return true;
}

}  // namespace mptsp
