#include "mptsp/vrp.hpp"

#include <algorithm>

#include "mptsp/error.hpp"

namespace mptsp {

namespace {

std::vector<Commodity> closed_commodities(const std::vector<Vertex>& depots) {
  std::vector<Commodity> out;
  for (Vertex d : depots) out.push_back({d, d});
  return out;
}

std::vector<Vertex> depots_of(const Instance& inst) {
  std::vector<Vertex> depots;
  for (const auto& c : inst.commodities()) {
    if (!c.closed()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "depot instances need s == t for every commodity");
    }
    depots.push_back(c.source);
  }
  return depots;
}

void tree_walk(const std::vector<std::vector<Vertex>>& children, Vertex v,
               std::vector<Vertex>& out) {
  out.push_back(v);
  for (Vertex c : children[v]) {
    tree_walk(children, c, out);
    out.push_back(v);
  }
}

}  // namespace

VrpInstance::VrpInstance(Graph graph, std::vector<Vertex> depots)
    : instance_(std::move(graph), closed_commodities(depots)), depots_(std::move(depots)) {}

VrpInstance::VrpInstance(Instance inst) : instance_(std::move(inst)) {
  depots_ = depots_of(instance_);
}

DepotForest depot_forest(const VrpInstance& inst) {
  const Graph& g = inst.graph();
  const int n = g.num_vertices();
  DepotForest forest{std::vector<Vertex>(n, -1), std::vector<int>(n, -1)};
  std::vector<int> dist(n, kUnreachable);
  std::vector<Vertex> layer;
  for (int d = 0; d < inst.num_depots(); ++d) {
    const Vertex v = inst.depots()[d];
    dist[v] = 0;
    forest.owner[v] = d;
    layer.push_back(v);
  }
  for (int depth = 1; !layer.empty(); ++depth) {
    std::vector<Vertex> next;
    for (Vertex u : layer) {
      for (const auto& inc : g.incident(u)) {
        if (dist[inc.neighbor] == kUnreachable) {
          dist[inc.neighbor] = depth;
          next.push_back(inc.neighbor);
        }
      }
    }
    std::sort(next.begin(), next.end());
    for (Vertex v : next) {
      for (const auto& inc : g.incident(v)) {
        const Vertex u = inc.neighbor;
        if (dist[u] != depth - 1) continue;
        if (forest.parent[v] < 0 || forest.owner[u] < forest.owner[v]) {
          forest.parent[v] = u;
          forest.owner[v] = forest.owner[u];
        }
      }
    }
    layer = std::move(next);
  }
  return forest;
}

Solution solve_vrp_forest(const VrpInstance& inst) {
  const int n = inst.graph().num_vertices();
  const DepotForest forest = depot_forest(inst);
  std::vector<std::vector<Vertex>> children(n);
  for (Vertex v = 0; v < n; ++v) {
    if (forest.parent[v] >= 0) children[forest.parent[v]].push_back(v);
  }
  Solution sol;
  for (Vertex d : inst.depots()) {
    std::vector<Vertex> walk;
    tree_walk(children, d, walk);
    sol.walks.push_back(std::move(walk));
  }
  sol.cost = sol.walk_cost();
  return sol;
}

std::int64_t distance_sum(const Instance& inst) {
  std::int64_t total = 0;
  for (const auto& c : inst.commodities()) {
    total += bfs_distances(inst.graph(), c.source)[c.sink];
  }
  return total;
}

VrpInstance associated_vrp(const Instance& inst) {
  std::vector<Vertex> depots;
  for (const auto& c : inst.commodities()) {
    if (std::find(depots.begin(), depots.end(), c.source) == depots.end()) {
      depots.push_back(c.source);
    }
  }
  return VrpInstance(inst.graph(), depots);
}

Solution lift_vrp_solution(const Instance& inst, const Solution& depot_walks) {
  const VrpInstance vrp = associated_vrp(inst);
  if (depot_walks.walks.size() != vrp.depots().size()) {
    throw Error(ErrorCode::kInvalidArgument, "depot solution has the wrong walk count");
  }
  std::vector<char> used(vrp.num_depots(), 0);
  Solution sol;
  for (const auto& c : inst.commodities()) {
    const int d = static_cast<int>(
        std::find(vrp.depots().begin(), vrp.depots().end(), c.source) - vrp.depots().begin());
    std::vector<Vertex> walk;
    if (!used[d]) {
      walk = depot_walks.walks[d];
      used[d] = 1;
    } else {
      walk = {c.source};
    }
    const auto path = shortest_path(inst.graph(), c.source, c.sink);
    walk.insert(walk.end(), path.begin() + 1, path.end());
    sol.walks.push_back(std::move(walk));
  }
  sol.cost = sol.walk_cost();
  return sol;
}

CombinerResult combine(const Instance& inst, const MultipathResult& f1,
                       const VrpAlgorithm& vrp_alg) {
  CombinerResult result;
  result.multipath = f1.solution;
  result.lp = f1.report.lp;
  result.vrp = lift_vrp_solution(inst, vrp_alg(associated_vrp(inst)));
  result.distance_sum = distance_sum(inst);
  if (result.vrp.cost < result.multipath.cost) {
    result.winner = CombinerBranch::kVrp;
    result.solution = result.vrp;
  } else {
    result.winner = CombinerBranch::kMultipath;
    result.solution = result.multipath;
  }
  return result;
}

CombinerResult solve_combiner(const Instance& inst, const VrpAlgorithm& vrp_alg) {
  return combine(inst, solve_derandomized(inst), vrp_alg);
}

}  // namespace mptsp
