#include "mptsp/graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "mptsp/error.hpp"

namespace mptsp {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedJson: return "malformed-json";
    case ErrorCode::kIndexOutOfRange: return "index-out-of-range";
    case ErrorCode::kSelfLoop: return "self-loop";
    case ErrorCode::kDuplicateEdge: return "duplicate-edge";
    case ErrorCode::kDuplicateCommodity: return "duplicate-commodity";
    case ErrorCode::kDisconnected: return "disconnected";
    case ErrorCode::kInvalidOrder: return "invalid-order";
    case ErrorCode::kIterationLimit: return "iteration-limit";
    case ErrorCode::kLpInfeasible: return "lp-infeasible";
    case ErrorCode::kResidualNotDecomposable: return "residual-not-decomposable";
    case ErrorCode::kOddCardinality: return "odd-cardinality";
    case ErrorCode::kParityViolation: return "parity-violation";
    case ErrorCode::kDisconnectedUnion: return "disconnected-union";
    case ErrorCode::kInstanceTooLarge: return "instance-too-large";
    case ErrorCode::kGenerationFailed: return "generation-failed";
    case ErrorCode::kInvalidArgument: return "invalid-argument";
  }
  return "unknown";
}

bool is_input_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedJson:
    case ErrorCode::kIndexOutOfRange:
    case ErrorCode::kSelfLoop:
    case ErrorCode::kDuplicateEdge:
    case ErrorCode::kDuplicateCommodity:
    case ErrorCode::kDisconnected:
    case ErrorCode::kInvalidOrder:
    case ErrorCode::kInstanceTooLarge:
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kOddCardinality:
      return true;
    default:
      return false;
  }
}

Graph::Graph(int num_vertices, std::vector<Edge> edges)
    : num_vertices_(num_vertices), edges_(std::move(edges)) {
  if (num_vertices_ < 0) {
    throw Error(ErrorCode::kIndexOutOfRange, "negative vertex count");
  }
  std::set<Edge> seen;
  std::vector<int> deg(num_vertices_, 0);
  for (const auto& [u, v] : edges_) {
    if (u < 0 || v < 0 || u >= num_vertices_ || v >= num_vertices_) {
      throw Error(ErrorCode::kIndexOutOfRange,
                  "edge endpoint out of range: [" + std::to_string(u) + "," +
                      std::to_string(v) + "]");
    }
    if (u == v) {
      throw Error(ErrorCode::kSelfLoop,
                  "self-loop at vertex " + std::to_string(u));
    }
    if (!seen.insert(std::minmax(u, v)).second) {
      throw Error(ErrorCode::kDuplicateEdge,
                  "duplicate edge {" + std::to_string(u) + "," +
                      std::to_string(v) + "}");
    }
    ++deg[u];
    ++deg[v];
  }
  offsets_.assign(num_vertices_ + 1, 0);
  for (int v = 0; v < num_vertices_; ++v) offsets_[v + 1] = offsets_[v] + deg[v];
  incidence_.resize(offsets_.back());
  std::vector<int> fill(offsets_.begin(), offsets_.end() - 1);
  for (int e = 0; e < num_edges(); ++e) {
    const auto [u, v] = edges_[e];
    incidence_[fill[u]++] = {v, e};
    incidence_[fill[v]++] = {u, e};
  }
  for (int v = 0; v < num_vertices_; ++v) {
    std::sort(incidence_.begin() + offsets_[v], incidence_.begin() + offsets_[v + 1],
              [](const Incidence& a, const Incidence& b) {
                return a.neighbor < b.neighbor;
              });
  }
}

int Graph::find_edge(Vertex u, Vertex v) const {
  auto inc = incident(u);
  auto it = std::lower_bound(inc.begin(), inc.end(), v,
                             [](const Incidence& a, Vertex x) {
                               return a.neighbor < x;
                             });
  return (it != inc.end() && it->neighbor == v) ? it->edge : -1;
}

BidirectedGraph::BidirectedGraph(const Graph& base) : base_(base) {
  const int n = base_.num_vertices();
  arcs_.reserve(2 * base_.num_edges());
  for (const auto& [u, v] : base_.edges()) {
    arcs_.push_back({u, v});
    arcs_.push_back({v, u});
  }
  out_offsets_.assign(n + 1, 0);
  in_offsets_.assign(n + 1, 0);
  for (const Arc& a : arcs_) {
    ++out_offsets_[a.tail + 1];
    ++in_offsets_[a.head + 1];
  }
  for (int v = 0; v < n; ++v) {
    out_offsets_[v + 1] += out_offsets_[v];
    in_offsets_[v + 1] += in_offsets_[v];
  }
  out_.resize(arcs_.size());
  in_.resize(arcs_.size());
  std::vector<int> out_fill(out_offsets_.begin(), out_offsets_.end() - 1);
  std::vector<int> in_fill(in_offsets_.begin(), in_offsets_.end() - 1);
  // Arc ids are visited in ascending order, so each list comes out sorted.
  for (int a = 0; a < num_arcs(); ++a) {
    out_[out_fill[arcs_[a].tail]++] = a;
    in_[in_fill[arcs_[a].head]++] = a;
  }
}

int BidirectedGraph::find_arc(Vertex tail, Vertex head) const {
  const int e = base_.find_edge(tail, head);
  if (e < 0) return -1;
  return arcs_[2 * e].tail == tail ? 2 * e : 2 * e + 1;
}

CapacitatedNetwork::CapacitatedNetwork(const BidirectedGraph& graph,
                                       std::vector<double> capacity)
    : graph_(&graph), capacity_(std::move(capacity)) {
  if (static_cast<int>(capacity_.size()) != graph.num_arcs()) {
    throw Error(ErrorCode::kInvalidArgument, "capacity vector size mismatch");
  }
  for (double c : capacity_) {
    if (!(c >= 0.0) || !std::isfinite(c)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "capacities must be finite and nonnegative");
    }
  }
}

std::vector<int> bfs_distances(const Graph& g, Vertex source) {
  std::vector<int> dist(g.num_vertices(), kUnreachable);
  std::vector<Vertex> queue;
  queue.reserve(g.num_vertices());
  dist[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex u = queue[head];
    for (const auto& inc : g.incident(u)) {
      if (dist[inc.neighbor] == kUnreachable) {
        dist[inc.neighbor] = dist[u] + 1;
        queue.push_back(inc.neighbor);
      }
    }
  }
  return dist;
}

bool is_connected(const Graph& g) {
  if (g.num_vertices() <= 1) return true;
  const auto dist = bfs_distances(g, 0);
  return std::none_of(dist.begin(), dist.end(),
                      [](int d) { return d == kUnreachable; });
}

std::vector<Vertex> shortest_path(const Graph& g, Vertex source, Vertex target) {
  // Walk back from target towards source along decreasing distance.
  const auto dist = bfs_distances(g, source);
  if (dist[target] == kUnreachable) return {};
  std::vector<Vertex> path{target};
  Vertex v = target;
  while (v != source) {
    for (const auto& inc : g.incident(v)) {
      if (dist[inc.neighbor] == dist[v] - 1) {
        v = inc.neighbor;
        break;
      }
    }
    path.push_back(v);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<int> all_pairs_distances(const Graph& g) {
  const int n = g.num_vertices();
  std::vector<int> d(static_cast<std::size_t>(n) * n);
  for (Vertex s = 0; s < n; ++s) {
    const auto row = bfs_distances(g, s);
    std::copy(row.begin(), row.end(), d.begin() + static_cast<std::size_t>(s) * n);
  }
  return d;
}

namespace {

bool build_levels(const BidirectedGraph& g, Vertex s, Vertex t,
                  MaxFlowScratch& sc) {
  std::fill(sc.level.begin(), sc.level.end(), -1);
  sc.queue.clear();
  sc.level[s] = 0;
  sc.queue.push_back(s);
  for (std::size_t head = 0; head < sc.queue.size(); ++head) {
    const Vertex u = sc.queue[head];
    for (int a : g.out_arcs(u)) {
      const Vertex w = g.arc(a).head;
      if (sc.level[w] < 0 && sc.residual[a] > kFlowEpsilon) {
        sc.level[w] = sc.level[u] + 1;
        sc.queue.push_back(w);
      }
    }
  }
  return sc.level[t] >= 0;
}

double augment(const BidirectedGraph& g, Vertex u, Vertex t, double limit,
               MaxFlowScratch& sc) {
  if (u == t) return limit;
  auto out = g.out_arcs(u);
  for (int& i = sc.next_arc[u]; i < static_cast<int>(out.size()); ++i) {
    const int a = out[i];
    const Vertex w = g.arc(a).head;
    if (sc.level[w] != sc.level[u] + 1 || sc.residual[a] <= kFlowEpsilon) {
      continue;
    }
    const double pushed =
        augment(g, w, t, std::min(limit, sc.residual[a]), sc);
    if (pushed > 0.0) {
      sc.residual[a] -= pushed;
      sc.residual[BidirectedGraph::reverse(a)] += pushed;
      return pushed;
    }
  }
  return 0.0;
}

}  // namespace

MinCut min_cut(const CapacitatedNetwork& net, Vertex s, Vertex t,
               MaxFlowScratch& sc) {
  const BidirectedGraph& g = net.graph();
  const int n = g.num_vertices();
  if (s == t) throw Error(ErrorCode::kInvalidArgument, "min_cut requires s != t");
  sc.residual.assign(net.capacities().begin(), net.capacities().end());
  sc.level.assign(n, -1);
  sc.next_arc.assign(n, 0);

  // Reverse arcs double as residual back-edges, so the residual of arc a
  // starts at its own capacity and grows by flow pushed on a ^ 1.
  while (build_levels(g, s, t, sc)) {
    std::fill(sc.next_arc.begin(), sc.next_arc.end(), 0);
    while (augment(g, s, t, std::numeric_limits<double>::infinity(), sc) > 0.0) {
    }
  }

  MinCut cut;
  cut.source_side.assign(n, 0);
  for (Vertex v = 0; v < n; ++v) cut.source_side[v] = sc.level[v] >= 0;
  // Report the capacity of the cut itself; it matches the flow up to the
  // residual threshold.
  cut.value = cut_capacity(net, cut.source_side);
  return cut;
}

MinCut min_cut(const CapacitatedNetwork& net, Vertex s, Vertex t) {
  MaxFlowScratch scratch;
  return min_cut(net, s, t, scratch);
}

double cut_capacity(const CapacitatedNetwork& net, const std::vector<char>& in_set) {
  double total = 0.0;
  const auto& arcs = net.graph().arcs();
  for (int a = 0; a < static_cast<int>(arcs.size()); ++a) {
    if (in_set[arcs[a].tail] && !in_set[arcs[a].head]) total += net.capacity(a);
  }
  return total;
}

}  // namespace mptsp
