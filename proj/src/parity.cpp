#include "mptsp/parity.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "mptsp/error.hpp"
#include "mptsp/matching.hpp"

namespace mptsp {

void EdgeMultiset::add_pair(Vertex u, Vertex v) {
  const int e = graph_->find_edge(u, v);
  if (e < 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "not an edge {" + std::to_string(u) + "," + std::to_string(v) + "}");
  }
  ++counts_[e];
}

void EdgeMultiset::add_walk(const std::vector<Vertex>& walk) {
  for (std::size_t j = 1; j < walk.size(); ++j) add_pair(walk[j - 1], walk[j]);
}

void EdgeMultiset::add_all(const EdgeMultiset& other) {
  for (std::size_t e = 0; e < counts_.size(); ++e) counts_[e] += other.counts_[e];
}

std::int64_t EdgeMultiset::size() const {
  return std::accumulate(counts_.begin(), counts_.end(), std::int64_t{0});
}

int EdgeMultiset::degree(Vertex v) const {
  int d = 0;
  for (const auto& inc : graph_->incident(v)) d += counts_[inc.edge];
  return d;
}

std::vector<Vertex> odd_vertices(const EdgeMultiset& m) {
  std::vector<int> parity(m.graph().num_vertices(), 0);
  for (int e = 0; e < m.graph().num_edges(); ++e) {
    if (m.count(e) % 2 == 0) continue;
    parity[m.graph().edge(e).first] ^= 1;
    parity[m.graph().edge(e).second] ^= 1;
  }
  std::vector<Vertex> odd;
  for (Vertex v = 0; v < static_cast<int>(parity.size()); ++v) {
    if (parity[v]) odd.push_back(v);
  }
  return odd;
}

TJoin min_tjoin(const Graph& g, const std::vector<Vertex>& targets) {
  std::set<Vertex> unique(targets.begin(), targets.end());
  if (unique.size() != targets.size()) {
    throw Error(ErrorCode::kInvalidArgument, "T-join targets must be distinct");
  }
  if (targets.size() % 2 != 0) {
    throw Error(ErrorCode::kOddCardinality,
                "T-join target set has odd cardinality " + std::to_string(targets.size()));
  }
  TJoin join;
  join.targets.assign(unique.begin(), unique.end());
  const int t = static_cast<int>(join.targets.size());
  if (t == 0) return join;

  CostMatrix cost(t, t);
  for (int a = 0; a < t; ++a) {
    const auto dist = bfs_distances(g, join.targets[a]);
    for (int b = 0; b < t; ++b) {
      if (dist[join.targets[b]] == kUnreachable) {
        throw Error(ErrorCode::kDisconnected, "T-join targets are not connected");
      }
      cost(a, b) = dist[join.targets[b]];
    }
  }
  const auto mate = min_weight_perfect_matching(cost);

  std::vector<char> in_join(g.num_edges(), 0);
  for (int a = 0; a < t; ++a) {
    if (mate[a] < a) continue;
    const auto path = shortest_path(g, join.targets[a], join.targets[mate[a]]);
    for (std::size_t j = 1; j < path.size(); ++j) in_join[g.find_edge(path[j - 1], path[j])] ^= 1;
  }
  for (int e = 0; e < g.num_edges(); ++e) {
    if (in_join[e]) join.edges.push_back(e);
  }
  return join;
}

double tjoin_fractional_bound(const FractionalSolution& x) { return x.objective / 2.0; }

}  // namespace mptsp
