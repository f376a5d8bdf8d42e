#include "mptsp/exact.hpp"

#include <algorithm>
#include <limits>

#include "mptsp/error.hpp"

namespace mptsp {

namespace {

constexpr std::int64_t kInfinity = std::numeric_limits<std::int64_t>::max() / 4;

// Held-Karp table for one commodity over subsets of the free vertices.
// reach[mask * f + j] is the shortest walk from the source visiting mask and
// ending at free vertex j in mask.
class HeldKarp {
 public:
  HeldKarp(const std::vector<int>& dist, int n, const std::vector<Vertex>& free,
           Vertex source, Vertex sink)
      : dist_(dist), n_(n), free_(free), source_(source), sink_(sink),
        f_(static_cast<int>(free.size())) {
    const std::size_t subsets = std::size_t{1} << f_;
    reach_.assign(subsets * std::max(f_, 1), kInfinity);
    parent_.assign(subsets * std::max(f_, 1), -1);
    for (int j = 0; j < f_; ++j) reach_[index(1u << j, j)] = d(source_, free_[j]);
    for (std::size_t mask = 1; mask < subsets; ++mask) {
      for (int j = 0; j < f_; ++j) {
        if (!(mask & (1u << j))) continue;
        const std::int64_t base = reach_[index(mask, j)];
        if (base >= kInfinity) continue;
        for (int l = 0; l < f_; ++l) {
          if (mask & (1u << l)) continue;
          const std::size_t next = mask | (1u << l);
          const std::int64_t value = base + d(free_[j], free_[l]);
          if (value < reach_[index(next, l)]) {
            reach_[index(next, l)] = value;
            parent_[index(next, l)] = j;
          }
        }
      }
    }
    cost_.assign(subsets, kInfinity);
    last_.assign(subsets, -1);
    cost_[0] = d(source_, sink_);
    for (std::size_t mask = 1; mask < subsets; ++mask) {
      for (int j = 0; j < f_; ++j) {
        if (!(mask & (1u << j))) continue;
        const std::int64_t value = reach_[index(mask, j)] + d(free_[j], sink_);
        if (value < cost_[mask]) {
          cost_[mask] = value;
          last_[mask] = j;
        }
      }
    }
  }

  std::int64_t cost(std::size_t mask) const { return cost_[mask]; }

  std::vector<Vertex> order(std::size_t mask) const {
    std::vector<Vertex> out;
    int j = last_[mask];
    while (mask != 0) {
      out.push_back(free_[j]);
      const int prev = parent_[index(mask, j)];
      mask &= ~(std::size_t{1} << j);
      j = prev;
    }
    std::reverse(out.begin(), out.end());
    return out;
  }

 private:
  std::int64_t d(Vertex a, Vertex b) const { return dist_[static_cast<std::size_t>(a) * n_ + b]; }
  std::size_t index(std::size_t mask, int j) const { return mask * f_ + j; }

  const std::vector<int>& dist_;
  int n_;
  const std::vector<Vertex>& free_;
  Vertex source_, sink_;
  int f_;
  std::vector<std::int64_t> reach_;
  std::vector<int> parent_;
  std::vector<std::int64_t> cost_;
  std::vector<int> last_;
};

}  // namespace

ExactResult exact_opt(const Instance& inst, const ExactLimits& limits) {
  const Graph& g = inst.graph();
  const int n = g.num_vertices();
  const int k = inst.num_commodities();
  const auto terminals = inst.terminal_mask();
  std::vector<Vertex> free;
  for (Vertex v = 0; v < n; ++v) {
    if (!terminals[v]) free.push_back(v);
  }
  const int f = static_cast<int>(free.size());
  if (f > limits.limit_free || f > limits.limit_dp) {
    throw Error(ErrorCode::kInstanceTooLarge,
                "instance too large: " + std::to_string(f) + " free vertices, limit " +
                    std::to_string(std::min(limits.limit_free, limits.limit_dp)));
  }
  const auto dist = all_pairs_distances(g);

  std::vector<HeldKarp> tables;
  tables.reserve(k);
  for (const auto& c : inst.commodities()) tables.emplace_back(dist, n, free, c.source, c.sink);

  // best[i][mask]: cheapest cover of mask by commodities 0..i.
  const std::size_t subsets = std::size_t{1} << f;
  std::vector<std::vector<std::int64_t>> best(k, std::vector<std::int64_t>(subsets, kInfinity));
  std::vector<std::vector<std::size_t>> share(k, std::vector<std::size_t>(subsets, 0));
  for (std::size_t mask = 0; mask < subsets; ++mask) {
    best[0][mask] = tables[0].cost(mask);
    share[0][mask] = mask;
  }
  for (int i = 1; i < k; ++i) {
    for (std::size_t mask = 0; mask < subsets; ++mask) {
      // Submasks in decreasing order, ending with the empty set.
      for (std::size_t sub = mask;; sub = (sub - 1) & mask) {
        const std::int64_t value = tables[i].cost(sub) + best[i - 1][mask ^ sub];
        if (value < best[i][mask]) {
          best[i][mask] = value;
          share[i][mask] = sub;
        }
        if (sub == 0) break;
      }
    }
  }

  ExactResult result;
  result.cost = best[k - 1][subsets - 1];
  result.assignment.assign(n, -1);
  result.orders.assign(k, {});
  std::size_t rest = subsets - 1;
  for (int i = k - 1; i >= 0; --i) {
    const std::size_t mine = share[i][rest];
    result.orders[i] = tables[i].order(mine);
    for (Vertex v : result.orders[i]) result.assignment[v] = i;
    rest ^= mine;
  }
  for (int i = 0; i < k; ++i) {
    const auto& c = inst.commodity(i);
    std::vector<Vertex> stops{c.source};
    stops.insert(stops.end(), result.orders[i].begin(), result.orders[i].end());
    stops.push_back(c.sink);
    std::vector<Vertex> walk{c.source};
    for (std::size_t j = 1; j < stops.size(); ++j) {
      const auto leg = shortest_path(g, stops[j - 1], stops[j]);
      walk.insert(walk.end(), leg.begin() + 1, leg.end());
    }
    result.solution.walks.push_back(std::move(walk));
  }
  result.solution.cost = result.solution.walk_cost();
  if (result.solution.cost != result.cost) {
    throw Error(ErrorCode::kParityViolation, "reconstructed walks disagree with the DP cost");
  }
  return result;
}

CutCheck brute_force_cut_check(const Instance& inst, const FractionalSolution& x, double tol) {
  const BidirectedGraph& g = *x.graph;
  const int n = g.num_vertices();
  if (n > 12) {
    throw Error(ErrorCode::kInstanceTooLarge, "cut enumeration needs n <= 12");
  }
  CutCheck check;
  for (int i = 0; i < inst.num_commodities(); ++i) {
    const Vertex sink = inst.commodity(i).sink;
    std::vector<double> y(n);
    for (Vertex v = 0; v < n; ++v) y[v] = x.visit(i, v);
    std::vector<char> in(n, 0);
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      if (mask & (1u << sink)) continue;
      for (Vertex v = 0; v < n; ++v) in[v] = (mask >> v) & 1u;
      double out = 0.0;
      for (int a = 0; a < g.num_arcs(); ++a) {
        if (in[g.arc(a).tail] && !in[g.arc(a).head]) out += x.flow(i, a);
      }
      for (Vertex v = 0; v < n; ++v) {
        if (in[v] && out < y[v] - tol) {
          check.ok = false;
          check.commodity = i;
          check.vertex = v;
          check.in_set = in;
          check.violation = y[v] - out;
          return check;
        }
      }
    }
  }
  return check;
}

}  // namespace mptsp
