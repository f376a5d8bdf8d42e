#include "mptsp/multipath.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mptsp/error.hpp"

namespace mptsp {

std::vector<Vertex> SamplerState::pending() const {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < static_cast<int>(covered.size()); ++v) {
    if (!covered[v]) out.push_back(v);
  }
  return out;
}

std::int64_t walks_cost(const std::vector<std::vector<Vertex>>& walks) {
  std::int64_t total = 0;
  for (const auto& w : walks) {
    if (!w.empty()) total += static_cast<std::int64_t>(w.size()) - 1;
  }
  return total;
}

SamplerState state_from_choice(const Instance& inst, const Decomposition& dec,
                               const std::vector<int>& chosen) {
  SamplerState state;
  state.chosen = chosen;
  state.covered.assign(inst.num_vertices(), 0);
  for (int i = 0; i < inst.num_commodities(); ++i) {
    if (chosen[i] == kSingleton) {
      state.walks.push_back({inst.commodity(i).source});
    } else {
      state.walks.push_back(dec.commodities[i].paths.at(chosen[i]).vertices);
    }
    for (Vertex v : state.walks.back()) state.covered[v] = 1;
  }
  return state;
}

SamplerState sample_paths(const Instance& inst, const Decomposition& dec,
                          std::uint64_t seed) {
  UnitSampler sampler(seed);
  std::vector<int> chosen(inst.num_commodities(), kSingleton);
  for (int i = 0; i < inst.num_commodities(); ++i) {
    if (inst.commodity(i).closed()) continue;
    const auto& paths = dec.commodities[i].paths;
    if (paths.empty()) {
      throw Error(ErrorCode::kResidualNotDecomposable,
                  "commodity " + std::to_string(i) + " has no path to sample");
    }
    // Interval partition of [0, total) with total = sum of lambda (1 up to
    // rounding).
    const double y = sampler.next() * dec.commodities[i].path_weight();
    double upper = 0.0;
    int pick = static_cast<int>(paths.size()) - 1;
    for (int j = 0; j < static_cast<int>(paths.size()); ++j) {
      upper += paths[j].weight;
      if (y < upper) {
        pick = j;
        break;
      }
    }
    chosen[i] = pick;
  }
  return state_from_choice(inst, dec, chosen);
}

std::vector<Attachment> plan_attachments(const Graph& g,
                                         const std::vector<std::vector<Vertex>>& walks,
                                         std::vector<char>& covered) {
  const int n = g.num_vertices();
  std::vector<int> lowest_walk(n, -1);
  for (int i = static_cast<int>(walks.size()) - 1; i >= 0; --i) {
    for (Vertex v : walks[i]) lowest_walk[v] = i;
  }
  std::vector<Attachment> plan;
  int remaining = static_cast<int>(std::count(covered.begin(), covered.end(), 0));
  while (remaining > 0) {
    bool progressed = false;
    for (Vertex v = 0; v < n && !progressed; ++v) {
      if (covered[v]) continue;
      for (const auto& inc : g.incident(v)) {
        const Vertex w = inc.neighbor;
        if (!covered[w]) continue;
        plan.push_back({v, w, lowest_walk[w]});
        covered[v] = 1;
        lowest_walk[v] = lowest_walk[w];
        --remaining;
        progressed = true;
        break;
      }
    }
    if (!progressed) {
      throw Error(ErrorCode::kDisconnected,
                  "uncovered vertices have no covered neighbor");
    }
  }
  return plan;
}

namespace {

void splice_detour(std::vector<Vertex>& walk, Vertex anchor, Vertex v) {
  auto it = std::find(walk.begin(), walk.end(), anchor);
  const Vertex detour[] = {v, anchor};
  walk.insert(it + 1, std::begin(detour), std::end(detour));
}

}  // namespace

SamplerState reconnect(const Instance& inst, SamplerState state) {
  const auto plan = plan_attachments(inst.graph(), state.walks, state.covered);
  for (const auto& att : plan) splice_detour(state.walks[att.walk], att.anchor, att.vertex);
  state.reconnected += static_cast<int>(plan.size());
  return state;
}

namespace {

MultipathResult finish(const Instance& inst, const LpResult& lp,
                       const Decomposition& dec, SamplerState state) {
  std::int64_t sampling = 0;
  for (int i = 0; i < inst.num_commodities(); ++i) {
    if (state.chosen[i] != kSingleton) {
      sampling += dec.commodities[i].paths[state.chosen[i]].length();
    }
  }
  state = reconnect(inst, std::move(state));
  MultipathResult result;
  result.chosen = state.chosen;
  result.solution.walks = std::move(state.walks);
  result.solution.cost = result.solution.walk_cost();
  result.report.sampling = sampling;
  result.report.reconnection = 2 * static_cast<std::int64_t>(state.reconnected);
  result.report.lp = lp.solution.objective;
  return result;
}

}  // namespace

MultipathResult run_multipath(const Instance& inst, const LpResult& lp,
                              const Decomposition& dec, std::uint64_t seed) {
  return finish(inst, lp, dec, sample_paths(inst, dec, seed));
}

MultipathResult solve_randomized(const Instance& inst, std::uint64_t seed) {
  const LpResult lp = solve_lp(inst);
  const Decomposition dec = decompose(inst, lp.solution);
  return run_multipath(inst, lp, dec, seed);
}

MultipathResult run_derandomized(const Instance& inst, const LpResult& lp,
                                 const Decomposition& dec,
                                 DerandomizationTrace* trace) {
  const int k = inst.num_commodities();
  const int n = inst.num_vertices();
  const PathMass mass = path_mass(inst, dec);

  // miss(h, v) = prod_{i >= h} (1 - z^P_{i,v}): probability that v stays
  // uncovered by the commodities from h on.
  Eigen::MatrixXd miss = Eigen::MatrixXd::Ones(k + 1, n);
  for (int h = k - 1; h >= 0; --h) {
    miss.row(h) = miss.row(h + 1).cwiseProduct(
        (1.0 - mass.per_commodity.row(h).array()).matrix());
  }
  std::vector<double> expected_tail(k + 1, 0.0);
  for (int h = k - 1; h >= 0; --h) {
    expected_tail[h] = expected_tail[h + 1] + expected_path_length(dec.commodities[h]);
  }

  std::vector<char> marked = inst.terminal_mask();
  auto reconnect_bound = [&](int from, const std::vector<char>& extra) {
    double total = 0.0;
    for (Vertex v = 0; v < n; ++v) {
      if (!marked[v] && !extra[v]) total += miss(from, v);
    }
    return 2.0 * total;
  };

  const std::vector<char> none(n, 0);
  double fixed_length = 0.0;
  DerandomizationTrace local;
  local.initial = expected_tail[0] + reconnect_bound(0, none);

  std::vector<int> chosen(k, kSingleton);
  std::vector<char> on_path(n, 0);
  for (int h = 0; h < k; ++h) {
    std::vector<double> values;
    if (inst.commodity(h).closed()) {
      local.after_fixing.push_back(fixed_length + reconnect_bound(h + 1, none) +
                                   expected_tail[h + 1]);
      local.candidates.push_back(std::move(values));
      continue;
    }
    const auto& paths = dec.commodities[h].paths;
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < static_cast<int>(paths.size()); ++j) {
      std::fill(on_path.begin(), on_path.end(), 0);
      for (Vertex v : paths[j].vertices) on_path[v] = 1;
      const double phi = paths[j].length() + fixed_length +
                         reconnect_bound(h + 1, on_path) + expected_tail[h + 1];
      values.push_back(phi);
      if (phi < best - 1e-12) {
        best = phi;
        chosen[h] = j;
      }
    }
    const auto& pick = paths[chosen[h]];
    fixed_length += pick.length();
    for (Vertex v : pick.vertices) marked[v] = 1;
    local.after_fixing.push_back(best);
    local.candidates.push_back(std::move(values));
  }
  if (trace) *trace = std::move(local);
  return finish(inst, lp, dec, state_from_choice(inst, dec, chosen));
}

MultipathResult solve_derandomized(const Instance& inst, DerandomizationTrace* trace) {
  const LpResult lp = solve_lp(inst);
  const Decomposition dec = decompose(inst, lp.solution);
  return run_derandomized(inst, lp, dec, trace);
}

}  // namespace mptsp
