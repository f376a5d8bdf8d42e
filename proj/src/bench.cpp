#include "mptsp/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "mptsp/decomposition.hpp"
#include "mptsp/error.hpp"
#include "mptsp/lp.hpp"
#include "mptsp/multipath.hpp"
#include "mptsp/ordered.hpp"
#include "mptsp/vrp.hpp"

namespace mptsp {

Instance fig1_instance() {
  Graph g(10, {{0, 4}, {0, 5}, {0, 8}, {1, 8}, {1, 9}, {4, 6}, {4, 7}, {5, 6}, {5, 7},
               {5, 8}, {6, 2}, {7, 2}, {7, 9}, {8, 9}, {9, 2}, {4, 3}, {6, 3}});
  return Instance(std::move(g), {{0, 2}, {1, 3}});
}

namespace {

using Json = nlohmann::ordered_json;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Library-independent draws so generated instances match across platforms.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : engine_(seed) {}
  int below(int bound) { return static_cast<int>(engine_() % static_cast<std::uint64_t>(bound)); }
  int between(int lo, int hi) { return lo + below(hi - lo + 1); }
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

std::optional<Graph> draw_graph(const BenchConfig& config, int n, Draw& draw) {
  std::set<Edge> edges;
  if (config.family == GraphFamily::kTree) {
    std::vector<Vertex> perm(n);
    for (int v = 0; v < n; ++v) perm[v] = v;
    for (int v = n - 1; v > 0; --v) std::swap(perm[v], perm[draw.below(v + 1)]);
    for (int j = 1; j < n; ++j) {
      const Vertex u = perm[j], w = perm[draw.below(j)];
      edges.insert(std::minmax(u, w));
    }
    const int possible = n * (n - 1) / 2;
    const int room = std::max(0, std::min(config.max_edges, possible) - (n - 1));
    const int extra = room > 0 ? draw.between(0, room) : 0;
    while (static_cast<int>(edges.size()) < n - 1 + extra) {
      const Vertex u = draw.below(n), w = draw.below(n);
      if (u != w) edges.insert(std::minmax(u, w));
    }
  } else {
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex w = u + 1; w < n; ++w) {
        if (draw.unit() < config.edge_probability) edges.insert({u, w});
      }
    }
    if (static_cast<int>(edges.size()) > config.max_edges) return std::nullopt;
  }
  Graph g(n, std::vector<Edge>(edges.begin(), edges.end()));
  if (!is_connected(g)) return std::nullopt;
  return g;
}

std::vector<Vertex> distinct_vertices(int n, int count, Draw& draw) {
  std::vector<Vertex> perm(n);
  for (int v = 0; v < n; ++v) perm[v] = v;
  for (int j = 0; j < count; ++j) std::swap(perm[j], perm[j + draw.below(n - j)]);
  perm.resize(count);
  return perm;
}

Json row_json(const BenchRow& row) {
  Json j;
  j["index"] = row.index;
  j["seed"] = row.seed;
  j["n"] = row.n;
  j["m"] = row.m;
  j["k"] = row.k;
  j["ok"] = row.ok;
  if (!row.ok) j["error"] = row.error;
  j["lp"] = row.lp;
  j["opt"] = row.opt ? Json(*row.opt) : Json(nullptr);
  j["derandomized"] = row.derandomized;
  j["combined"] = row.combined;
  j["winner"] = row.winner;
  j["forest"] = row.forest;
  j["distance_sum"] = row.distance_sum;
  j["mean_cost"] = row.mean_cost;
  j["stderr_cost"] = row.stderr_cost;
  j["max_join"] = row.max_join;
  auto ratio = [&](double num) { return row.lp > 0.0 ? Json(num / row.lp) : Json(nullptr); };
  j["ratio_derandomized"] = ratio(static_cast<double>(row.derandomized));
  j["ratio_mean"] = ratio(row.mean_cost);
  j["gap"] = row.opt ? ratio(static_cast<double>(*row.opt)) : Json(nullptr);
  j["ratio_opt"] = row.opt && *row.opt > 0
                       ? Json(static_cast<double>(row.derandomized) / static_cast<double>(*row.opt))
                       : Json(nullptr);
  return j;
}

const char* mode_name(BenchMode mode) {
  switch (mode) {
    case BenchMode::kMultipath: return "multipath";
    case BenchMode::kOrdered: return "ordered";
    case BenchMode::kVrp: return "vrp";
  }
  return "?";
}

void require_valid(const Instance& inst, const Solution& sol, const char* what) {
  const Validation check = validate_solution(inst, sol);
  if (!check) {
    throw Error(ErrorCode::kParityViolation, std::string(what) + ": " + check.diagnostic);
  }
}

std::optional<std::int64_t> try_exact(const Instance& inst, const ExactLimits& limits) {
  try {
    return exact_opt(inst, limits).cost;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kInstanceTooLarge) throw;
    return std::nullopt;
  }
}

void mean_and_stderr(const std::vector<double>& values, double& mean, double& se) {
  mean = se = 0.0;
  if (values.empty()) return;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  if (values.size() < 2) return;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  se = std::sqrt(ss / static_cast<double>(values.size() - 1) / static_cast<double>(values.size()));
}

void fill_multipath_row(const BenchConfig& config, const Instance& inst, BenchRow& row) {
  const LpResult lp = solve_lp(inst);
  const Decomposition dec = decompose(inst, lp.solution);
  row.lp = lp.solution.objective;
  const MultipathResult derand = run_derandomized(inst, lp, dec);
  require_valid(inst, derand.solution, "derandomized");
  row.derandomized = derand.solution.walk_cost();
  const CombinerResult comb = combine(inst, derand);
  require_valid(inst, comb.solution, "combiner");
  require_valid(inst, comb.vrp, "combiner vrp branch");
  row.combined = comb.solution.walk_cost();
  row.winner = comb.winner == CombinerBranch::kVrp ? "vrp" : "multipath";
  row.distance_sum = comb.distance_sum;
  if (config.mode == BenchMode::kVrp) {
    const Solution forest = solve_vrp_forest(VrpInstance(inst));
    require_valid(inst, forest, "forest");
    row.forest = forest.walk_cost();
  }
  std::vector<double> costs;
  for (int t = 0; t < config.trials; ++t) {
    const MultipathResult run = run_multipath(inst, lp, dec, splitmix64(row.seed + t + 1));
    require_valid(inst, run.solution, "randomized");
    costs.push_back(static_cast<double>(run.solution.walk_cost()));
  }
  mean_and_stderr(costs, row.mean_cost, row.stderr_cost);
  row.opt = try_exact(inst, config.limits);
}

void fill_ordered_row(const BenchConfig& config, const OrderedInstance& ordered, BenchRow& row) {
  const Instance inst = ordered.to_multipath();
  const LpResult lp = solve_lp(inst);
  const Decomposition dec = decompose(inst, lp.solution);
  row.lp = lp.solution.objective;
  std::vector<double> costs;
  for (int t = 0; t < std::max(config.trials, 1); ++t) {
    const OrderedResult run = run_ordered(inst, lp, dec, splitmix64(row.seed + t + 1));
    require_valid(inst, run.solution, "ordered");
    if (!preserves_order(ordered, run.solution)) {
      throw Error(ErrorCode::kParityViolation, "ordered walks break the terminal order");
    }
    costs.push_back(static_cast<double>(run.solution.walk_cost()));
    row.max_join = std::max(row.max_join, run.join.cost());
  }
  mean_and_stderr(costs, row.mean_cost, row.stderr_cost);
  row.opt = try_exact(inst, config.limits);
}

}  // namespace

AnyInstance generate(const BenchConfig& config, std::uint64_t seed) {
  if (config.min_n < 1 || config.max_n < config.min_n || config.min_k < 1 ||
      config.max_k < config.min_k) {
    throw Error(ErrorCode::kInvalidArgument, "invalid bench size ranges");
  }
  Draw draw(seed);
  for (int attempt = 0; attempt < config.max_retries; ++attempt) {
    const int n = draw.between(config.min_n, config.max_n);
    auto graph = draw_graph(config, n, draw);
    if (!graph) continue;
    switch (config.mode) {
      case BenchMode::kOrdered: {
        const int hi = std::min(config.max_k, n);
        const int lo = std::max(config.min_k, 2);
        if (hi < lo) continue;
        return OrderedInstance(std::move(*graph), distinct_vertices(n, draw.between(lo, hi), draw));
      }
      case BenchMode::kVrp: {
        const int hi = std::min(config.max_k, n);
        if (hi < config.min_k) continue;
        return VrpInstance(std::move(*graph), distinct_vertices(n, draw.between(config.min_k, hi), draw))
            .instance();
      }
      case BenchMode::kMultipath: {
        const int k = n == 1 ? 1 : draw.between(config.min_k, config.max_k);
        std::set<Commodity> seen;
        std::vector<Commodity> commodities;
        for (int guard = 0; static_cast<int>(commodities.size()) < k && guard < 100 * k; ++guard) {
          const Vertex s = draw.below(n);
          Vertex t = s;
          if (n > 1 && draw.below(2) == 1) {
            t = draw.below(n - 1);
            if (t >= s) ++t;
          }
          if (seen.insert({s, t}).second) commodities.push_back({s, t});
        }
        if (static_cast<int>(commodities.size()) < k) continue;
        return Instance(std::move(*graph), std::move(commodities));
      }
    }
  }
  throw Error(ErrorCode::kGenerationFailed,
              "generation failed after " + std::to_string(config.max_retries) + " attempts");
}

BenchReport run_bench(const BenchConfig& config) {
  BenchReport report;
  report.config = config;
  const bool fig1 = config.include_fig1 && config.mode == BenchMode::kMultipath;
  const int total = config.instances + (fig1 ? 1 : 0);
  report.rows.resize(total);

  auto run_row = [&](int index) {
    BenchRow& row = report.rows[index];
    row.index = index;
    row.seed = splitmix64(config.seed ^ (static_cast<std::uint64_t>(index) << 32));
    try {
      if (fig1 && index == 0) {
        const Instance inst = fig1_instance();
        row.n = inst.num_vertices();
        row.m = inst.graph().num_edges();
        row.k = inst.num_commodities();
        fill_multipath_row(config, inst, row);
        return;
      }
      const AnyInstance any = generate(config, row.seed);
      if (const auto* ordered = std::get_if<OrderedInstance>(&any)) {
        row.n = ordered->graph().num_vertices();
        row.m = ordered->graph().num_edges();
        row.k = ordered->num_terminals();
        fill_ordered_row(config, *ordered, row);
      } else {
        const auto& inst = std::get<Instance>(any);
        row.n = inst.num_vertices();
        row.m = inst.graph().num_edges();
        row.k = inst.num_commodities();
        fill_multipath_row(config, inst, row);
      }
    } catch (const std::exception& e) {
      row.ok = false;
      row.error = e.what();
    }
  };

  const int workers = std::max(1, std::min(config.workers, total));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < total; i = next++) run_row(i);
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return report;
}

std::string BenchReport::to_json() const {
  Json j;
  j["schema"] = 1;
  Json c;
  c["mode"] = mode_name(config.mode);
  c["family"] = config.family == GraphFamily::kTree ? "tree" : "erdos_renyi";
  c["min_n"] = config.min_n;
  c["max_n"] = config.max_n;
  c["max_edges"] = config.max_edges;
  c["edge_probability"] = config.edge_probability;
  c["min_k"] = config.min_k;
  c["max_k"] = config.max_k;
  c["seed"] = config.seed;
  c["instances"] = config.instances;
  c["trials"] = config.trials;
  c["include_fig1"] = config.include_fig1;
  j["config"] = std::move(c);

  Json rows = Json::array();
  int failed = 0;
  double max_ratio = 0.0, max_gap = 0.0, max_mean_ratio = 0.0, sum_ratio = 0.0;
  int counted = 0;
  for (const auto& row : this->rows) {
    rows.push_back(row_json(row));
    if (!row.ok) {
      ++failed;
      continue;
    }
    if (row.lp <= 0.0) continue;
    const double ratio = static_cast<double>(row.derandomized) / row.lp;
    max_ratio = std::max(max_ratio, ratio);
    sum_ratio += ratio;
    ++counted;
    max_mean_ratio = std::max(max_mean_ratio, row.mean_cost / row.lp);
    if (row.opt) max_gap = std::max(max_gap, static_cast<double>(*row.opt) / row.lp);
  }
  j["rows"] = std::move(rows);
  Json s;
  s["rows"] = static_cast<int>(this->rows.size());
  s["failed"] = failed;
  s["max_ratio_derandomized"] = max_ratio;
  s["mean_ratio_derandomized"] = counted > 0 ? sum_ratio / counted : 0.0;
  s["max_ratio_mean"] = max_mean_ratio;
  s["max_gap"] = max_gap;
  j["summary"] = std::move(s);
  return j.dump(2) + "\n";
}

std::string BenchReport::to_table() const {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%5s %4s %4s %3s %9s %5s %7s %7s %9s %8s %7s %9s\n", "row",
                "n", "m", "k", "lp", "opt", "derand", "comb", "winner", "ratio", "gap", "mean");
  out << line;
  for (const auto& row : rows) {
    if (!row.ok) {
      std::snprintf(line, sizeof line, "%5d %4d %4d %3d  failed: %s\n", row.index, row.n, row.m,
                    row.k, row.error.c_str());
      out << line;
      continue;
    }
    const double ratio = row.lp > 0 ? static_cast<double>(row.derandomized) / row.lp : 1.0;
    const double gap = row.opt && row.lp > 0 ? static_cast<double>(*row.opt) / row.lp : 0.0;
    const std::string opt = row.opt ? std::to_string(*row.opt) : "-";
    std::snprintf(line, sizeof line, "%5d %4d %4d %3d %9.4f %5s %7lld %7lld %9s %8.4f %7.4f %9.4f\n",
                  row.index, row.n, row.m, row.k, row.lp, opt.c_str(),
                  static_cast<long long>(row.derandomized), static_cast<long long>(row.combined),
                  row.winner.c_str(), ratio, gap, row.mean_cost);
    out << line;
  }
  return out.str();
}

std::string export_dot(const Instance& inst, const Solution& sol,
                       const std::vector<int>& extra_edges) {
  static const char* const kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                         "#9467bd", "#8c564b", "#e377c2", "#17becf"};
  const Graph& g = inst.graph();
  std::map<std::pair<Vertex, Vertex>, int> uses;
  for (const auto& w : sol.walks) {
    for (std::size_t j = 1; j < w.size(); ++j) ++uses[std::minmax(w[j - 1], w[j])];
  }
  const auto terminals = inst.terminal_mask();
  std::ostringstream out;
  out << "graph instance {\n  node [shape=circle];\n";
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    out << "  " << v;
    if (terminals[v]) out << " [style=filled, fillcolor=\"#dddddd\"]";
    out << ";\n";
  }
  for (const auto& [u, v] : g.edges()) out << "  " << u << " -- " << v << " [color=gray80];\n";
  for (std::size_t i = 0; i < sol.walks.size(); ++i) {
    const auto& w = sol.walks[i];
    const char* color = kPalette[i % std::size(kPalette)];
    for (std::size_t j = 1; j < w.size(); ++j) {
      const bool doubled = uses[std::minmax(w[j - 1], w[j])] > 1;
      out << "  " << w[j - 1] << " -- " << w[j] << " [color=\"" << color
          << "\", penwidth=2" << (doubled ? ", style=dashed" : "") << "];\n";
    }
  }
  for (int e : extra_edges) {
    out << "  " << g.edge(e).first << " -- " << g.edge(e).second
        << " [color=black, style=bold];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace mptsp
