// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "mptsp/bench.hpp"
#include "mptsp/decomposition.hpp"
#include "mptsp/error.hpp"
#include "mptsp/exact.hpp"
#include "mptsp/lp.hpp"
#include "mptsp/multipath.hpp"
#include "mptsp/ordered.hpp"
#include "mptsp/parity.hpp"
#include "mptsp/vrp.hpp"
#include "oracles.hpp"

using namespace mptsp;

namespace {

constexpr double kObjectiveTol = 1e-5;
constexpr double kDecompositionTol = 1e-6;
constexpr double kFig1Seconds = 5.0;
constexpr double kDerandomizedSeconds = 300.0;
constexpr double kOrderedRatio = 1.7911;  // 1 + e / (2e - 2), rounded up
constexpr int kStandardErrors = 3;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Mean {
  double mean = 0.0;
  double stderr_ = 0.0;
};

Mean mean_of(const std::vector<double>& xs) {
  Mean m;
  for (double x : xs) m.mean += x;
  m.mean /= static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - m.mean) * (x - m.mean);
  if (xs.size() > 1) {
    m.stderr_ = std::sqrt(ss / static_cast<double>(xs.size() - 1) / static_cast<double>(xs.size()));
  }
  return m;
}

// Decomposition audit shared by criteria 1 to 5 and reported as criterion 8.
struct DecompositionAudit {
  int solutions = 0;
  int failures = 0;
  double worst_error = 0.0;
  double worst_mass = 0.0;
  std::string first_failure;

  void check(const Instance& inst, const FractionalSolution& x, const Decomposition& dec,
             const std::string& where) {
    ++solutions;
    const double error = reconstruction_error(dec, x);
    worst_error = std::max(worst_error, error);
    bool ok = error <= kDecompositionTol;
    const int arcs = x.graph->num_arcs();
    for (int i = 0; i < inst.num_commodities(); ++i) {
      const auto& cd = dec.commodities[i];
      if (static_cast<int>(cd.paths.size() + cd.cycles.size()) > arcs) ok = false;
      if (!inst.commodity(i).closed()) {
        const double gap = std::abs(cd.path_weight() - 1.0);
        worst_mass = std::max(worst_mass, gap);
        if (gap > kDecompositionTol) ok = false;
      }
    }
    if (!ok) {
      if (failures == 0) first_failure = where;
      ++failures;
    }
  }
};

DecompositionAudit audit;

std::uint64_t criterion_seed(int criterion, int index) {
  return (static_cast<std::uint64_t>(criterion) << 40) + 7919u * static_cast<std::uint64_t>(index) + 1;
}

BenchConfig multipath_config() {
  BenchConfig config;
  config.min_n = 2;
  config.max_n = 12;
  config.max_edges = 20;
  config.min_k = 1;
  config.max_k = 3;
  return config;
}

Instance random_multipath(int criterion, int index) {
  return std::get<Instance>(generate(multipath_config(), criterion_seed(criterion, index)));
}

struct Verdict {
  bool pass = true;
  std::string detail;
};

int failed = 0;

void report(int number, const Verdict& v) {
  std::printf("criterion %2d %s  %s\n", number, v.pass ? "PASS" : "FAIL", v.detail.c_str());
  std::fflush(stdout);
  if (!v.pass) ++failed;
}

std::string format(const char* fmt, auto... args) {
  char buffer[512];
  std::snprintf(buffer, sizeof buffer, fmt, args...);
  return buffer;
}

Verdict criterion_1() {
  const auto start = Clock::now();
  const Instance inst = fig1_instance();
  const LpResult lp = solve_lp(inst);
  audit.check(inst, lp.solution, decompose(inst, lp.solution), "fig1");
  ExactLimits limits;
  limits.limit_free = 12;
  const std::int64_t opt = exact_opt(inst, limits).cost;
  const double elapsed = seconds_since(start);
  const bool lp_ok = std::abs(lp.solution.objective - 8.0) <= kObjectiveTol;
  const bool opt_ok = opt == 9;
  const bool time_ok = elapsed < kFig1Seconds;
  return {lp_ok && opt_ok && time_ok,
          format("lp=%.6f (want 8) opt=%lld (want 9) time=%.3fs", lp.solution.objective,
                 static_cast<long long>(opt), elapsed)};
}

// Shared by criteria 2 and 3.
struct SampleInstance {
  Instance inst;
  double lp = 0.0;
};

std::vector<SampleInstance> sample_300() {
  std::vector<SampleInstance> out;
  out.push_back({fig1_instance(), 0.0});
  for (int i = 1; i < 300; ++i) out.push_back({random_multipath(2, i), 0.0});
  return out;
}

Verdict criterion_2(std::vector<SampleInstance>& sample) {
  const auto start = Clock::now();
  int violations = 0;
  double worst = 0.0;
  int closed = 0;
  int open = 0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    auto& s = sample[i];
    const LpResult lp = solve_lp(s.inst);
    const Decomposition dec = decompose(s.inst, lp.solution);
    audit.check(s.inst, lp.solution, dec, format("c2 instance %zu", i));
    s.lp = lp.solution.objective;
    const MultipathResult r = run_derandomized(s.inst, lp, dec);
    if (!validate_solution(s.inst, r.solution).ok) ++violations;
    const double cost = static_cast<double>(r.solution.cost);
    if (cost > 2.0 * s.lp + kObjectiveTol) ++violations;
    if (s.lp > 0.0) worst = std::max(worst, cost / s.lp);
    for (const auto& c : s.inst.commodities()) (c.closed() ? closed : open)++;
  }
  const double elapsed = seconds_since(start);
  return {violations == 0 && elapsed < kDerandomizedSeconds,
          format("%zu instances (%d closed, %d open commodities), violations=%d, max ratio=%.4f, "
                 "time=%.1fs",
                 sample.size(), closed, open, violations, worst, elapsed)};
}

Verdict criterion_3(const std::vector<SampleInstance>& sample) {
  ExactLimits limits;
  limits.limit_free = 12;
  int checked = 0;
  int skipped = 0;
  double max_gap = 0.0;
  double fig1_gap = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const auto& s = sample[i];
    try {
      const double opt = static_cast<double>(exact_opt(s.inst, limits).cost);
      const double gap = s.lp > 0.0 ? opt / s.lp : 1.0;
      if (i == 0) fig1_gap = gap;
      max_gap = std::max(max_gap, gap);
      ++checked;
    } catch (const Error&) {
      ++skipped;
    }
  }
  return {max_gap <= 2.0 + kObjectiveTol && checked > 0,
          format("checked=%d skipped=%d max OPT/LP=%.4f fig1 OPT/LP=%.4f", checked, skipped,
                 max_gap, fig1_gap)};
}

Verdict criterion_4() {
  constexpr int kInstances = 30;
  constexpr int kSeeds = 500;
  int invalid = 0;
  int above = 0;
  double worst_margin = -1e300;
  for (int i = 0; i < kInstances; ++i) {
    const Instance inst = random_multipath(4, i);
    const LpResult lp = solve_lp(inst);
    const Decomposition dec = decompose(inst, lp.solution);
    audit.check(inst, lp.solution, dec, format("c4 instance %d", i));
    std::vector<double> costs;
    for (int s = 0; s < kSeeds; ++s) {
      const MultipathResult r = run_multipath(inst, lp, dec, criterion_seed(40, i * kSeeds + s));
      if (!validate_solution(inst, r.solution).ok) ++invalid;
      costs.push_back(static_cast<double>(r.solution.cost));
    }
    const Mean m = mean_of(costs);
    const double bound = 2.0 * lp.solution.objective + kStandardErrors * m.stderr_;
    worst_margin = std::max(worst_margin, m.mean - bound);
    if (m.mean > bound) ++above;
  }
  return {invalid == 0 && above == 0,
          format("%d x %d runs, invalid=%d, instances above bound=%d, max(mean - bound)=%.4f",
                 kInstances, kSeeds, invalid, above, worst_margin)};
}

Verdict criterion_5() {
  constexpr int kInstances = 100;
  constexpr int kSeeds = 200;
  BenchConfig config;
  config.mode = BenchMode::kOrdered;
  config.min_n = 3;
  config.max_n = 12;
  config.max_edges = 20;
  config.min_k = 2;
  config.max_k = 4;
  int invalid = 0;
  int join_violations = 0;
  int above = 0;
  double worst_ratio = 0.0;
  for (int i = 0; i < kInstances; ++i) {
    const auto ordered = std::get<OrderedInstance>(generate(config, criterion_seed(5, i)));
    const Instance inst = ordered.to_multipath();
    const LpResult lp = solve_lp(inst);
    const Decomposition dec = decompose(inst, lp.solution);
    audit.check(inst, lp.solution, dec, format("c5 instance %d", i));
    const double join_bound = tjoin_fractional_bound(lp.solution) + kObjectiveTol;
    std::vector<double> costs;
    for (int s = 0; s < kSeeds; ++s) {
      const OrderedResult r = run_ordered(inst, lp, dec, criterion_seed(50, i * kSeeds + s));
      if (!validate_solution(inst, r.solution).ok || !preserves_order(ordered, r.solution)) {
        ++invalid;
      }
      if (static_cast<double>(r.join.cost()) > join_bound) ++join_violations;
      costs.push_back(static_cast<double>(r.solution.cost));
    }
    const Mean m = mean_of(costs);
    const double lpv = lp.solution.objective;
    if (m.mean > kOrderedRatio * lpv + kStandardErrors * m.stderr_) ++above;
    if (lpv > 0.0) worst_ratio = std::max(worst_ratio, m.mean / lpv);
  }
  return {invalid == 0 && join_violations == 0 && above == 0,
          format("%d x %d runs, invalid=%d, |J| > LP/2: %d, above bound=%d, max mean/LP=%.4f",
                 kInstances, kSeeds, invalid, join_violations, above, worst_ratio)};
}

Verdict criterion_6() {
  std::mt19937_64 rng(criterion_seed(6, 0));
  BenchConfig config;
  config.min_n = 2;
  config.max_n = 12;
  config.max_edges = 14;
  config.max_k = 1;
  int mismatches = 0;
  int max_edges = 0;
  for (int i = 0; i < 200; ++i) {
    const Instance inst = std::get<Instance>(generate(config, criterion_seed(6, i + 1)));
    const Graph& g = inst.graph();
    max_edges = std::max(max_edges, g.num_edges());
    std::vector<Vertex> targets;
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      if (rng() & 1u) targets.push_back(v);
    }
    if (targets.size() % 2 == 1) targets.pop_back();
    if (min_tjoin(g, targets).cost() != oracle::tjoin_by_enumeration(g, targets)) ++mismatches;
  }
  return {mismatches == 0,
          format("200 graphs, max |E|=%d, mismatches=%d", max_edges, mismatches)};
}

Verdict criterion_7() {
  BenchConfig config = multipath_config();
  config.max_n = 10;
  int failures = 0;
  int cuts = 0;
  int unviolated = 0;
  for (int i = 0; i < 50; ++i) {
    const Instance inst = std::get<Instance>(generate(config, criterion_seed(7, i)));
    LpOptions options;
    options.keep_iterates = true;
    const LpResult lp = solve_lp(inst, options);
    if (!brute_force_cut_check(inst, lp.solution).ok) ++failures;
    FractionalSolution iterate;
    iterate.graph = lp.solution.graph;
    for (const auto& round : lp.rounds) {
      iterate.flow = round.iterate;
      iterate.visit = round.visit;
      for (const auto& cut : round.cuts) {
        ++cuts;
        const double violation =
            iterate.visit(cut.commodity, cut.vertex) - iterate.flow_on(cut.commodity, cut.in_set);
        if (violation <= 0.0) ++unviolated;
      }
    }
  }
  return {failures == 0 && unviolated == 0,
          format("50 instances, final cut check failures=%d, cuts emitted=%d, not violated=%d",
                 failures, cuts, unviolated)};
}

Verdict criterion_8() {
  return {audit.failures == 0 && audit.solutions > 0,
          format("%d LP solutions, failures=%d%s, max reconstruction error=%.2e, max |sum - 1|=%.2e",
                 audit.solutions, audit.failures,
                 audit.failures ? (" first at " + audit.first_failure).c_str() : "",
                 audit.worst_error, audit.worst_mass)};
}

Verdict criterion_9() {
  int invalid = 0;
  int worse = 0;
  for (int i = 0; i < 100; ++i) {
    const Instance inst = random_multipath(9, i);
    const LpResult lp = solve_lp(inst);
    const MultipathResult f1 = run_derandomized(inst, lp, decompose(inst, lp.solution));
    const CombinerResult r = combine(inst, f1);
    if (!validate_solution(inst, r.solution).ok) ++invalid;
    if (r.solution.cost > f1.solution.cost) ++worse;
  }
  BenchConfig depots;
  depots.mode = BenchMode::kVrp;
  depots.min_n = 2;
  depots.max_n = 12;
  depots.max_k = 3;
  int depot_mismatch = 0;
  for (int i = 0; i < 100; ++i) {
    const Instance inst = std::get<Instance>(generate(depots, criterion_seed(90, i)));
    const CombinerResult r = solve_combiner(inst);
    if (!validate_solution(inst, r.solution).ok) ++invalid;
    if (r.solution.cost != 2 * (inst.num_vertices() - inst.num_commodities())) ++depot_mismatch;
  }
  return {invalid == 0 && worse == 0 && depot_mismatch == 0,
          format("100 mixed + 100 depot instances, invalid=%d, above derandomized=%d, "
                 "depot cost != 2(n-k): %d",
                 invalid, worse, depot_mismatch)};
}

Verdict criterion_10() {
  BenchConfig config = multipath_config();
  config.seed = 20240611;
  config.instances = 25;
  config.trials = 5;
  config.workers = 4;
  config.include_fig1 = true;
  const BenchReport a = run_bench(config);
  const BenchReport b = run_bench(config);
  const std::string ja = a.to_json();
  const bool same = ja == b.to_json() && a.to_table() == b.to_table();
  return {same, format("%zu rows, json bytes=%zu, identical=%s", a.rows.size(), ja.size(),
                       same ? "yes" : "no")};
}

void run(int number, const std::function<Verdict()>& body) {
  try {
    report(number, body());
  } catch (const std::exception& e) {
    report(number, {false, std::string("exception: ") + e.what()});
  }
}

}  // namespace

int main() {
  std::vector<SampleInstance> sample = sample_300();
  run(1, criterion_1);
  run(2, [&] { return criterion_2(sample); });
  run(3, [&] { return criterion_3(sample); });
  run(4, criterion_4);
  run(5, criterion_5);
  run(6, criterion_6);
  run(7, criterion_7);
  run(8, criterion_8);
  run(9, criterion_9);
  run(10, criterion_10);
  std::printf("%d of 10 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
