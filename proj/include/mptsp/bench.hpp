#ifndef MPTSP_BENCH_HPP
#define MPTSP_BENCH_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mptsp/exact.hpp"
#include "mptsp/instance.hpp"
#include "mptsp/io.hpp"

namespace mptsp {

// The 10-vertex, two-commodity worked instance used throughout the tests.
Instance fig1_instance();

enum class BenchMode { kMultipath, kOrdered, kVrp };
enum class GraphFamily { kTree, kErdosRenyi };

struct BenchConfig {
  BenchMode mode = BenchMode::kMultipath;
  GraphFamily family = GraphFamily::kTree;
  int min_n = 4;
  int max_n = 12;
  int max_edges = 20;
  double edge_probability = 0.3;  // Erdos-Renyi only
  int min_k = 1;
  int max_k = 3;
  std::uint64_t seed = 1;
  int instances = 20;
  int trials = 0;   // randomized runs per instance; ordered mode uses max(trials, 1)
  int workers = 1;
  int max_retries = 1000;
  bool include_fig1 = false;
  ExactLimits limits{12, 14};
};

// A connected instance per the config, deterministic in seed. Tree family:
// random spanning tree plus random extra edges up to max_edges. Erdos-Renyi:
// G(n, p) redrawn until connected with at most max_edges edges. Throws
// kGenerationFailed after max_retries draws.
AnyInstance generate(const BenchConfig& config, std::uint64_t seed);

struct BenchRow {
  int index = 0;
  std::uint64_t seed = 0;
  int n = 0;
  int m = 0;
  int k = 0;
  bool ok = true;
  std::string error;
  double lp = 0.0;
  std::optional<std::int64_t> opt;
  std::int64_t derandomized = 0;  // multipath and vrp modes
  std::int64_t combined = 0;
  std::string winner;
  std::int64_t forest = 0;  // vrp mode
  std::int64_t distance_sum = 0;
  double mean_cost = 0.0;   // over randomized trials (ordered mode: ordered rounding)
  double stderr_cost = 0.0;
  std::int64_t max_join = 0;  // ordered mode
};

struct BenchReport {
  BenchConfig config;
  std::vector<BenchRow> rows;

  std::string to_json() const;
  std::string to_table() const;
};

// Row-parallel over config.workers threads. Each row's solutions are
// validated and their costs recomputed from the walks; a failing row keeps
// its error message and ok = false.
BenchReport run_bench(const BenchConfig& config);

// Graphviz text: base edges in gray, one colored line per walk traversal,
// edges traversed more than once dashed, extra_edges (base edge ids) bold.
std::string export_dot(const Instance& inst, const Solution& sol,
                       const std::vector<int>& extra_edges = {});

}  // namespace mptsp

#endif  // MPTSP_BENCH_HPP
