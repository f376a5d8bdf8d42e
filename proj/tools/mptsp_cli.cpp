#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mptsp/bench.hpp"
#include "mptsp/decomposition.hpp"
#include "mptsp/error.hpp"
#include "mptsp/exact.hpp"
#include "mptsp/io.hpp"
#include "mptsp/lp.hpp"
#include "mptsp/multipath.hpp"
#include "mptsp/ordered.hpp"
#include "mptsp/parity.hpp"
#include "mptsp/vrp.hpp"

namespace {

using Json = nlohmann::ordered_json;
using namespace mptsp;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

struct Options {
  std::string input;
  std::string output;
  std::string report;
  std::string dump_lp;
  std::string solution;
  std::uint64_t seed = 1;
  bool derandomize = false;
  int trials = 0;
  int workers = 1;
  std::vector<int> targets;
  std::string mode = "multipath";
  std::string family = "tree";
  int min_n = 4;
  int max_n = 12;
  int max_edges = 20;
  double edge_probability = 0.3;
  int min_k = 1;
  int max_k = 3;
  int instances = 20;
  bool fig1 = false;
  bool table = false;
};

void emit(const Options& opt, const std::string& text) {
  if (opt.output.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    write_file(opt.output, text);
  }
}

Json solution_json(const Solution& sol) {
  Json j;
  j["walks"] = sol.walks;
  j["cost"] = sol.walk_cost();
  return j;
}

Json report_json(const CostReport& r) {
  Json j;
  j["sampling"] = r.sampling;
  j["reconnection"] = r.reconnection;
  j["parity"] = r.parity;
  j["total"] = r.total();
  j["lp"] = r.lp;
  j["ratio"] = r.ratio();
  return j;
}

void check_valid(const Instance& inst, const Solution& sol) {
  const Validation v = validate_solution(inst, sol);
  if (!v) throw Error(ErrorCode::kParityViolation, "invalid solution: " + v.diagnostic);
}

Json walk_json(const WeightedWalk& w) {
  Json j;
  j["vertices"] = w.vertices;
  j["weight"] = w.weight;
  return j;
}

BenchConfig bench_config(const Options& opt) {
  BenchConfig config;
  if (opt.mode == "multipath") {
    config.mode = BenchMode::kMultipath;
  } else if (opt.mode == "ordered") {
    config.mode = BenchMode::kOrdered;
  } else if (opt.mode == "vrp") {
    config.mode = BenchMode::kVrp;
  } else {
    throw Error(ErrorCode::kInvalidArgument, "unknown mode " + opt.mode);
  }
  if (opt.family == "tree") {
    config.family = GraphFamily::kTree;
  } else if (opt.family == "er") {
    config.family = GraphFamily::kErdosRenyi;
  } else {
    throw Error(ErrorCode::kInvalidArgument, "unknown family " + opt.family);
  }
  config.min_n = opt.min_n;
  config.max_n = opt.max_n;
  config.max_edges = opt.max_edges;
  config.edge_probability = opt.edge_probability;
  config.min_k = opt.min_k;
  config.max_k = opt.max_k;
  config.seed = opt.seed;
  config.instances = opt.instances;
  config.trials = opt.trials;
  config.workers = opt.workers;
  config.include_fig1 = opt.fig1;
  return config;
}

int run_solve_multipath(const Options& opt) {
  const Instance inst = load_multipath_instance(read_file(opt.input));
  const MultipathResult result =
      opt.derandomize ? solve_derandomized(inst) : solve_randomized(inst, opt.seed);
  check_valid(inst, result.solution);
  emit(opt, solution_json(result.solution).dump());
  if (!opt.report.empty()) write_file(opt.report, report_json(result.report).dump(2) + "\n");
  return kExitOk;
}

int run_solve_ordered(const Options& opt) {
  const OrderedInstance ordered = load_ordered_instance(read_file(opt.input));
  const Instance inst = ordered.to_multipath();
  const LpResult lp = solve_lp(inst);
  const Decomposition dec = decompose(inst, lp.solution);
  if (opt.trials > 0) {
    double sum = 0.0, sum_sq = 0.0;
    std::int64_t max_join = 0;
    for (int t = 0; t < opt.trials; ++t) {
      const OrderedResult r = run_ordered(inst, lp, dec, opt.seed + static_cast<std::uint64_t>(t));
      check_valid(inst, r.solution);
      const double c = static_cast<double>(r.solution.walk_cost());
      sum += c;
      sum_sq += c * c;
      max_join = std::max(max_join, r.join.cost());
    }
    const double mean = sum / opt.trials;
    const double var = opt.trials > 1 ? (sum_sq - opt.trials * mean * mean) / (opt.trials - 1) : 0.0;
    Json j;
    j["trials"] = opt.trials;
    j["lp"] = lp.solution.objective;
    j["mean_cost"] = mean;
    j["stddev_cost"] = std::sqrt(std::max(0.0, var));
    j["mean_ratio"] = lp.solution.objective > 0 ? mean / lp.solution.objective : 1.0;
    j["max_join"] = max_join;
    emit(opt, j.dump(2));
    return kExitOk;
  }
  const OrderedResult r = run_ordered(inst, lp, dec, opt.seed);
  check_valid(inst, r.solution);
  emit(opt, solution_json(r.solution).dump());
  if (!opt.report.empty()) {
    Json rep = report_json(r.report);
    std::vector<int> join = r.join.edges;
    rep["join"] = join;
    write_file(opt.report, rep.dump(2) + "\n");
  }
  return kExitOk;
}

int run_solve_vrp(const Options& opt) {
  const VrpInstance inst(load_multipath_instance(read_file(opt.input)));
  const Solution sol = solve_vrp_forest(inst);
  check_valid(inst.instance(), sol);
  emit(opt, solution_json(sol).dump());
  return kExitOk;
}

int run_solve_combined(const Options& opt) {
  const Instance inst = load_multipath_instance(read_file(opt.input));
  const CombinerResult r = solve_combiner(inst);
  check_valid(inst, r.solution);
  emit(opt, solution_json(r.solution).dump());
  if (!opt.report.empty()) {
    Json rep;
    rep["winner"] = r.winner == CombinerBranch::kVrp ? "vrp" : "multipath";
    rep["multipath_cost"] = r.multipath.walk_cost();
    rep["vrp_cost"] = r.vrp.walk_cost();
    rep["distance_sum"] = r.distance_sum;
    rep["lp"] = r.lp;
    write_file(opt.report, rep.dump(2) + "\n");
  }
  return kExitOk;
}

int run_exact(const Options& opt) {
  const Instance inst = load_multipath_instance(read_file(opt.input));
  const ExactResult r = exact_opt(inst);
  Json j = solution_json(r.solution);
  j["assignment"] = r.assignment;
  j["orders"] = r.orders;
  emit(opt, j.dump());
  return kExitOk;
}

int run_lp(const Options& opt) {
  const Instance inst = load_multipath_instance(read_file(opt.input));
  LpOptions options;
  options.dump_text = !opt.dump_lp.empty();
  const LpResult lp = solve_lp(inst, options);
  const auto& g = *lp.solution.graph;
  Json flows = Json::array();
  for (int i = 0; i < lp.solution.num_commodities(); ++i) {
    Json arcs = Json::array();
    for (int a = 0; a < g.num_arcs(); ++a) {
      const double x = lp.solution.flow(i, a);
      if (x > kDecompositionEpsilon) arcs.push_back({g.arc(a).tail, g.arc(a).head, x});
    }
    flows.push_back(std::move(arcs));
  }
  std::size_t cuts = 0;
  for (const auto& round : lp.rounds) cuts += round.cuts.size();
  Json j;
  j["objective"] = lp.solution.objective;
  j["rounds"] = lp.rounds.size();
  j["cuts"] = cuts;
  j["flows"] = std::move(flows);
  emit(opt, j.dump(2));
  if (!opt.dump_lp.empty()) write_file(opt.dump_lp, lp.lp_text);
  return kExitOk;
}

int run_decompose(const Options& opt) {
  const Instance inst = load_multipath_instance(read_file(opt.input));
  const LpResult lp = solve_lp(inst);
  const Decomposition dec = decompose(inst, lp.solution);
  Json out = Json::array();
  for (const auto& cd : dec.commodities) {
    Json c;
    c["paths"] = Json::array();
    c["cycles"] = Json::array();
    for (const auto& p : cd.paths) c["paths"].push_back(walk_json(p));
    for (const auto& q : cd.cycles) c["cycles"].push_back(walk_json(q));
    out.push_back(std::move(c));
  }
  Json j;
  j["objective"] = lp.solution.objective;
  j["commodities"] = std::move(out);
  emit(opt, j.dump(2));
  return kExitOk;
}

int run_tjoin(const Options& opt) {
  const auto any = load_instance(read_file(opt.input));
  const Graph& g = std::holds_alternative<Instance>(any) ? std::get<Instance>(any).graph()
                                                         : std::get<OrderedInstance>(any).graph();
  for (int v : opt.targets) {
    if (v < 0 || v >= g.num_vertices()) {
      throw Error(ErrorCode::kIndexOutOfRange, "target " + std::to_string(v) + " out of range");
    }
  }
  const TJoin join = min_tjoin(g, opt.targets);
  Json edges = Json::array();
  for (int e : join.edges) edges.push_back({g.edge(e).first, g.edge(e).second});
  Json j;
  j["targets"] = join.targets;
  j["edges"] = std::move(edges);
  j["cost"] = join.cost();
  emit(opt, j.dump());
  return kExitOk;
}

int run_gen(const Options& opt) {
  const AnyInstance any = generate(bench_config(opt), opt.seed);
  emit(opt, std::visit([](const auto& inst) { return save_instance(inst); }, any));
  return kExitOk;
}

int run_bench_cmd(const Options& opt) {
  const BenchReport report = run_bench(bench_config(opt));
  emit(opt, report.to_json());
  if (opt.table) std::cerr << report.to_table();
  if (!opt.report.empty()) write_file(opt.report, report.to_table());
  return kExitOk;
}

int run_export_dot(const Options& opt) {
  const Instance inst = load_multipath_instance(read_file(opt.input));
  const Solution sol = opt.solution.empty() ? solve_derandomized(inst).solution
                                            : load_solution(read_file(opt.solution));
  const Validation v = validate_solution(inst, sol);
  if (!v) throw Error(ErrorCode::kInvalidArgument, "solution does not fit instance: " + v.diagnostic);
  emit(opt, export_dot(inst, sol));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-path, ordered and multi-depot routing on unit-cost graphs"};
  app.require_subcommand(1);
  Options opt;

  auto add_io = [&](CLI::App* sub, bool needs_input) {
    auto* in = sub->add_option("--input", opt.input, "instance JSON file");
    if (needs_input) in->required()->check(CLI::ExistingFile);
    sub->add_option("--output", opt.output, "write the result here instead of stdout");
  };

  auto* multipath = app.add_subcommand("solve-multipath", "sampling 2-approximation");
  add_io(multipath, true);
  multipath->add_option("--seed", opt.seed, "random seed");
  multipath->add_flag("--derandomize", opt.derandomize, "conditional-expectation variant");
  multipath->add_option("--report", opt.report, "cost breakdown JSON");

  auto* ordered = app.add_subcommand("solve-ordered", "ordered tour with parity correction");
  add_io(ordered, true);
  ordered->add_option("--seed", opt.seed, "random seed");
  ordered->add_option("--trials", opt.trials, "report mean and spread over this many seeds");
  ordered->add_option("--report", opt.report, "cost breakdown JSON");

  auto* vrp = app.add_subcommand("solve-vrp", "doubled depot forest");
  add_io(vrp, true);

  auto* combined = app.add_subcommand("solve-combined", "cheaper of sampling and depot branch");
  add_io(combined, true);
  combined->add_option("--report", opt.report, "branch costs JSON");

  auto* exact = app.add_subcommand("exact", "exact optimum for small instances");
  add_io(exact, true);

  auto* lp = app.add_subcommand("lp", "solve the LP relaxation");
  add_io(lp, true);
  lp->add_option("--dump-lp", opt.dump_lp, "write the final model in LP text form");

  auto* decomp = app.add_subcommand("decompose", "weighted path and cycle decomposition");
  add_io(decomp, true);

  auto* tjoin = app.add_subcommand("tjoin", "minimum T-join in the instance graph");
  add_io(tjoin, true);
  tjoin->add_option("--targets", opt.targets, "target vertices")->delimiter(',');

  auto* gen = app.add_subcommand("gen", "random instance");
  auto* bench = app.add_subcommand("bench", "experiment table");
  for (auto* sub : {gen, bench}) {
    sub->add_option("--output", opt.output, "write the result here instead of stdout");
    sub->add_option("--seed", opt.seed, "random seed");
    sub->add_option("--mode", opt.mode, "multipath, ordered or vrp");
    sub->add_option("--family", opt.family, "tree or er");
    sub->add_option("--min-n", opt.min_n);
    sub->add_option("--max-n", opt.max_n);
    sub->add_option("--max-edges", opt.max_edges);
    sub->add_option("--edge-probability", opt.edge_probability);
    sub->add_option("--min-k", opt.min_k);
    sub->add_option("--max-k", opt.max_k);
  }
  bench->add_option("--instances", opt.instances, "number of generated instances");
  bench->add_option("--trials", opt.trials, "randomized runs per instance");
  bench->add_option("--workers", opt.workers, "worker threads");
  bench->add_flag("--fig1", opt.fig1, "prepend the 10-vertex worked instance");
  bench->add_flag("--table", opt.table, "print an aligned table to stderr");
  bench->add_option("--report", opt.report, "write the aligned table here");

  auto* dot = app.add_subcommand("export-dot", "Graphviz rendering of a solution");
  add_io(dot, true);
  dot->add_option("--solution", opt.solution, "solution JSON; derandomized solve if omitted");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*multipath) return run_solve_multipath(opt);
    if (*ordered) return run_solve_ordered(opt);
    if (*vrp) return run_solve_vrp(opt);
    if (*combined) return run_solve_combined(opt);
    if (*exact) return run_exact(opt);
    if (*lp) return run_lp(opt);
    if (*decomp) return run_decompose(opt);
    if (*tjoin) return run_tjoin(opt);
    if (*gen) return run_gen(opt);
    if (*bench) return run_bench_cmd(opt);
    if (*dot) return run_export_dot(opt);
  } catch (const Error& e) {
    std::cerr << "error [" << error_code_name(e.code()) << "]: " << e.what() << '\n';
    return is_input_error(e.code()) ? kExitInput : kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}
