#include "doctest.h"

#include <cmath>

#include "mptsp/bench.hpp"
#include "mptsp/decomposition.hpp"
#include "mptsp/lp.hpp"
#include "mptsp/multipath.hpp"
#include "oracles.hpp"

using namespace mptsp;

TEST_CASE("unit sampler stays in [0, 1) and is reproducible") {
  UnitSampler a(5), b(5);
  for (int i = 0; i < 1000; ++i) {
    const double x = a.next();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
    CHECK(x == b.next());
  }
}

TEST_CASE("path frequencies follow the decomposition weights") {
  // Find an instance whose first commodity splits over several paths.
  for (std::uint64_t seed = 1; seed < 2000; ++seed) {
    const Instance inst = oracle::random_instance(seed, 8, 2, 14, 4);
    if (inst.commodity(0).closed()) continue;
    const LpResult lp = solve_lp(inst);
    const Decomposition dec = decompose(inst, lp.solution);
    const auto& paths = dec.commodities[0].paths;
    if (paths.size() < 2) continue;
    std::vector<int> hits(paths.size(), 0);
    constexpr int kSamples = 10000;
    for (int s = 0; s < kSamples; ++s) ++hits[sample_paths(inst, dec, s).chosen[0]];
    const double total = dec.commodities[0].path_weight();
    for (std::size_t j = 0; j < paths.size(); ++j) {
      CHECK(std::abs(static_cast<double>(hits[j]) / kSamples - paths[j].weight / total) <= 0.02);
    }
    return;
  }
  FAIL("no instance with a fractional decomposition found");
}

TEST_CASE("star leaves are spliced after the first occurrence of the centre") {
  const Instance inst(oracle::star_graph(5), {{1, 2}});
  const MultipathResult r = solve_derandomized(inst);
  CHECK(r.solution.walks[0] == std::vector<Vertex>{1, 0, 4, 0, 3, 0, 2});
  CHECK(r.solution.cost == 6);
  CHECK(r.report.reconnection == 4);
  CHECK(validate_solution(inst, r.solution).ok);
}

TEST_CASE("closed commodities without paths stay singletons") {
  const Instance inst(oracle::path_graph(3), {{0, 0}});
  const MultipathResult r = solve_derandomized(inst);
  CHECK(r.solution.walks[0].front() == 0);
  CHECK(r.solution.walks[0].back() == 0);
  CHECK(r.solution.cost == 4);
}

TEST_CASE("worked instance cost lies between the LP and twice the LP") {
  const MultipathResult r = solve_derandomized(fig1_instance());
  CHECK(r.solution.cost >= 8);
  CHECK(r.solution.cost <= 16);
  CHECK(r.report.lp == doctest::Approx(8.0));
}

TEST_CASE("derandomized cost is at most twice the LP and the potential never rises") {
  for (int trial = 0; trial < 200; ++trial) {
    const Instance inst = oracle::random_instance(13000 + trial, 10, 3, 16);
    const LpResult lp = solve_lp(inst);
    const Decomposition dec = decompose(inst, lp.solution);
    DerandomizationTrace trace;
    const MultipathResult r = run_derandomized(inst, lp, dec, &trace);
    const double bound = lp.solution.objective;
    CHECK(static_cast<double>(r.solution.cost) <= 2.0 * bound + 1e-6);
    CHECK(r.solution.cost == r.report.total());
    CHECK(trace.initial <= 2.0 * bound + 1e-6);

    double previous = trace.initial;
    for (int h = 0; h < inst.num_commodities(); ++h) {
      CHECK(trace.after_fixing[h] <= previous + 1e-6);
      const auto& paths = dec.commodities[h].paths;
      if (!paths.empty()) {
        // The potential is a conditional expectation: its weighted mean over
        // the candidate paths equals the previous value.
        double mean = 0.0;
        for (std::size_t j = 0; j < paths.size(); ++j) {
          mean += paths[j].weight * trace.candidates[h][j];
        }
        CHECK(mean / dec.commodities[h].path_weight() == doctest::Approx(previous).epsilon(1e-5));
      }
      previous = trace.after_fixing[h];
    }
    CHECK(static_cast<double>(r.solution.cost) <= previous + 1e-6);
  }
}

TEST_CASE("randomized runs are reproducible and feasible") {
  for (int trial = 0; trial < 50; ++trial) {
    const Instance inst = oracle::random_instance(14000 + trial, 10, 3, 16);
    const MultipathResult a = solve_randomized(inst, trial);
    const MultipathResult b = solve_randomized(inst, trial);
    CHECK(a.solution.walks == b.solution.walks);
    CHECK(validate_solution(inst, a.solution).ok);
    CHECK(a.solution.cost == a.report.sampling + a.report.reconnection);
  }
}
