#include "doctest.h"

#include "mptsp/bench.hpp"
#include "mptsp/error.hpp"
#include "mptsp/exact.hpp"
#include "mptsp/lp.hpp"
#include "oracles.hpp"

using namespace mptsp;

TEST_CASE("worked instance optimum") {
  const ExactResult r = exact_opt(fig1_instance());
  CHECK(r.cost == 8);
  CHECK(r.solution.cost == 8);
  CHECK(validate_solution(fig1_instance(), r.solution).ok);
  CHECK(oracle::opt_by_assignment(fig1_instance()) == 8);
}

TEST_CASE("exact optimum matches assignment enumeration") {
  for (int trial = 0; trial < 80; ++trial) {
    const Instance inst = oracle::random_instance(18000 + trial, 7, 3, 12);
    const ExactResult r = exact_opt(inst);
    CHECK(r.cost == oracle::opt_by_assignment(inst));
    CHECK(validate_solution(inst, r.solution).ok);
    CHECK(r.solution.cost == r.cost);
    for (Vertex v = 0; v < inst.num_vertices(); ++v) {
      CHECK((r.assignment[v] < 0) == static_cast<bool>(inst.terminal_mask()[v]));
    }
  }
}

TEST_CASE("partition optimum equals the overlapping cover optimum") {
  for (int trial = 0; trial < 50; ++trial) {
    const Instance inst = oracle::random_instance(19000 + trial, 7, 3, 12);
    CHECK(exact_opt(inst).cost == oracle::opt_by_cover(inst));
  }
}

TEST_CASE("limits are enforced") {
  const Graph g = oracle::path_graph(14);
  const Instance inst(g, {{0, 13}});
  ExactLimits tight;
  tight.limit_free = 5;
  try {
    exact_opt(inst, tight);
    FAIL("expected kInstanceTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInstanceTooLarge);
  }
  ExactLimits wide;
  wide.limit_free = 12;
  CHECK(exact_opt(inst, wide).cost == 13);
}

TEST_CASE("brute-force cut check finds a detached cycle and passes LP optima") {
  const Graph g(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 2}});
  const Instance inst(g, {{0, 1}});
  FractionalSolution x;
  x.graph = std::make_shared<const BidirectedGraph>(g);
  x.flow = Eigen::MatrixXd::Zero(1, x.graph->num_arcs());
  x.flow(0, x.graph->find_arc(0, 1)) = 1.0;
  for (auto [u, v] : std::vector<Edge>{{2, 3}, {3, 4}, {4, 2}}) x.flow(0, x.graph->find_arc(u, v)) = 0.5;
  x.visit = Eigen::MatrixXd::Zero(1, 5);
  x.visit(0, 0) = 1.0;
  for (Vertex v : {2, 3, 4}) x.visit(0, v) = 0.5;
  const CutCheck bad = brute_force_cut_check(inst, x);
  CHECK_FALSE(bad.ok);
  CHECK(bad.in_set[bad.vertex] == 1);
  CHECK(bad.in_set[1] == 0);
  CHECK(bad.violation == doctest::Approx(0.5));

  for (int trial = 0; trial < 30; ++trial) {
    const Instance r = oracle::random_instance(20000 + trial, 9, 3, 14);
    CHECK(brute_force_cut_check(r, solve_lp(r).solution).ok);
  }
  CHECK_THROWS_AS(brute_force_cut_check(Instance(oracle::path_graph(13), {{0, 12}}),
                                        solve_lp(Instance(oracle::path_graph(13), {{0, 12}})).solution),
                  Error);
}
