#include "doctest.h"

#include "mptsp/bench.hpp"
#include "mptsp/error.hpp"
#include "mptsp/exact.hpp"
#include "mptsp/vrp.hpp"
#include "oracles.hpp"

using namespace mptsp;

TEST_CASE("every vertex a depot costs nothing") {
  const VrpInstance inst(oracle::path_graph(4), {0, 1, 2, 3});
  const Solution sol = solve_vrp_forest(inst);
  CHECK(sol.cost == 0);
  CHECK(validate_solution(inst.instance(), sol).ok);
}

TEST_CASE("star with a central depot costs 2(n - 1)") {
  const VrpInstance inst(oracle::star_graph(6), {0});
  const Solution sol = solve_vrp_forest(inst);
  CHECK(sol.cost == 10);
  CHECK(sol.walks[0] == std::vector<Vertex>{0, 1, 0, 2, 0, 3, 0, 4, 0, 5, 0});
}

TEST_CASE("worked instance with depots s1 and s2 costs 16") {
  const VrpInstance inst(fig1_instance().graph(), {0, 1});
  const Solution sol = solve_vrp_forest(inst);
  CHECK(sol.cost == 16);
  CHECK(validate_solution(inst.instance(), sol).ok);
}

TEST_CASE("open commodities are not a depot instance") {
  CHECK_THROWS_AS(VrpInstance{fig1_instance()}, Error);
}

TEST_CASE("forest owners are nearest depots and costs stay within twice the optimum") {
  for (int trial = 0; trial < 100; ++trial) {
    BenchConfig config;
    config.mode = BenchMode::kVrp;
    config.max_n = 9;
    const Instance generated = std::get<Instance>(generate(config, 16000 + trial));
    const VrpInstance inst(generated);
    const int n = inst.instance().num_vertices();
    const DepotForest forest = depot_forest(inst);
    const auto d = oracle::floyd(inst.graph());
    for (Vertex v = 0; v < n; ++v) {
      std::int64_t nearest = oracle::kInf;
      for (Vertex depot : inst.depots()) nearest = std::min(nearest, d[depot][v]);
      CHECK(d[inst.depots()[forest.owner[v]]][v] == nearest);
      if (forest.parent[v] >= 0) {
        CHECK(inst.graph().adjacent(v, forest.parent[v]));
        CHECK(forest.owner[forest.parent[v]] == forest.owner[v]);
      }
    }
    const Solution sol = solve_vrp_forest(inst);
    CHECK(validate_solution(inst.instance(), sol).ok);
    CHECK(sol.cost == 2 * (n - inst.num_depots()));
    CHECK(sol.cost <= 2 * exact_opt(inst.instance()).cost);
  }
}

TEST_CASE("combiner returns the cheaper branch and bounds the depot branch") {
  for (int trial = 0; trial < 150; ++trial) {
    const Instance inst = oracle::random_instance(17000 + trial, 10, 3, 16);
    const CombinerResult r = solve_combiner(inst);
    CHECK(validate_solution(inst, r.solution).ok);
    CHECK(validate_solution(inst, r.multipath).ok);
    CHECK(validate_solution(inst, r.vrp).ok);
    CHECK(r.solution.cost == std::min(r.multipath.cost, r.vrp.cost));
    CHECK((r.winner == CombinerBranch::kMultipath) == (r.multipath.cost <= r.vrp.cost));
    CHECK(r.distance_sum == distance_sum(inst));

    const VrpInstance depots = associated_vrp(inst);
    const Solution depot_walks = solve_vrp_forest(depots);
    CHECK(r.vrp.cost <= depot_walks.cost + r.distance_sum);
  }
}

TEST_CASE("associated depot instance keeps first-appearance order") {
  const Graph g = oracle::path_graph(4);
  const Instance inst(g, {{2, 0}, {1, 3}, {2, 3}});
  const VrpInstance depots = associated_vrp(inst);
  CHECK(depots.depots() == std::vector<Vertex>{2, 1});
  const Solution lifted = lift_vrp_solution(inst, solve_vrp_forest(depots));
  CHECK(validate_solution(inst, lifted).ok);
  CHECK(lifted.walks[2].front() == 2);
}
