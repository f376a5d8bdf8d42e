#include "doctest.h"

#include <algorithm>

#include "mptsp/bench.hpp"
#include "mptsp/io.hpp"
#include "mptsp/multipath.hpp"
#include "oracles.hpp"

using namespace mptsp;

TEST_CASE("generated instances respect the config") {
  for (GraphFamily family : {GraphFamily::kTree, GraphFamily::kErdosRenyi}) {
    BenchConfig config;
    config.family = family;
    config.min_n = 10;
    config.max_n = 10;
    config.max_edges = 20;
    config.edge_probability = 0.25;
    for (int s = 0; s < 1000; ++s) {
      const Instance inst = std::get<Instance>(generate(config, s));
      CHECK(inst.num_vertices() == 10);
      CHECK(inst.graph().num_edges() <= 20);
      CHECK(inst.num_commodities() >= config.min_k);
      CHECK(inst.num_commodities() <= config.max_k);
      CHECK(check_feasible(inst));
    }
  }
}

TEST_CASE("ordered and depot generators") {
  BenchConfig ordered;
  ordered.mode = BenchMode::kOrdered;
  BenchConfig vrp;
  vrp.mode = BenchMode::kVrp;
  for (int s = 0; s < 200; ++s) {
    const auto o = std::get<OrderedInstance>(generate(ordered, s));
    CHECK(o.num_terminals() >= 2);
    const auto v = std::get<Instance>(generate(vrp, s));
    for (const auto& c : v.commodities()) CHECK(c.closed());
  }
}

TEST_CASE("generation is deterministic in the seed") {
  BenchConfig config;
  for (int s = 0; s < 50; ++s) {
    CHECK(save_instance(std::get<Instance>(generate(config, s))) ==
          save_instance(std::get<Instance>(generate(config, s))));
  }
}

TEST_CASE("bench output does not depend on the worker count") {
  BenchConfig config;
  config.instances = 12;
  config.trials = 3;
  config.max_n = 9;
  config.include_fig1 = true;
  const BenchReport one = run_bench(config);
  config.workers = 4;
  const BenchReport four = run_bench(config);
  CHECK(one.to_json() == four.to_json());
  CHECK(one.rows.size() == 13);
  for (const auto& row : one.rows) {
    CHECK(row.ok);
    REQUIRE(row.opt.has_value());
    CHECK(static_cast<double>(*row.opt) >= row.lp - 1e-6);
    CHECK(row.combined <= row.derandomized);
  }
  CHECK(one.to_json().find("\"schema\": 1") != std::string::npos);
  CHECK_FALSE(one.to_table().empty());
}

TEST_CASE("dot export draws base, walk and extra edges") {
  const Instance inst = fig1_instance();
  const MultipathResult r = solve_derandomized(inst);
  const std::string dot = export_dot(inst, r.solution, {0, 1});
  auto count = [&](const std::string& needle) {
    std::size_t c = 0;
    for (auto pos = dot.find(needle); pos != std::string::npos; pos = dot.find(needle, pos + 1)) ++c;
    return c;
  };
  CHECK(count(" -- ") == 17 + static_cast<std::size_t>(r.solution.cost) + 2);
  CHECK(count("gray80") == 17);
  CHECK(count("style=bold") == 2);
  CHECK(dot.rfind("graph instance {", 0) == 0);
}
