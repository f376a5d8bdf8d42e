#include "doctest.h"

#include "mptsp/bench.hpp"
#include "mptsp/decomposition.hpp"
#include "mptsp/lp.hpp"
#include "oracles.hpp"

using namespace mptsp;

namespace {

bool simple(const std::vector<Vertex>& vertices) {
  std::vector<Vertex> sorted = vertices;
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

}  // namespace

TEST_CASE("worked instance decomposes into unit path mass per commodity") {
  const Instance inst = fig1_instance();
  const LpResult lp = solve_lp(inst);
  const Decomposition dec = decompose(inst, lp.solution);
  REQUIRE(dec.commodities.size() == 2);
  for (int i = 0; i < 2; ++i) {
    CHECK(dec.commodities[i].path_weight() == doctest::Approx(1.0));
    CHECK(dec.commodities[i].paths.size() + dec.commodities[i].cycles.size() <= 34);
  }
  CHECK(reconstruction_error(dec, lp.solution) <= 1e-6);
}

TEST_CASE("integral single path flow gives one path and no cycles") {
  const Instance inst(oracle::path_graph(4), {{0, 3}});
  const LpResult lp = solve_lp(inst);
  const Decomposition dec = decompose(inst, lp.solution);
  REQUIRE(dec.commodities[0].paths.size() == 1);
  CHECK(dec.commodities[0].paths[0].weight == doctest::Approx(1.0));
  CHECK(dec.commodities[0].paths[0].vertices == std::vector<Vertex>{0, 1, 2, 3});
  CHECK(dec.commodities[0].cycles.empty());
}

TEST_CASE("decomposition reconstructs random LP solutions") {
  for (int trial = 0; trial < 150; ++trial) {
    const Instance inst = oracle::random_instance(9000 + trial, 10, 3, 16);
    const LpResult lp = solve_lp(inst);
    const Decomposition dec = decompose(inst, lp.solution);
    CHECK(reconstruction_error(dec, lp.solution) <= 1e-6 * inst.graph().num_edges() * 2);
    const PathMass mass = path_mass(inst, dec);
    const auto& bg = *lp.solution.graph;
    for (int i = 0; i < inst.num_commodities(); ++i) {
      const Commodity c = inst.commodity(i);
      const auto& cd = dec.commodities[i];
      if (c.closed()) {
        CHECK(cd.paths.empty());
      } else {
        CHECK(cd.path_weight() == doctest::Approx(1.0).epsilon(1e-5));
      }
      double expected = 0.0;
      for (const auto& p : cd.paths) {
        CHECK(p.weight > 0.0);
        CHECK(simple(p.vertices));
        REQUIRE(p.vertices.size() == p.arcs.size() + 1);
        CHECK(p.vertices.front() == c.source);
        CHECK(p.vertices.back() == c.sink);
        for (std::size_t j = 0; j < p.arcs.size(); ++j) {
          CHECK(bg.arc(p.arcs[j]).tail == p.vertices[j]);
          CHECK(bg.arc(p.arcs[j]).head == p.vertices[j + 1]);
        }
        expected += p.weight * p.length();
      }
      CHECK(expected_path_length(cd) == doctest::Approx(expected));
      for (const auto& cyc : cd.cycles) {
        CHECK(simple(cyc.vertices));
        CHECK(cyc.vertices.size() == cyc.arcs.size());
        CHECK(bg.arc(cyc.arcs.back()).head == cyc.vertices.front());
      }
      // Path mass is bounded by the outflow and vanishes at the sink.
      for (Vertex v = 0; v < inst.num_vertices(); ++v) {
        CHECK(mass.at(i, v) <= lp.solution.outflow(i, v) + 1e-6);
        CHECK(mass.at(i, v) >= 0.0);
      }
      if (!c.closed()) CHECK(mass.at(i, c.sink) == 0.0);
    }
  }
}

TEST_CASE("loop on a walk is split off as a cycle") {
  // 0 -> 1 -> 2 -> 3 -> 1 -> 4 carried as one unit of flow.
  const Graph g(5, {{0, 1}, {1, 2}, {2, 3}, {3, 1}, {1, 4}});
  const Instance inst(g, {{0, 4}});
  FractionalSolution x;
  x.graph = std::make_shared<const BidirectedGraph>(g);
  x.flow = Eigen::MatrixXd::Zero(1, x.graph->num_arcs());
  for (auto [u, v] : std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}, {3, 1}, {1, 4}}) {
    x.flow(0, x.graph->find_arc(u, v)) = 1.0;
  }
  const Decomposition dec = decompose(inst, x);
  const auto& cd = dec.commodities[0];
  REQUIRE(cd.paths.size() == 1);
  CHECK(cd.paths[0].vertices == std::vector<Vertex>{0, 1, 4});
  REQUIRE(cd.cycles.size() == 1);
  CHECK(cd.cycles[0].length() == 3);
  CHECK(reconstruction_error(dec, x) == 0.0);
}
