#include "doctest.h"

#include <random>

#include "mptsp/error.hpp"
#include "mptsp/parity.hpp"
#include "oracles.hpp"

using namespace mptsp;

TEST_CASE("multiset degrees and odd vertices") {
  const Graph g = oracle::path_graph(4);
  EdgeMultiset m(g);
  m.add_walk({0, 1, 2, 1});
  CHECK(m.size() == 3);
  CHECK(m.count(1) == 2);
  CHECK(m.degree(1) == 3);
  CHECK(odd_vertices(m) == std::vector<Vertex>{0, 1});
  CHECK_THROWS_AS(m.add_pair(0, 3), Error);
}

TEST_CASE("empty target set gives the empty join") {
  CHECK(min_tjoin(oracle::path_graph(3), {}).edges.empty());
}

TEST_CASE("T-join errors") {
  auto code_of = [](const Graph& g, std::vector<Vertex> t) {
    try {
      min_tjoin(g, t);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kInvalidArgument;
  };
  CHECK(code_of(oracle::path_graph(3), {0, 1, 2}) == ErrorCode::kOddCardinality);
  CHECK(code_of(Graph(4, {{0, 1}, {2, 3}}), {0, 2}) == ErrorCode::kDisconnected);
}

TEST_CASE("minimum T-join matches enumeration over edge subsets") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    const Instance inst = oracle::random_instance(11000 + trial, 9, 1, 14);
    const Graph& g = inst.graph();
    std::vector<Vertex> targets;
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      if (rng() % 2) targets.push_back(v);
    }
    if (targets.size() % 2) targets.pop_back();
    const TJoin join = min_tjoin(g, targets);
    CHECK(join.cost() == oracle::tjoin_by_enumeration(g, targets));
    CHECK(std::is_sorted(join.edges.begin(), join.edges.end()));
    EdgeMultiset m(g);
    for (int e : join.edges) m.add_edge(e);
    CHECK(odd_vertices(m) == targets);
  }
}
