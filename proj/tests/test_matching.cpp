#include "doctest.h"

#include <random>

#include "mptsp/error.hpp"
#include "mptsp/matching.hpp"
#include "oracles.hpp"

using namespace mptsp;

namespace {

std::pair<int, std::int64_t> score(const std::vector<int>& mate,
                                   const std::vector<WeightedEdge>& edges) {
  int count = 0;
  std::int64_t weight = 0;
  for (const auto& e : edges) {
    if (mate[e.u] == e.v) {
      ++count;
      weight += e.weight;
    }
  }
  return {count, weight};
}

}  // namespace

TEST_CASE("max weight matching agrees with exhaustive search") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 400; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 9);
    std::vector<WeightedEdge> edges;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (rng() % 2 == 0) edges.push_back({u, v, static_cast<std::int64_t>(rng() % 20)});
      }
    }
    for (bool maxcard : {false, true}) {
      const auto mate = max_weight_matching(n, edges, maxcard);
      REQUIRE(static_cast<int>(mate.size()) == n);
      for (int v = 0; v < n; ++v) {
        if (mate[v] >= 0) CHECK(mate[mate[v]] == v);
      }
      const auto got = score(mate, edges);
      const auto want = oracle::matching_by_search(n, edges, maxcard);
      if (maxcard) CHECK(got.first == want.first);
      CHECK(got.second == want.second);
    }
  }
}

TEST_CASE("min weight perfect matching agrees with subset DP") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 * (1 + static_cast<int>(rng() % 6));
    CostMatrix cost = CostMatrix::Zero(n, n);
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) cost(u, v) = cost(v, u) = static_cast<std::int64_t>(rng() % 15);
    }
    const auto mate = min_weight_perfect_matching(cost);
    std::int64_t total = 0;
    for (int v = 0; v < n; ++v) {
      REQUIRE(mate[v] >= 0);
      CHECK(mate[mate[v]] == v);
      CHECK(mate[v] != v);
      if (v < mate[v]) total += cost(v, mate[v]);
    }
    CHECK(total == oracle::matching_by_dp(cost));
  }
}

TEST_CASE("matching rejects bad input") {
  CHECK_THROWS_AS(min_weight_perfect_matching(CostMatrix::Zero(3, 3)), Error);
  try {
    min_weight_perfect_matching(CostMatrix::Zero(3, 3));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kOddCardinality);
  }
  CHECK_THROWS_AS(max_weight_matching(2, {{0, 2, 1}}, false), Error);
  CHECK(min_weight_perfect_matching(CostMatrix::Zero(0, 0)).empty());
}
