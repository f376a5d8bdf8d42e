#ifndef MPTSP_EXACT_HPP
#define MPTSP_EXACT_HPP

#include <cstdint>
#include <vector>

#include "mptsp/instance.hpp"
#include "mptsp/lp.hpp"

namespace mptsp {

struct ExactLimits {
  int limit_free = 10;  // vertices outside S and T
  int limit_dp = 14;    // vertices assigned to one commodity
};

struct ExactResult {
  std::int64_t cost = 0;
  std::vector<int> assignment;              // commodity per vertex, -1 on terminals
  std::vector<std::vector<Vertex>> orders;  // visiting order of assigned vertices
  Solution solution;
};

// Optimum over all assignments of non-terminal vertices to commodities of
// the summed shortest covering walks, each from Held-Karp on hop distances.
// Throws kInstanceTooLarge beyond the limits.
ExactResult exact_opt(const Instance& inst, const ExactLimits& limits = {});

struct CutCheck {
  bool ok = true;
  int commodity = -1;
  Vertex vertex = -1;
  std::vector<char> in_set;
  double violation = 0.0;

  explicit operator bool() const noexcept { return ok; }
};

// Tests x_i(out(U)) >= y_{i,v} - tol for every commodity i, every
// U subset of V - t_i and every v in U. Reports the first violation found.
// Throws kInstanceTooLarge for n > 12.
CutCheck brute_force_cut_check(const Instance& inst, const FractionalSolution& x,
                               double tol = 1e-7);

}  // namespace mptsp

#endif  // MPTSP_EXACT_HPP
