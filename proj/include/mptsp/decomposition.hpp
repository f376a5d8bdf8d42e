#ifndef MPTSP_DECOMPOSITION_HPP
#define MPTSP_DECOMPOSITION_HPP

#include <Eigen/Dense>

#include <vector>

#include "mptsp/instance.hpp"
#include "mptsp/lp.hpp"

namespace mptsp {

inline constexpr double kDecompositionEpsilon = 1e-6;

// A weighted arc sequence. For a path, vertices = tail of each arc plus the
// final head; for a cycle the first vertex is not repeated at the end.
struct WeightedWalk {
  std::vector<int> arcs;
  std::vector<Vertex> vertices;
  double weight = 0.0;

  int length() const { return static_cast<int>(arcs.size()); }
};

struct CommodityDecomposition {
  std::vector<WeightedWalk> paths;
  std::vector<WeightedWalk> cycles;

  double path_weight() const;
};

struct Decomposition {
  std::vector<CommodityDecomposition> commodities;
  int num_arcs = 0;
};

// Greedy path-then-cycle decomposition of each commodity's flow. Paths are
// simple: a loop closed while walking is split off as a cycle.
Decomposition decompose(const Instance& inst, const FractionalSolution& x,
                        double eps = kDecompositionEpsilon);

// Max over commodities and arcs of |x_{i,a} - reconstruction|.
double reconstruction_error(const Decomposition& dec, const FractionalSolution& x);

// z^P: per (commodity, vertex) total weight of the paths through the vertex,
// zero at the commodity's sink. k x n.
struct PathMass {
  Eigen::MatrixXd per_commodity;

  double at(int commodity, Vertex v) const { return per_commodity(commodity, v); }
  // z^P_v as a length-n vector.
  Eigen::VectorXd total() const { return per_commodity.colwise().sum().transpose(); }
};

PathMass path_mass(const Instance& inst, const Decomposition& dec);

// sum_j lambda_j |P_j| for one commodity.
double expected_path_length(const CommodityDecomposition& dec);

}  // namespace mptsp

#endif  // MPTSP_DECOMPOSITION_HPP
