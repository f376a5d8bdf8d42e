#ifndef MPTSP_LP_HPP
#define MPTSP_LP_HPP

#include <Eigen/Dense>

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "mptsp/graph.hpp"
#include "mptsp/instance.hpp"
#include "mptsp/simplex.hpp"

namespace mptsp {

struct LpTolerances {
  double row = 1e-7;         // row satisfaction
  double separation = 1e-6;  // minimum violation for a cut to be emitted
  double objective = 1e-5;
  int max_cut_rounds = 1000;
};

struct LinearRow {
  std::vector<std::pair<int, double>> terms;
  RowSense sense = RowSense::kEqual;
  double rhs = 0.0;
  std::string name;
};

// Connectivity cut x_i(out(U)) >= y_{i,v} with v in U and t_i outside U.
struct CutConstraint {
  int commodity = 0;
  Vertex vertex = 0;
  std::vector<char> in_set;  // indicator of U
  double violation = 0.0;    // y_{i,v} - x_i(out(U)) at emission
};

// Column layout: x_{i,a} -> i * |A| + a, then one visit column y_{i,v} per
// commodity and vertex outside T, with y_{i,v} <= x_i(out(v)) and
// sum_i y_{i,v} >= 1. Visit columns have cost 0. Outflow variables z_{i,v}
// are not columns; they are the expressions x_i(out(v)).
class LpModel {
 public:
  explicit LpModel(const Instance& inst);

  const Instance& instance() const noexcept { return *instance_; }
  const BidirectedGraph& graph() const noexcept { return *graph_; }
  std::shared_ptr<const BidirectedGraph> shared_graph() const noexcept { return graph_; }

  int num_commodities() const noexcept { return instance_->num_commodities(); }
  int num_arcs() const noexcept { return graph_->num_arcs(); }
  int num_flow_columns() const noexcept { return num_commodities() * num_arcs(); }
  int num_columns() const noexcept {
    return num_flow_columns() + num_commodities() * static_cast<int>(visited_.size());
  }
  int column(int commodity, int arc) const noexcept { return commodity * num_arcs() + arc; }
  // Column of y_{i,v}, or -1 for v in T.
  int visit_column(int commodity, Vertex v) const noexcept {
    const int slot = visit_slot_[v];
    if (slot < 0) return -1;
    return num_flow_columns() + commodity * static_cast<int>(visited_.size()) + slot;
  }
  // Vertices outside T, ascending; these carry visit columns.
  const std::vector<Vertex>& visited_vertices() const noexcept { return visited_; }
  std::string column_name(int col) const;

  const std::vector<LinearRow>& rows() const noexcept { return rows_; }
  int num_static_rows() const noexcept { return num_static_rows_; }
  const std::vector<CutConstraint>& cuts() const noexcept { return cuts_; }

  void add_cut(const CutConstraint& cut);
  LinearRow cut_row(const CutConstraint& cut) const;

  // CPLEX-LP style text of the current model.
  std::string to_lp_text() const;

 private:
  const Instance* instance_;
  std::shared_ptr<const BidirectedGraph> graph_;
  std::vector<LinearRow> rows_;
  std::vector<CutConstraint> cuts_;
  std::vector<Vertex> visited_;
  std::vector<int> visit_slot_;
  int num_static_rows_ = 0;
};

// Conservation, source/sink, visit-link and coverage rows.
LpModel build_static(const Instance& inst);

// Per-commodity arc flows, k x |A|, and visit levels y, k x n (zero on T).
struct FractionalSolution {
  std::shared_ptr<const BidirectedGraph> graph;
  Eigen::MatrixXd flow;
  Eigen::MatrixXd visit;
  double objective = 0.0;

  int num_commodities() const { return static_cast<int>(flow.rows()); }
  // z_{i,v} = x_i(out(v)).
  double outflow(int commodity, Vertex v) const;
  double inflow(int commodity, Vertex v) const;
  // z_v = sum_i z_{i,v}.
  double total_outflow(Vertex v) const;
  // All z_{i,v} as a k x n matrix.
  Eigen::MatrixXd outflow_matrix() const;
  double flow_on(int commodity, const std::vector<char>& in_set) const;
};

// Separates connectivity cuts by one min cut per (commodity, vertex) with
// positive visit level, scanning vertices in ascending order.
std::vector<CutConstraint> separate(const Instance& inst, const FractionalSolution& x,
                                    const LpTolerances& tol = {});

// Largest violation of any static row, measured on the raw row expression.
double max_static_violation(const LpModel& model, const FractionalSolution& x);

struct CutRound {
  double objective = 0.0;
  Eigen::MatrixXd iterate;  // flow
  Eigen::MatrixXd visit;
  std::vector<CutConstraint> cuts;
};

struct LpResult {
  FractionalSolution solution;
  std::vector<CutRound> rounds;
  std::string lp_text;  // filled when requested
};

struct LpOptions {
  LpTolerances tol;
  bool keep_iterates = false;
  bool dump_text = false;
};

// Constraint generation until no cut is violated beyond tol.separation.
// Throws kIterationLimit or kLpInfeasible.
LpResult solve_lp(const Instance& inst, const LpOptions& options = {});

}  // namespace mptsp

#endif  // MPTSP_LP_HPP
