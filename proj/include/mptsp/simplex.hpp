#ifndef MPTSP_SIMPLEX_HPP
#define MPTSP_SIMPLEX_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

namespace mptsp {

enum class RowSense { kEqual, kGreaterEqual, kLessEqual };

enum class SimplexStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

// Two-phase primal simplex on a dense tableau for
//   minimize c^T x  s.t.  rows,  x >= 0.
// Rows may be appended between solves; each solve starts from scratch, and the
// final basic solution is recomputed with an LU solve on the basis columns.
template <typename Scalar = double>
class DenseSimplex {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  struct Row {
    std::vector<std::pair<int, Scalar>> terms;
    RowSense sense = RowSense::kEqual;
    Scalar rhs = 0;
  };

  struct Options {
    Scalar optimality_tol = Scalar(1e-9);
    Scalar pivot_tol = Scalar(1e-9);
    Scalar feasibility_tol = Scalar(1e-7);
    int max_pivots = 200000;
    // Consecutive degenerate pivots before switching to Bland's rule.
    int degenerate_switch = 50;
  };

  explicit DenseSimplex(Vector cost, Options options = {})
      : cost_(std::move(cost)), options_(options) {}

  int num_columns() const { return static_cast<int>(cost_.size()); }
  int num_rows() const { return static_cast<int>(rows_.size()); }

  int add_row(Row row) {
    rows_.push_back(std::move(row));
    return num_rows() - 1;
  }
  const Row& row(int i) const { return rows_[i]; }

  SimplexStatus solve();

  const Vector& primal() const { return x_; }
  Scalar objective() const { return objective_; }
  int pivots() const { return pivots_; }

 private:
  enum class Rule { kDantzig, kBland };

  void pivot(int r, int j);
  // Runs the simplex loop with the current objective row. Columns >= limit
  // are never chosen to enter.
  SimplexStatus iterate(int limit);
  void price(const Vector& cost);
  void recover_primal();

  Vector cost_;
  Options options_;
  std::vector<Row> rows_;

  Matrix tableau_;  // rows 0..m-1 constraints, row m objective; last col rhs
  Matrix original_;  // normalized [A | slack | artificial] with rhs column
  std::vector<int> basis_;
  int num_total_ = 0;
  int first_artificial_ = 0;

  Vector x_;
  Scalar objective_ = 0;
  int pivots_ = 0;
};

template <typename Scalar>
void DenseSimplex<Scalar>::pivot(int r, int j) {
  tableau_.row(r) /= tableau_(r, j);
  const Eigen::Matrix<Scalar, 1, Eigen::Dynamic> pivot_row = tableau_.row(r);
  Vector factor = tableau_.col(j);
  factor(r) = 0;
  tableau_.noalias() -= factor * pivot_row;
  tableau_.col(j).setZero();
  tableau_(r, j) = 1;
  basis_[r] = j;
  ++pivots_;
}

template <typename Scalar>
void DenseSimplex<Scalar>::price(const Vector& cost) {
  const int m = num_rows();
  auto obj = tableau_.row(m);
  obj.setZero();
  obj.head(num_total_) = cost.transpose();
  for (int i = 0; i < m; ++i) {
    const Scalar cb = cost(basis_[i]);
    if (cb != 0) obj -= cb * tableau_.row(i);
  }
}

template <typename Scalar>
SimplexStatus DenseSimplex<Scalar>::iterate(int limit) {
  const int m = num_rows();
  const int rhs = num_total_;
  Rule rule = Rule::kDantzig;
  int degenerate_run = 0;
  while (true) {
    if (pivots_ >= options_.max_pivots) return SimplexStatus::kIterationLimit;

    int enter = -1;
    Scalar best = -options_.optimality_tol;
    for (int j = 0; j < limit; ++j) {
      const Scalar d = tableau_(m, j);
      if (rule == Rule::kBland) {
        if (d < -options_.optimality_tol) {
          enter = j;
          break;
        }
      } else if (d < best) {
        best = d;
        enter = j;
      }
    }
    if (enter < 0) return SimplexStatus::kOptimal;

    int leave = -1;
    Scalar min_ratio = std::numeric_limits<Scalar>::infinity();
    for (int i = 0; i < m; ++i) {
      const Scalar a = tableau_(i, enter);
      if (a <= options_.pivot_tol) continue;
      const Scalar ratio = std::max(Scalar(0), tableau_(i, rhs)) / a;
      if (leave < 0 || ratio < min_ratio - Scalar(1e-12)) {
        leave = i;
        min_ratio = ratio;
      } else if (ratio <= min_ratio + Scalar(1e-12)) {
        const bool better = rule == Rule::kBland
                                ? basis_[i] < basis_[leave]
                                : a > tableau_(leave, enter);
        if (better) {
          leave = i;
          min_ratio = std::min(min_ratio, ratio);
        }
      }
    }
    if (leave < 0) return SimplexStatus::kUnbounded;

    if (min_ratio <= Scalar(1e-12)) {
      if (++degenerate_run >= options_.degenerate_switch) rule = Rule::kBland;
    } else {
      degenerate_run = 0;
      rule = Rule::kDantzig;
    }
    pivot(leave, enter);
  }
}

template <typename Scalar>
SimplexStatus DenseSimplex<Scalar>::solve() {
  const int m = num_rows();
  const int n = num_columns();
  pivots_ = 0;

  // Normalize to nonnegative rhs and count slack / artificial columns.
  std::vector<RowSense> sense(m);
  std::vector<Scalar> sign(m, Scalar(1));
  int num_slack = 0, num_art = 0;
  for (int i = 0; i < m; ++i) {
    sense[i] = rows_[i].sense;
    if (rows_[i].rhs < 0) {
      sign[i] = -1;
      if (sense[i] == RowSense::kGreaterEqual) {
        sense[i] = RowSense::kLessEqual;
      } else if (sense[i] == RowSense::kLessEqual) {
        sense[i] = RowSense::kGreaterEqual;
      }
    }
    if (sense[i] != RowSense::kEqual) ++num_slack;
    if (sense[i] != RowSense::kLessEqual) ++num_art;
  }
  first_artificial_ = n + num_slack;
  num_total_ = first_artificial_ + num_art;
  const int rhs = num_total_;

  original_ = Matrix::Zero(m, num_total_ + 1);
  basis_.assign(m, -1);
  int slack = n, art = first_artificial_;
  for (int i = 0; i < m; ++i) {
    for (const auto& [col, value] : rows_[i].terms) original_(i, col) += sign[i] * value;
    original_(i, rhs) = sign[i] * rows_[i].rhs;
    if (sense[i] == RowSense::kLessEqual) {
      original_(i, slack) = 1;
      basis_[i] = slack++;
    } else {
      if (sense[i] == RowSense::kGreaterEqual) original_(i, slack++) = -1;
      original_(i, art) = 1;
      basis_[i] = art++;
    }
  }

  tableau_ = Matrix::Zero(m + 1, num_total_ + 1);
  tableau_.topRows(m) = original_;

  // Phase 1: minimize the sum of artificials.
  Vector phase_one = Vector::Zero(num_total_);
  phase_one.tail(num_art).setOnes();
  price(phase_one);
  SimplexStatus status = iterate(num_total_);
  if (status == SimplexStatus::kIterationLimit) return status;
  const Scalar scale =
      m > 0 ? std::max(Scalar(1), original_.col(rhs).cwiseAbs().maxCoeff()) : Scalar(1);
  if (-tableau_(m, rhs) > options_.feasibility_tol * scale) {
    return SimplexStatus::kInfeasible;
  }

  // Drive zero-level artificials out of the basis. Rows where no structural
  // or slack column can replace them are redundant and keep the artificial.
  for (int i = 0; i < m; ++i) {
    if (basis_[i] < first_artificial_) continue;
    int best = -1;
    Scalar best_abs = options_.pivot_tol;
    for (int j = 0; j < first_artificial_; ++j) {
      if (std::abs(tableau_(i, j)) > best_abs) {
        best_abs = std::abs(tableau_(i, j));
        best = j;
      }
    }
    if (best >= 0) pivot(i, best);
  }

  // Phase 2 on the original cost, artificials barred.
  Vector phase_two = Vector::Zero(num_total_);
  phase_two.head(n) = cost_;
  price(phase_two);
  status = iterate(first_artificial_);
  if (status != SimplexStatus::kOptimal) return status;

  recover_primal();
  return SimplexStatus::kOptimal;
}

template <typename Scalar>
void DenseSimplex<Scalar>::recover_primal() {
  const int m = num_rows();
  const int n = num_columns();
  const int rhs = num_total_;
  x_ = Vector::Zero(n);
  if (m > 0) {
    Matrix basis_columns(m, m);
    for (int i = 0; i < m; ++i) basis_columns.col(i) = original_.col(basis_[i]);
    const Vector xb = basis_columns.partialPivLu().solve(original_.col(rhs));
    for (int i = 0; i < m; ++i) {
      if (basis_[i] < n) x_(basis_[i]) = xb(i);
    }
  }
  for (int j = 0; j < n; ++j) {
    if (x_(j) < Scalar(1e-11)) x_(j) = 0;
  }
  objective_ = cost_.dot(x_);
}

}  // namespace mptsp

#endif  // MPTSP_SIMPLEX_HPP
