#pragma once

#include <Eigen/Dense>

#include <limits>
#include <string>
#include <vector>

namespace reachstat::lp {

enum class Status { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

std::string to_string(Status status);

struct Options {
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-10;
  double pivot_tol = 1e-10;
  long max_iterations = 0;  // 0: derived from problem size
};

struct Result {
  Status status = Status::kInfeasible;
  double objective = std::numeric_limits<double>::quiet_NaN();
  Eigen::VectorXd x;
  double max_violation = 0.0;  // max_i (G x - h)_i at the returned x
  long iterations = 0;
};

/// Dense linear program in inequality form
///
///   minimize c'x  subject to  G x <= h,  x free.
///
/// Bounds and equalities are expressed as inequality rows. The solver runs a
/// two-phase tableau simplex on the dual (min h'y, G'y = -c, y >= 0), so the
/// tableau has one row per primal variable. This suits the problems in this
/// library: few variables and possibly very many constraint rows. The primal
/// point is recovered from the optimal simplex multipliers and is a vertex of
/// the feasible region.
class InequalityLp {
 public:
  explicit InequalityLp(Eigen::Index num_vars);

  Eigen::Index num_vars() const { return num_vars_; }
  Eigen::Index num_rows() const { return static_cast<Eigen::Index>(rhs_.size()); }

  void add_row(const Eigen::Ref<const Eigen::VectorXd>& g, double h);
  void add_rows(const Eigen::Ref<const Eigen::MatrixXd>& G, const Eigen::Ref<const Eigen::VectorXd>& h);
  // Adds g'x = h as the pair g'x <= h, -g'x <= -h.
  void add_equality(const Eigen::Ref<const Eigen::VectorXd>& g, double h);
  // Infinite bounds are skipped.
  void add_bounds(Eigen::Index var, double lower, double upper);

  Result minimize(const Eigen::Ref<const Eigen::VectorXd>& c, const Options& options = {}) const;
  Result maximize(const Eigen::Ref<const Eigen::VectorXd>& c, const Options& options = {}) const;

  // Feasibility only; status is kOptimal when a point exists.
  Result find_feasible(const Options& options = {}) const;

 private:
  Eigen::Index num_vars_;
  std::vector<double> coeffs_;  // row-major, num_rows x num_vars
  std::vector<double> rhs_;
};

}  // namespace reachstat::lp
