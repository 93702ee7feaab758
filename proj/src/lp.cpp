#include "reachstat/lp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace reachstat::lp {

std::string to_string(Status status) {
  switch (status) {
    case Status::kOptimal: return "optimal";
    case Status::kInfeasible: return "infeasible";
    case Status::kUnbounded: return "unbounded";
    case Status::kIterationLimit: return "iteration-limit";
  }
  return "unknown";
}

InequalityLp::InequalityLp(Eigen::Index num_vars) : num_vars_(num_vars) {
  if (num_vars < 1) throw std::invalid_argument("InequalityLp: need at least one variable");
}

void InequalityLp::add_row(const Eigen::Ref<const Eigen::VectorXd>& g, double h) {
  if (g.size() != num_vars_) throw std::invalid_argument("InequalityLp::add_row: width mismatch");
  coeffs_.insert(coeffs_.end(), g.data(), g.data() + g.size());
  rhs_.push_back(h);
}

void InequalityLp::add_rows(const Eigen::Ref<const Eigen::MatrixXd>& G, const Eigen::Ref<const Eigen::VectorXd>& h) {
  if (G.cols() != num_vars_ || G.rows() != h.size())
    throw std::invalid_argument("InequalityLp::add_rows: shape mismatch");
  coeffs_.reserve(coeffs_.size() + static_cast<std::size_t>(G.size()));
  for (Eigen::Index i = 0; i < G.rows(); ++i) {
    for (Eigen::Index j = 0; j < G.cols(); ++j) coeffs_.push_back(G(i, j));
    rhs_.push_back(h(i));
  }
}

void InequalityLp::add_equality(const Eigen::Ref<const Eigen::VectorXd>& g, double h) {
  add_row(g, h);
  add_row(-g, -h);
}

void InequalityLp::add_bounds(Eigen::Index var, double lower, double upper) {
  if (var < 0 || var >= num_vars_) throw std::invalid_argument("InequalityLp::add_bounds: bad index");
  Eigen::VectorXd e = Eigen::VectorXd::Zero(num_vars_);
  if (std::isfinite(upper)) {
    e(var) = 1.0;
    add_row(e, upper);
  }
  if (std::isfinite(lower)) {
    e(var) = -1.0;
    add_row(e, -lower);
  }
}

namespace {

using Index = Eigen::Index;

// Standard-form tableau: minimize cost'y, A y = b, y >= 0, b >= 0. Columns
// [0, n) are structural, [n, n+m) artificial. Row-major, last column is rhs.
class Tableau {
 public:
  Tableau(Index m, Index n, std::vector<double> a, std::vector<double> b)
      : m_(m), n_(n), width_(n + m + 1), a_(std::move(a)), b_(std::move(b)),
        t_(static_cast<std::size_t>(m * width_), 0.0), d_(static_cast<std::size_t>(n + m), 0.0),
        basis_(static_cast<std::size_t>(m)), in_basis_(static_cast<std::size_t>(n + m), 0) {
    for (Index i = 0; i < m_; ++i) {
      basis_[i] = n_ + i;
      in_basis_[n_ + i] = 1;
    }
    refactor();
  }

  enum class Outcome { kOptimal, kUnbounded, kIterationLimit };

  Outcome optimize(const std::vector<double>& cost, bool artificials_may_enter, const Options& opt,
                   long& iterations, long max_iterations) {
    cost_ = cost;
    const double cost_scale = std::max(1.0, max_abs(cost_));
    const double dtol = opt.optimality_tol * cost_scale;
    reduced_costs();
    int degenerate_run = 0;
    bool bland = false;
    int rechecks = 0;
    long since_refactor = 0;
    const Index ncols = artificials_may_enter ? n_ + m_ : n_;
    while (true) {
      if (iterations >= max_iterations) return Outcome::kIterationLimit;
      Index enter = -1;
      double best = -dtol;
      for (Index j = 0; j < ncols; ++j) {
        const double dj = d_[j];
        if (dj < best && !is_basic(j)) {
          enter = j;
          if (bland) break;
          best = dj;
        }
      }
      if (enter < 0) {
        // Re-verify on a fresh factorization before declaring optimality.
        if (since_refactor == 0 || rechecks >= 3) return Outcome::kOptimal;
        refactor();
        reduced_costs();
        since_refactor = 0;
        ++rechecks;
        continue;
      }
      Index leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      double best_piv = 0.0;
      for (Index i = 0; i < m_; ++i) {
        const double piv = at(i, enter);
        if (piv <= opt.pivot_tol) continue;
        const double ratio = std::max(rhs(i), 0.0) / piv;
        const double slack = 1e-12 + 1e-9 * std::min(ratio, best_ratio);
        if (ratio < best_ratio - slack) {
          leave = i;
          best_ratio = ratio;
          best_piv = piv;
        } else if (ratio <= best_ratio + slack) {
          const bool take = bland ? basis_[i] < basis_[leave] : piv > best_piv;
          if (take) {
            leave = i;
            best_ratio = std::min(best_ratio, ratio);
            best_piv = piv;
          }
        }
      }
      if (leave < 0) return Outcome::kUnbounded;
      if (best_ratio < 1e-12) {
        if (++degenerate_run > 50) bland = true;
      } else {
        degenerate_run = 0;
        bland = false;
      }
      pivot(leave, enter);
      ++iterations;
      if (++since_refactor >= 200) {
        refactor();
        reduced_costs();
        since_refactor = 0;
      }
    }
  }

  double basic_artificial_sum() const {
    double s = 0.0;
    for (Index i = 0; i < m_; ++i)
      if (basis_[i] >= n_) s += std::max(rhs(i), 0.0);
    return s;
  }

  // Pivots zero-level artificials out of the basis where a structural column allows it.
  void drive_out_artificials() {
    for (Index i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      Index best = -1;
      double best_abs = 1e-9;
      for (Index j = 0; j < n_; ++j) {
        if (is_basic(j)) continue;
        const double v = std::abs(at(i, j));
        if (v > best_abs) {
          best_abs = v;
          best = j;
        }
      }
      if (best >= 0) pivot(i, best);
    }
    refactor();
  }

  // Simplex multipliers of the stored (sign-normalized) system, from B^{-1}.
  Eigen::VectorXd multipliers() const {
    Eigen::VectorXd pi = Eigen::VectorXd::Zero(m_);
    for (Index i = 0; i < m_; ++i) {
      const Index bj = basis_[i];
      const double cb = bj < static_cast<Index>(cost_.size()) ? cost_[bj] : 0.0;
      if (cb == 0.0) continue;
      for (Index k = 0; k < m_; ++k) pi(k) += cb * at(i, n_ + k);
    }
    return pi;
  }

  void refactor() {
    Eigen::MatrixXd B(m_, m_);
    for (Index c = 0; c < m_; ++c) {
      const Index j = basis_[c];
      for (Index r = 0; r < m_; ++r) B(r, c) = j < n_ ? a_[r * n_ + j] : (r == j - n_ ? 1.0 : 0.0);
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(B);
    const Eigen::MatrixXd Binv = lu.inverse();
    std::vector<double> col(static_cast<std::size_t>(m_));
    std::fill(t_.begin(), t_.end(), 0.0);
    for (Index r = 0; r < m_; ++r) {
      double* row = &t_[r * width_];
      for (Index k = 0; k < m_; ++k) {
        const double w = Binv(r, k);
        if (w == 0.0) continue;
        const double* arow = &a_[k * n_];
        for (Index j = 0; j < n_; ++j) row[j] += w * arow[j];
        row[n_ + k] = w;
        row[width_ - 1] += w * b_[k];
      }
    }
    // Basic columns are exact unit vectors.
    for (Index r = 0; r < m_; ++r)
      for (Index i = 0; i < m_; ++i) t_[i * width_ + basis_[r]] = (i == r) ? 1.0 : 0.0;
  }

 private:
  double at(Index i, Index j) const { return t_[i * width_ + j]; }
  double rhs(Index i) const { return t_[i * width_ + width_ - 1]; }

  bool is_basic(Index j) const { return in_basis_[j] != 0; }

  static double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  }

  void reduced_costs() {
    const Index ncols = n_ + m_;
    for (Index j = 0; j < ncols; ++j) d_[j] = j < static_cast<Index>(cost_.size()) ? cost_[j] : 0.0;
    for (Index i = 0; i < m_; ++i) {
      const Index bj = basis_[i];
      const double cb = bj < static_cast<Index>(cost_.size()) ? cost_[bj] : 0.0;
      if (cb == 0.0) continue;
      const double* row = &t_[i * width_];
      for (Index j = 0; j < ncols; ++j) d_[j] -= cb * row[j];
    }
    for (Index i = 0; i < m_; ++i) d_[basis_[i]] = 0.0;
  }

  void pivot(Index pr, Index pc) {
    double* prow = &t_[pr * width_];
    const double inv = 1.0 / prow[pc];
    for (Index j = 0; j < width_; ++j) prow[j] *= inv;
    prow[pc] = 1.0;
    for (Index i = 0; i < m_; ++i) {
      if (i == pr) continue;
      double* row = &t_[i * width_];
      const double f = row[pc];
      if (f == 0.0) continue;
      for (Index j = 0; j < width_; ++j) row[j] -= f * prow[j];
      row[pc] = 0.0;
    }
    const double f = d_[pc];
    if (f != 0.0) {
      const Index ncols = n_ + m_;
      for (Index j = 0; j < ncols; ++j) d_[j] -= f * prow[j];
      d_[pc] = 0.0;
    }
    in_basis_[basis_[pr]] = 0;
    in_basis_[pc] = 1;
    basis_[pr] = pc;
  }

  Index m_;
  Index n_;
  Index width_;
  std::vector<double> a_;
  std::vector<double> b_;
  std::vector<double> t_;
  std::vector<double> d_;
  std::vector<Index> basis_;
  std::vector<char> in_basis_;
  std::vector<double> cost_;
};

}  // namespace

Result InequalityLp::minimize(const Eigen::Ref<const Eigen::VectorXd>& c, const Options& opt) const {
  if (c.size() != num_vars_) throw std::invalid_argument("InequalityLp::minimize: objective width mismatch");
  const Index m = num_vars_;
  const Index rows = num_rows();
  Result result;

  // Row equilibration, dropping empty rows.
  std::vector<Index> kept;
  std::vector<double> row_scale;
  kept.reserve(static_cast<std::size_t>(rows));
  for (Index r = 0; r < rows; ++r) {
    double mx = 0.0;
    for (Index j = 0; j < m; ++j) mx = std::max(mx, std::abs(coeffs_[r * m + j]));
    if (mx == 0.0) {
      if (rhs_[r] < -opt.feasibility_tol) {
        result.status = Status::kInfeasible;
        return result;
      }
      continue;
    }
    kept.push_back(r);
    row_scale.push_back(1.0 / mx);
  }
  const Index n = static_cast<Index>(kept.size());
  std::vector<double> col_scale(static_cast<std::size_t>(m), 0.0);
  for (Index k = 0; k < n; ++k)
    for (Index j = 0; j < m; ++j)
      col_scale[j] = std::max(col_scale[j], std::abs(coeffs_[kept[k] * m + j]) * row_scale[k]);
  for (double& s : col_scale) s = s > 0.0 ? 1.0 / s : 1.0;

  // Dual standard form: A = G'^T (m x n), b = -c', cost = h'.
  std::vector<double> b(static_cast<std::size_t>(m));
  std::vector<double> sign(static_cast<std::size_t>(m));
  for (Index j = 0; j < m; ++j) {
    b[j] = -c(j) * col_scale[j];
    sign[j] = b[j] < 0.0 ? -1.0 : 1.0;
    b[j] *= sign[j];
  }
  std::vector<double> a(static_cast<std::size_t>(m * n));
  std::vector<double> cost(static_cast<std::size_t>(n));
  for (Index k = 0; k < n; ++k) {
    const Index r = kept[k];
    for (Index j = 0; j < m; ++j) a[j * n + k] = sign[j] * coeffs_[r * m + j] * row_scale[k] * col_scale[j];
    cost[k] = rhs_[r] * row_scale[k];
  }

  const long max_iter = opt.max_iterations > 0 ? opt.max_iterations : 50 * (m + n) + 10000;
  Tableau tab(m, n, std::move(a), b);

  std::vector<double> phase1(static_cast<std::size_t>(n + m), 0.0);
  for (Index i = 0; i < m; ++i) phase1[n + i] = 1.0;
  auto out = tab.optimize(phase1, true, opt, result.iterations, max_iter);
  if (out == Tableau::Outcome::kIterationLimit) {
    result.status = Status::kIterationLimit;
    return result;
  }
  double bmax = 1.0;
  for (double v : b) bmax = std::max(bmax, v);
  if (tab.basic_artificial_sum() > opt.feasibility_tol * bmax) {
    // Dual infeasible: the primal is unbounded when it has any feasible point.
    Result feas = find_feasible(opt);
    result.iterations += feas.iterations;
    if (feas.status == Status::kOptimal) {
      result.status = Status::kUnbounded;
      result.x = feas.x;
      result.max_violation = feas.max_violation;
    } else {
      result.status = feas.status == Status::kIterationLimit ? Status::kIterationLimit : Status::kInfeasible;
    }
    return result;
  }
  tab.drive_out_artificials();

  out = tab.optimize(cost, false, opt, result.iterations, max_iter);
  if (out == Tableau::Outcome::kIterationLimit) {
    result.status = Status::kIterationLimit;
    return result;
  }
  if (out == Tableau::Outcome::kUnbounded) {
    result.status = Status::kInfeasible;
    return result;
  }
  tab.refactor();
  const Eigen::VectorXd pi = tab.multipliers();
  result.x.resize(m);
  for (Index j = 0; j < m; ++j) result.x(j) = sign[j] * pi(j) * col_scale[j];
  result.objective = c.dot(result.x);
  double viol = 0.0;
  for (Index r = 0; r < rows; ++r) {
    double s = -rhs_[r];
    for (Index j = 0; j < m; ++j) s += coeffs_[r * m + j] * result.x(j);
    viol = std::max(viol, s);
  }
  result.max_violation = viol;
  result.status = Status::kOptimal;
  return result;
}

Result InequalityLp::maximize(const Eigen::Ref<const Eigen::VectorXd>& c, const Options& options) const {
  Result r = minimize(-c, options);
  if (r.status == Status::kOptimal) r.objective = -r.objective;
  return r;
}

Result InequalityLp::find_feasible(const Options& options) const {
  return minimize(Eigen::VectorXd::Zero(num_vars_), options);
}

}  // namespace reachstat::lp
