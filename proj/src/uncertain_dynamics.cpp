#include "reachstat/uncertain_dynamics.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "reachstat/errors.hpp"

namespace reachstat {

std::ostream& operator<<(std::ostream& os, const Interval& iv) { return os << '[' << iv.lo << ',' << iv.hi << ']'; }

// ---- Monomial ----

Monomial::Monomial(std::map<std::size_t, int> powers) : powers_(std::move(powers)) {
  for (const auto& [var, p] : powers_)
    if (p < 1) throw InputError("Monomial: power of variable " + std::to_string(var) + " must be >= 1");
}

Monomial Monomial::variable(std::size_t var, int power) { return Monomial({{var, power}}); }

int Monomial::degree() const {
  int d = 0;
  for (const auto& [var, p] : powers_) d += p;
  return d;
}

int Monomial::power_of(std::size_t var) const {
  auto it = powers_.find(var);
  return it == powers_.end() ? 0 : it->second;
}

std::size_t Monomial::max_variable() const { return powers_.rbegin()->first; }

double Monomial::evaluate(const Vector& values) const {
  double r = 1.0;
  for (const auto& [var, p] : powers_) {
    const double v = values(static_cast<Eigen::Index>(var));
    for (int k = 0; k < p; ++k) r *= v;
  }
  return r;
}

// ---- PolyMatrixExpr ----

PolyMatrixExpr::PolyMatrixExpr(Eigen::Index dim, std::size_t var_count) : dim_(dim), var_count_(var_count) {
  if (dim < 1) throw InputError("PolyMatrixExpr: dimension must be positive");
}

void PolyMatrixExpr::add_term(const Matrix& coefficient, const Monomial& monomial) {
  if (coefficient.rows() != dim_ || coefficient.cols() != dim_)
    throw InputError("PolyMatrixExpr: coefficient matrix is not " + std::to_string(dim_) + "x" +
                     std::to_string(dim_));
  if (!monomial.is_constant() && monomial.max_variable() >= var_count_)
    throw InputError("PolyMatrixExpr: monomial references variable " + std::to_string(monomial.max_variable()) +
                     " but only " + std::to_string(var_count_) + " exist");
  for (auto& t : terms_) {
    if (t.monomial == monomial) {
      t.coefficient += coefficient;
      return;
    }
  }
  terms_.push_back({coefficient, monomial});
}

Matrix PolyMatrixExpr::constant_term() const {
  for (const auto& t : terms_)
    if (t.monomial.is_constant()) return t.coefficient;
  return Matrix::Zero(dim_, dim_);
}

Matrix PolyMatrixExpr::linear_coefficient(std::size_t var) const {
  const Monomial target = Monomial::variable(var);
  for (const auto& t : terms_)
    if (t.monomial == target) return t.coefficient;
  return Matrix::Zero(dim_, dim_);
}

bool PolyMatrixExpr::is_linear() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.monomial.degree() <= 1; });
}

bool PolyMatrixExpr::var_has_only_degree_one_terms(std::size_t var) const {
  for (const auto& t : terms_) {
    if (!t.monomial.contains(var)) continue;
    if (t.monomial.degree() != 1) return false;
  }
  return true;
}

PolyMatrixExpr PolyMatrixExpr::scaled(double s) const {
  PolyMatrixExpr out(dim_, var_count_);
  for (const auto& t : terms_) out.terms_.push_back({s * t.coefficient, t.monomial});
  return out;
}

// ---- VarDomain ----

bool VarDomain::contains(const Vector& v, double tol) const {
  if (static_cast<std::size_t>(v.size()) != intervals.size()) return false;
  for (std::size_t i = 0; i < intervals.size(); ++i)
    if (!intervals[i].contains(v(static_cast<Eigen::Index>(i)), tol)) return false;
  return true;
}

Vector VarDomain::midpoint() const {
  Vector m(static_cast<Eigen::Index>(intervals.size()));
  for (std::size_t i = 0; i < intervals.size(); ++i) m(static_cast<Eigen::Index>(i)) = intervals[i].mid();
  return m;
}

VarDomain VarDomain::bloated(double delta) const {
  VarDomain d = *this;
  for (auto& iv : d.intervals) iv = iv.bloated(delta);
  return d;
}

std::string to_string(Distribution d) {
  return d == Distribution::kUniform ? "uniform" : "truncated_gaussian";
}

Distribution distribution_from_string(const std::string& s) {
  if (s == "uniform") return Distribution::kUniform;
  if (s == "truncated_gaussian" || s == "truncated-gaussian") return Distribution::kTruncatedGaussian;
  throw InputError("unknown distribution '" + s + "'");
}

UncertainSystem::UncertainSystem(PolyMatrixExpr e, VarDomain d, Distribution dist, std::vector<std::string> names)
    : expr(std::move(e)), domain(std::move(d)), distribution(dist), var_names(std::move(names)) {
  if (expr.var_count() != domain.size())
    throw InputError("UncertainSystem: expression has " + std::to_string(expr.var_count()) +
                     " variables but the domain has " + std::to_string(domain.size()) + " intervals");
  for (const auto& iv : domain.intervals)
    if (!iv.is_valid()) throw InputError("UncertainSystem: domain interval with lower > upper");
  if (var_names.empty())
    for (std::size_t i = 0; i < domain.size(); ++i) var_names.push_back("y" + std::to_string(i));
  if (var_names.size() != domain.size()) throw InputError("UncertainSystem: variable name count mismatch");
}

// ---- IntervalMatrix / BoolMatrix ----

IntervalMatrix::IntervalMatrix(Eigen::Index rows, Eigen::Index cols)
    : rows_(rows), cols_(cols), entries_(static_cast<std::size_t>(rows * cols)) {}

Matrix IntervalMatrix::center() const {
  Matrix m(rows_, cols_);
  for (Eigen::Index i = 0; i < rows_; ++i)
    for (Eigen::Index j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).mid();
  return m;
}

Matrix IntervalMatrix::radius() const {
  Matrix m(rows_, cols_);
  for (Eigen::Index i = 0; i < rows_; ++i)
    for (Eigen::Index j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).radius();
  return m;
}

bool IntervalMatrix::contains(const Matrix& a, double tol) const {
  if (a.rows() != rows_ || a.cols() != cols_) return false;
  for (Eigen::Index i = 0; i < rows_; ++i)
    for (Eigen::Index j = 0; j < cols_; ++j)
      if (!(*this)(i, j).contains(a(i, j), tol)) return false;
  return true;
}

BoolMatrix::BoolMatrix(Eigen::Index rows, Eigen::Index cols) : bits_(rows, cols) { bits_.setConstant(false); }

bool BoolMatrix::is_zero() const {
  for (Eigen::Index i = 0; i < rows(); ++i)
    for (Eigen::Index j = 0; j < cols(); ++j)
      if (bits_(i, j)) return false;
  return true;
}

BoolMatrix operator*(const BoolMatrix& a, const BoolMatrix& b) {
  if (a.cols() != b.rows()) throw InputError("BoolMatrix product: shape mismatch");
  BoolMatrix r(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      bool v = false;
      for (Eigen::Index k = 0; k < a.cols() && !v; ++k) v = a(i, k) && b(k, j);
      r.bits_(i, j) = v;
    }
  return r;
}

BoolMatrix operator+(const BoolMatrix& a, const BoolMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InputError("BoolMatrix sum: shape mismatch");
  BoolMatrix r(a.rows(), a.cols());
  r.bits_ = a.bits_.array() || b.bits_.array();
  return r;
}

bool operator==(const BoolMatrix& a, const BoolMatrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && a.bits_ == b.bits_;
}

// ---- operations ----

Matrix evaluate(const PolyMatrixExpr& expr, const Vector& valuation) {
  if (static_cast<std::size_t>(valuation.size()) != expr.var_count())
    throw InputError("evaluate: valuation has " + std::to_string(valuation.size()) + " entries, expected " +
                     std::to_string(expr.var_count()));
  Matrix a = Matrix::Zero(expr.dim(), expr.dim());
  for (const auto& t : expr.terms()) a += t.monomial.evaluate(valuation) * t.coefficient;
  return a;
}

Vector sample_valuation(const UncertainSystem& sys, Rng& rng) {
  const auto& ivs = sys.domain.intervals;
  Vector g(static_cast<Eigen::Index>(ivs.size()));
  for (std::size_t i = 0; i < ivs.size(); ++i) {
    const Interval& iv = ivs[i];
    double v = iv.lo;
    if (!iv.is_degenerate()) {
      if (sys.distribution == Distribution::kUniform) {
        v = std::uniform_real_distribution<double>(iv.lo, iv.hi)(rng);
      } else {
        std::normal_distribution<double> normal(iv.mid(), iv.width() / 4.0);
        do {
          v = normal(rng);
        } while (!iv.contains(v));
      }
    }
    g(static_cast<Eigen::Index>(i)) = v;
  }
  return g;
}

std::pair<Vector, Matrix> sample_dynamics(const UncertainSystem& sys, Rng& rng) {
  Vector g = sample_valuation(sys, rng);
  Matrix a = evaluate(sys.expr, g);
  return {std::move(g), std::move(a)};
}

Matrix mean_dynamics(const UncertainSystem& sys) { return evaluate(sys.expr, sys.domain.midpoint()); }

std::vector<Vector> domain_vertices(const VarDomain& dom, std::size_t cap) {
  const std::size_t k = dom.size();
  if (k > cap) throw CapacityError("domain_vertices: " + std::to_string(k) + " variables exceed the vertex cap", cap);
  std::vector<Vector> out{Vector(static_cast<Eigen::Index>(k))};
  for (std::size_t i = 0; i < k; ++i) {
    const Interval& iv = dom.intervals[i];
    const auto idx = static_cast<Eigen::Index>(i);
    if (iv.is_degenerate()) {
      for (auto& v : out) v(idx) = iv.lo;
      continue;
    }
    std::vector<Vector> next;
    next.reserve(out.size() * 2);
    for (const auto& v : out) {
      Vector lo = v, hi = v;
      lo(idx) = iv.lo;
      hi(idx) = iv.hi;
      next.push_back(std::move(lo));
      next.push_back(std::move(hi));
    }
    out = std::move(next);
  }
  return out;
}

BoolMatrix support_of(const Matrix& m) {
  BoolMatrix b(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) b.set(i, j, m(i, j) != 0.0);
  return b;
}

bool is_sub_support(const BoolMatrix& b1, const BoolMatrix& b2) {
  if (b1.rows() != b2.rows() || b1.cols() != b2.cols()) throw InputError("is_sub_support: shape mismatch");
  for (Eigen::Index i = 0; i < b1.rows(); ++i)
    for (Eigen::Index j = 0; j < b1.cols(); ++j)
      if (b1(i, j) && !b2(i, j)) return false;
  return true;
}

bool is_lme_preserving(const UncertainSystem& sys, std::size_t var) {
  if (var >= sys.var_count()) throw InputError("is_lme_preserving: variable index out of range");
  if (!sys.expr.var_has_only_degree_one_terms(var)) return false;
  const BoolMatrix s0 = support_of(sys.expr.constant_term());
  const BoolMatrix si = support_of(sys.expr.linear_coefficient(var));
  return is_sub_support(s0 * s0, s0) && is_sub_support(s0 * si + si * s0, si);
}

bool is_lme_closed(const UncertainSystem& sys) {
  if (!sys.expr.is_linear()) return false;
  const BoolMatrix s0 = support_of(sys.expr.constant_term());
  if (!is_sub_support(s0 * s0, s0)) return false;
  std::vector<BoolMatrix> sj;
  for (std::size_t j = 0; j < sys.var_count(); ++j) sj.push_back(support_of(sys.expr.linear_coefficient(j)));
  for (const auto& s : sj)
    if (!is_sub_support(s0 * s, s) || !is_sub_support(s * s0, s)) return false;
  for (const auto& a : sj)
    for (const auto& b : sj)
      if (!(a * b).is_zero()) return false;
  return true;
}

IntervalMatrix as_interval_matrix(const UncertainSystem& sys) {
  if (!sys.expr.is_linear())
    throw UnsupportedFormError("as_interval_matrix: expression has terms of degree above one");
  const Eigen::Index n = sys.dim();
  IntervalMatrix omega(n, n);
  const Matrix m0 = sys.expr.constant_term();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) omega(i, j) = Interval(m0(i, j));
  for (std::size_t v = 0; v < sys.var_count(); ++v) {
    const Matrix mv = sys.expr.linear_coefficient(v);
    const Interval& dv = sys.domain.intervals[v];
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        if (mv(i, j) != 0.0) omega(i, j) += mv(i, j) * dv;
  }
  return omega;
}

UncertainSystem system_from_interval_matrix(const IntervalMatrix& omega, Distribution dist) {
  if (omega.rows() != omega.cols()) throw InputError("interval matrix must be square");
  const Eigen::Index n = omega.rows();
  std::size_t k = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!omega(i, j).is_valid()) throw InputError("interval matrix entry with lower > upper");
      if (!omega(i, j).is_degenerate()) ++k;
    }
  PolyMatrixExpr expr(n, k);
  VarDomain dom;
  std::vector<std::string> names;
  Matrix m0 = Matrix::Zero(n, n);
  std::size_t v = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const Interval& iv = omega(i, j);
      if (iv.is_degenerate()) {
        m0(i, j) = iv.lo;
        continue;
      }
      Matrix e = Matrix::Zero(n, n);
      e(i, j) = 1.0;
      expr.add_term(e, Monomial::variable(v));
      dom.intervals.push_back(iv);
      names.push_back("w_" + std::to_string(i) + "_" + std::to_string(j));
      ++v;
    }
  expr.add_term(m0, Monomial());
  return UncertainSystem(std::move(expr), std::move(dom), dist, std::move(names));
}

double sigma_max(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

MaxSingularValue max_singular_value_matrix(const IntervalMatrix& omega, Eigen::Index cap) {
  const Eigen::Index n = omega.rows();
  if (omega.cols() != n) throw InputError("max_singular_value_matrix: interval matrix must be square");
  if (n > cap)
    throw CapacityError("max_singular_value_matrix: dimension " + std::to_string(n) + " exceeds the sign enumeration cap",
                        static_cast<std::size_t>(cap));
  const Matrix center = omega.center();
  const Matrix delta = omega.radius();
  MaxSingularValue best{center, sigma_max(center)};
  if (delta.isZero(0.0)) return best;

  // y[0] = +1 fixed; (y, z) and (-y, -z) give the same matrix.
  const std::uint64_t y_count = std::uint64_t{1} << (n - 1);
  const std::uint64_t z_count = std::uint64_t{1} << n;
  Vector y(n), z(n);
  Matrix cand(n, n);
  for (std::uint64_t ym = 0; ym < y_count; ++ym) {
    y(0) = 1.0;
    for (Eigen::Index i = 1; i < n; ++i) y(i) = ((ym >> (i - 1)) & 1U) ? -1.0 : 1.0;
    for (std::uint64_t zm = 0; zm < z_count; ++zm) {
      for (Eigen::Index i = 0; i < n; ++i) z(i) = ((zm >> i) & 1U) ? -1.0 : 1.0;
      cand = center + ((y * z.transpose()).array() * delta.array()).matrix();
      const double s = sigma_max(cand);
      if (s > best.sigma) best = {cand, s};
    }
  }
  return best;
}

}  // namespace reachstat
