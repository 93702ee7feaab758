#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "reachstat/interval.hpp"

namespace reachstat {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Rng = std::mt19937_64;

// Seed for the index-th independent task derived from a base seed.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) { return base ^ index; }

/// Product of variable powers. The empty monomial is the constant term.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::map<std::size_t, int> powers);
  static Monomial variable(std::size_t var, int power = 1);

  const std::map<std::size_t, int>& powers() const { return powers_; }
  bool is_constant() const { return powers_.empty(); }
  int degree() const;
  int power_of(std::size_t var) const;
  bool contains(std::size_t var) const { return powers_.count(var) != 0; }
  std::size_t max_variable() const;  // requires !is_constant()
  double evaluate(const Vector& values) const;

  friend bool operator<(const Monomial& a, const Monomial& b) { return a.powers_ < b.powers_; }
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.powers_ == b.powers_; }

 private:
  std::map<std::size_t, int> powers_;
};

struct Term {
  Matrix coefficient;
  Monomial monomial;
};

/// Square matrix whose entries are polynomials over k variables, stored as a
/// sum of (coefficient matrix, monomial) terms with one term per monomial.
class PolyMatrixExpr {
 public:
  PolyMatrixExpr(Eigen::Index dim, std::size_t var_count);

  // Adds coeff * monomial, merging with an existing term of the same monomial.
  void add_term(const Matrix& coefficient, const Monomial& monomial);

  Eigen::Index dim() const { return dim_; }
  std::size_t var_count() const { return var_count_; }
  const std::vector<Term>& terms() const { return terms_; }

  Matrix constant_term() const;
  // Coefficient of the degree-one monomial of var (zero when absent).
  Matrix linear_coefficient(std::size_t var) const;
  // True when no monomial has total degree above one.
  bool is_linear() const;
  // True when every monomial mentioning var is exactly var^1.
  bool var_has_only_degree_one_terms(std::size_t var) const;

  PolyMatrixExpr scaled(double s) const;

 private:
  Eigen::Index dim_;
  std::size_t var_count_;
  std::vector<Term> terms_;
};

struct VarDomain {
  std::vector<Interval> intervals;

  std::size_t size() const { return intervals.size(); }
  bool contains(const Vector& v, double tol = 0.0) const;
  Vector midpoint() const;
  VarDomain bloated(double delta) const;
};

enum class Distribution { kUniform, kTruncatedGaussian };

std::string to_string(Distribution d);
Distribution distribution_from_string(const std::string& s);

struct UncertainSystem {
  PolyMatrixExpr expr;
  VarDomain domain;
  Distribution distribution = Distribution::kUniform;
  std::vector<std::string> var_names;

  UncertainSystem(PolyMatrixExpr e, VarDomain d, Distribution dist = Distribution::kUniform,
                  std::vector<std::string> names = {});

  Eigen::Index dim() const { return expr.dim(); }
  std::size_t var_count() const { return expr.var_count(); }
};

/// n x n array of closed intervals.
class IntervalMatrix {
 public:
  IntervalMatrix(Eigen::Index rows, Eigen::Index cols);

  Eigen::Index rows() const { return rows_; }
  Eigen::Index cols() const { return cols_; }
  Interval& operator()(Eigen::Index i, Eigen::Index j) { return entries_[i * cols_ + j]; }
  const Interval& operator()(Eigen::Index i, Eigen::Index j) const { return entries_[i * cols_ + j]; }

  Matrix center() const;  // A_c, entrywise midpoints
  Matrix radius() const;  // Delta, entrywise half-widths
  bool contains(const Matrix& a, double tol = 0.0) const;

 private:
  Eigen::Index rows_;
  Eigen::Index cols_;
  std::vector<Interval> entries_;
};

/// Boolean matrix with disjunction as addition and conjunction as multiplication.
class BoolMatrix {
 public:
  BoolMatrix(Eigen::Index rows, Eigen::Index cols);

  Eigen::Index rows() const { return bits_.rows(); }
  Eigen::Index cols() const { return bits_.cols(); }
  bool operator()(Eigen::Index i, Eigen::Index j) const { return bits_(i, j); }
  void set(Eigen::Index i, Eigen::Index j, bool v) { bits_(i, j) = v; }
  bool is_zero() const;

  friend BoolMatrix operator*(const BoolMatrix& a, const BoolMatrix& b);
  friend BoolMatrix operator+(const BoolMatrix& a, const BoolMatrix& b);
  friend bool operator==(const BoolMatrix& a, const BoolMatrix& b);

 private:
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> bits_;
};

Matrix evaluate(const PolyMatrixExpr& expr, const Vector& valuation);

Vector sample_valuation(const UncertainSystem& sys, Rng& rng);
std::pair<Vector, Matrix> sample_dynamics(const UncertainSystem& sys, Rng& rng);

Matrix mean_dynamics(const UncertainSystem& sys);

inline constexpr std::size_t kDefaultVertexCap = 20;
/// Corners of the box; degenerate axes contribute a single value.
std::vector<Vector> domain_vertices(const VarDomain& dom, std::size_t cap = kDefaultVertexCap);

BoolMatrix support_of(const Matrix& m);
bool is_sub_support(const BoolMatrix& b1, const BoolMatrix& b2);

bool is_lme_preserving(const UncertainSystem& sys, std::size_t var);
bool is_lme_closed(const UncertainSystem& sys);

IntervalMatrix as_interval_matrix(const UncertainSystem& sys);

/// Parses an interval matrix into a linear expression with one variable per
/// non-degenerate entry (named w_<row>_<col>).
UncertainSystem system_from_interval_matrix(const IntervalMatrix& omega,
                                            Distribution dist = Distribution::kUniform);

struct MaxSingularValue {
  Matrix matrix;
  double sigma = 0.0;
};

inline constexpr Eigen::Index kDefaultSignEnumerationCap = 12;
/// Maximizes sigma_max(A_c + (y z^T) o Delta) over sign vectors y, z in
/// {-1,1}^n with y[0] = +1.
MaxSingularValue max_singular_value_matrix(const IntervalMatrix& omega,
                                           Eigen::Index cap = kDefaultSignEnumerationCap);

double sigma_max(const Matrix& m);

}  // namespace reachstat
