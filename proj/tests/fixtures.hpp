#pragma once

#include <random>

#include "reachstat/set_geometry.hpp"
#include "reachstat/uncertain_dynamics.hpp"

namespace fixtures {

using reachstat::Interval;
using reachstat::Matrix;
using reachstat::Monomial;
using reachstat::PolyMatrixExpr;
using reachstat::UncertainSystem;
using reachstat::VarDomain;
using reachstat::Vector;

inline Matrix mat2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

// [[1, w], [0, -2]] with w in [-2, -1.8].
inline UncertainSystem shear_system() {
  PolyMatrixExpr e(2, 1);
  e.add_term(mat2(1, 0, 0, -2), Monomial());
  e.add_term(mat2(0, 1, 0, 0), Monomial::variable(0));
  return UncertainSystem(e, VarDomain{{Interval(-2.0, -1.8)}}, reachstat::Distribution::kUniform, {"w"});
}

// [[a c, 2 a], [0, b^2]] over a, b, c in [0, 1].
inline UncertainSystem polynomial_system() {
  PolyMatrixExpr e(2, 3);
  e.add_term(mat2(0, 2, 0, 0), Monomial::variable(0));
  e.add_term(mat2(1, 0, 0, 0), Monomial(std::map<std::size_t, int>{{0, 1}, {2, 1}}));
  e.add_term(mat2(0, 0, 0, 1), Monomial::variable(1, 2));
  return UncertainSystem(e, VarDomain{{Interval(0, 1), Interval(0, 1), Interval(0, 1)}},
                         reachstat::Distribution::kUniform, {"a", "b", "c"});
}

// A single fixed matrix with one degenerate variable.
inline UncertainSystem constant_system(const Matrix& a) {
  PolyMatrixExpr e(a.rows(), 1);
  e.add_term(a, Monomial());
  e.add_term(Matrix::Identity(a.rows(), a.cols()) * 0.1, Monomial::variable(0));
  return UncertainSystem(e, VarDomain{{Interval(0.0, 0.0)}});
}

inline reachstat::StarSet unit_box_star(Eigen::Index n) {
  return reachstat::box_to_star(reachstat::Box(std::vector<Interval>(static_cast<std::size_t>(n), Interval(-1, 1))));
}

inline Matrix random_matrix(Eigen::Index n, std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = scale * u(rng);
  return m;
}

}  // namespace fixtures
