#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "reachstat/errors.hpp"
#include "reachstat/matrix_exp.hpp"
#include "reachstat/scenario.hpp"

using namespace reachstat;
using fixtures::mat2;

namespace {

Box square() { return Box(std::vector<Interval>{Interval(-1, 1), Interval(-1, 1)}); }

}  // namespace

TEST_CASE("single degenerate triple is exact") {
  const Matrix a = mat2(0, 1, -1, 0);
  const UncertainSystem sys = fixtures::constant_system(a);
  const Box pt(std::vector<Interval>{Interval(0.5), Interval(-0.25)});
  Rng rng(1);
  const SampleTriples s = sample_triples(sys, pt, sys.domain, Interval(2.0), {1, 1, 1}, rng);
  REQUIRE(s.ys.size() == 1);
  CHECK(s.ys[0].isApprox(matrix_exp(a, 2.0) * pt.lower()));
}

TEST_CASE("sampling is reproducible and counts match") {
  const UncertainSystem sys = fixtures::shear_system();
  Rng a(3), b(3);
  const SampleTriples s1 = sample_triples(sys, square(), sys.domain, Interval(0, 2), {3, 4, 5}, a);
  const SampleTriples s2 = sample_triples(sys, square(), sys.domain, Interval(0, 2), {3, 4, 5}, b);
  CHECK(s1.ys.size() == 60);
  for (std::size_t i = 0; i < s1.ys.size(); ++i) CHECK(s1.ys[i] == s2.ys[i]);
  CHECK(s1.y(2, 3, 4).isApprox(matrix_exp(evaluate(sys.expr, s1.gammas[3]), s1.ts[4]) * s1.xs[2]));
  CHECK_THROWS_AS(sample_triples(sys, square(), sys.domain, Interval(0, 1), {0, 1, 1}, a), InputError);
}

TEST_CASE("zero uncertainty fit is exact with zero coefficients") {
  const Matrix a = mat2(-0.3, 1, -1, -0.3);
  const UncertainSystem sys = fixtures::constant_system(a);
  Rng rng(5);
  const SampleTriples s = sample_triples(sys, square(), sys.domain, Interval(0, 3), {10, 1, 10}, rng);
  const LinearFit fit = learn_model(s, a);
  CHECK(fit.kappa <= 1e-9);
  CHECK(fit.C.isZero());
  CHECK(fit.warnings.empty());
}

TEST_CASE("one triple with nonzero gamma is absorbed by C") {
  const UncertainSystem sys = fixtures::shear_system();
  Rng rng(6);
  const SampleTriples s = sample_triples(sys, square(), sys.domain, Interval(1.0), {1, 1, 1}, rng);
  const LinearFit fit = learn_model(s, Matrix::Identity(2, 2));
  CHECK(fit.kappa <= 1e-9);
}

TEST_CASE("training residuals replay below kappa") {
  const UncertainSystem sys = fixtures::shear_system();
  Rng rng(7);
  const SampleTriples s = sample_triples(sys, square(), sys.domain, Interval(1.0), {10, 5, 1}, rng);
  const Matrix a_c = mean_dynamics(sys);
  const LinearFit fit = learn_model(s, a_c);
  CHECK(max_training_residual(s, a_c, fit.C) <= fit.kappa + 1e-9);
  CHECK(fit.kappa > 0.0);
  CHECK(fit.kappa < 1.0);
}

TEST_CASE("tie-break prefers the smallest coefficients") {
  // Zero residual is reachable with any C when gamma = 0 everywhere.
  PolyMatrixExpr e(1, 1);
  e.add_term(Matrix::Constant(1, 1, -1.0), Monomial());
  e.add_term(Matrix::Constant(1, 1, 0.0), Monomial::variable(0));
  const UncertainSystem sys(e, VarDomain{{Interval(0.0)}});
  Rng rng(1);
  const SampleTriples s = sample_triples(sys, Box(std::vector<Interval>{Interval(0, 1)}), sys.domain,
                                         Interval(0, 1), {5, 1, 5}, rng);
  CHECK(learn_model(s, Matrix::Constant(1, 1, -1.0)).C.isZero());
}

TEST_CASE("a too small kappa bound is infeasible") {
  const UncertainSystem sys = fixtures::shear_system();
  Rng rng(8);
  const SampleTriples s = sample_triples(sys, square(), sys.domain, Interval(1.0), {10, 5, 1}, rng);
  CHECK_THROWS_AS(learn_model(s, Matrix::Zero(2, 2), 0.0, 1e-6), InfeasibleError);
}

TEST_CASE("binding coefficient bound is reported") {
  SampleTriples s;
  s.xs = {Vector::Zero(1)};
  s.gammas = {Vector::Ones(1)};
  s.ts = {1.0};
  s.ys = {Vector::Constant(1, 5.0)};
  const LinearFit fit = learn_model(s, Matrix::Zero(1, 1), 1e-3, 1e3);
  CHECK(fit.C(0, 0) == doctest::Approx(1e-3));
  CHECK(fit.kappa == doctest::Approx(5.0 - 1e-3));
  CHECK(fit.warnings.size() == 1);
}

TEST_CASE("scale equivariance") {
  const UncertainSystem sys = fixtures::shear_system();
  Rng rng(10);
  SampleTriples s = sample_triples(sys, square(), sys.domain, Interval(1.0), {6, 4, 1}, rng);
  const Matrix a_c = mean_dynamics(sys);
  const LinearFit base = learn_model(s, a_c);
  const double k = 3.5;
  for (auto& x : s.xs) x *= k;
  for (auto& y : s.ys) y *= k;
  const LinearFit scaled = learn_model(s, a_c, k * kDefaultCoefficientBound, k * kDefaultKappaBound);
  CHECK(scaled.kappa == doctest::Approx(k * base.kappa).epsilon(1e-9));
  CHECK((scaled.C - k * base.C).norm() <= 1e-9 * std::max(1.0, k * base.C.norm()));
}

TEST_CASE("pac epsilon") {
  CHECK(pac_epsilon(200, 0.01, 2, 1) == doctest::Approx(0.01 * (std::log(100.0) + 3.0)));
  CHECK(pac_epsilon(200, 0.01, 2, 1) == doctest::Approx(0.07605).epsilon(1e-4));
  CHECK(pac_epsilon(400, 0.01, 2, 1) == doctest::Approx(pac_epsilon(200, 0.01, 2, 1) / 2));
  CHECK(pac_epsilon(50, 1.0 - 1e-15, 3, 2) == doctest::Approx(2.0 * 7 / 50).epsilon(1e-9));
  CHECK_THROWS_AS(pac_epsilon(0, 0.5, 1, 1), InputError);
  CHECK_THROWS_AS(pac_epsilon(10, 1.0, 1, 1), InputError);
  const PacCertificate cert = pac_certificate({20, 25, 1}, 0.01, 2, 1);
  CHECK(cert.K_effective == 500);
  CHECK(cert.decision_dim == 3);
  CHECK(cert.epsilon == doctest::Approx(pac_epsilon(500, 0.01, 2, 1)));
  CHECK(cert.epsilon_nested == doctest::Approx(pac_epsilon(20, 0.01, 2, 1)));
  CHECK(cert.vacuous == false);
  CHECK(pac_certificate({1, 1, 1}, 0.01, 2, 1).vacuous);
}

TEST_CASE("model prediction and reach") {
  LearnedModel m;
  m.a_c = mat2(0, 1, 0, 0);
  m.C = Matrix::Zero(2, 1);
  m.theta = Box(std::vector<Interval>{Interval(0.5), Interval(2.0)});
  m.domain = VarDomain{{Interval(0, 1)}};
  m.t_range = Interval(0, 2);
  Vector x(2), g(1);
  x << 0.5, 2.0;
  g << 0.3;
  CHECK(model_predict(m, x, g, 0.0).isApprox(x));
  CHECK(model_predict(m, x, g, 1.0).isApprox(matrix_exp(m.a_c, 1.0) * x));

  const TemplatePolytope r = model_reach(m, 1.0);
  CHECK(r.lower.isApprox(r.upper));
  CHECK(r.lower(0) == doctest::Approx(2.5));
  CHECK_THROWS_AS(model_reach(m, 3.0), InputError);

  m.C = Matrix::Ones(2, 1);
  m.kappa = 0.1;
  m.theta = square();
  const TemplatePolytope r0 = model_reach(m, 0.0);
  CHECK(r0.upper(0) == doctest::Approx(1.0 + 1.0 + 0.1));
  CHECK(r0.lower(0) == doctest::Approx(-1.0 + 0.0 - 0.1));

  CHECK(reach_tube(m, {}).empty());
  const auto tube = reach_tube(m, {1.0});
  REQUIRE(tube.size() == 1);
  CHECK(tube[0].upper == model_reach(m, 1.0).upper);
}

TEST_CASE("trained shear system model covers fresh reach points") {
  const UncertainSystem sys = fixtures::shear_system();
  Rng rng(11);
  const LearnedModel m =
      learn_with_margin(sys, square(), sys.domain, Interval(1.0), Margins{}, {20, 25, 1}, rng);
  const TemplatePolytope r = model_reach(m, 1.0);
  const double eps = pac_epsilon(500, 0.01, 2, 1);
  int outside = 0;
  std::uniform_real_distribution<double> u(-1, 1);
  for (int i = 0; i < 1000; ++i) {
    Vector x(2);
    x << u(rng), u(rng);
    const Matrix a = sample_dynamics(sys, rng).second;
    if (!r.contains_point(matrix_exp(a, 1.0) * x)) ++outside;
  }
  CHECK(outside / 1000.0 <= eps + 0.02);
}

TEST_CASE("margins") {
  const UncertainSystem sys = fixtures::shear_system();
  Rng a(12), b(12);
  const SampleTriples plain = sample_triples(sys, square(), sys.domain, Interval(1.0), {10, 10, 1}, a);
  const LearnedModel m0 = learn_with_margin(sys, square(), sys.domain, Interval(1.0), Margins{}, {10, 10, 1}, b);
  CHECK(m0.kappa == doctest::Approx(learn_model(plain, mean_dynamics(sys)).kappa));

  Rng c(13), d(13);
  const LearnedModel unmargined = learn_with_margin(sys, square(), sys.domain, Interval(1.0), Margins{}, {10, 10, 1}, c);
  const LearnedModel margined =
      learn_with_margin(sys, square(), sys.domain, Interval(1.0), Margins{0.05, 0.05, 0.0}, {10, 10, 1}, d);
  CHECK(margined.theta == square());
  CHECK(margined.domain.intervals[0].lo == doctest::Approx(-2.0));
  CHECK_THROWS_AS(learn_with_margin(sys, square(), sys.domain, Interval(1.0), Margins{-1, 0, 0}, {1, 1, 1}, c),
                  InputError);
  CHECK(margined.kappa > 0.0);
  CHECK(unmargined.kappa > 0.0);
}

TEST_CASE("a superset of scenarios never lowers kappa") {
  const UncertainSystem sys = fixtures::shear_system();
  Rng rng(14);
  const SampleTriples full = sample_triples(sys, square().bloated(0.05), sys.domain.bloated(0.05), Interval(1.0),
                                            {10, 6, 1}, rng);
  SampleTriples part = full;
  part.xs.resize(5);
  part.ys.resize(part.xs.size() * part.gammas.size());
  const Matrix a_c = mean_dynamics(sys);
  CHECK(learn_model(full, a_c).kappa >= learn_model(part, a_c).kappa - 1e-12);
}
