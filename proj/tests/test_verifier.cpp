#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "reachstat/errors.hpp"
#include "reachstat/verifier.hpp"

using namespace reachstat;
using fixtures::mat2;

namespace {

Candidate huge_candidate(Eigen::Index n) {
  Candidate c;
  c.set = template_from_box(Box(std::vector<Interval>(static_cast<std::size_t>(n), Interval(-1e9, 1e9))));
  return c;
}

}  // namespace

TEST_CASE("required samples") {
  CHECK(required_samples(9000, 0.99) == 906);
  CHECK(required_samples(1, 0.5) == 2);
  // -ln(9001)/ln(0.999) = 9100.4...
  CHECK(required_samples(9000, 0.999) == 9101);
  CHECK_THROWS_AS(required_samples(0, 0.5), InputError);
  CHECK_THROWS_AS(required_samples(10, 1.0), InputError);
  CHECK_THROWS_AS(required_samples(10, 0.0), InputError);
}

TEST_CASE("type I error") {
  CHECK(type1_error(9000, 0.99) == doctest::Approx(0.0108803).epsilon(1e-5));
  CHECK(std::abs(type1_error(9000, 0.99) - 0.01) < 0.001);
  CHECK(type1_error(1, 0.37) == doctest::Approx(0.37));
  CHECK(type1_error(100, 1e-9) == doctest::Approx(1e-11).epsilon(1e-6));
  double prev_b = 1.0;
  for (double B = 2; B < 1e5; B *= 3) {
    const double e = type1_error(B, 0.9);
    CHECK(e < prev_b);
    prev_b = e;
  }
  double prev_c = 0.0;
  for (double c = 0.05; c < 1.0; c += 0.05) {
    const double e = type1_error(50, c);
    CHECK(e > prev_c);
    prev_c = e;
  }
}

TEST_CASE("a universal box is accepted after K checks") {
  const UncertainSystem sys = fixtures::shear_system();
  Rng rng(1);
  const Verdict v = verify(huge_candidate(2), sys, fixtures::unit_box_star(2), 1.0, BayesConfig{}, rng);
  CHECK(v.accepted);
  CHECK(v.samples_checked == 906);
  CHECK(v.K == 906);
  CHECK(!v.counterexample);
}

TEST_CASE("an unbloated single reach set is rejected") {
  const UncertainSystem sys = fixtures::shear_system();
  const StarSet theta = fixtures::unit_box_star(2);
  GeneratorConfig cfg;
  cfg.sample_count = 1;
  cfg.epsilon = 0.0;
  Rng rng(7);
  const Candidate c = enclose_orh(sys, theta, 1.0, cfg, rng);
  const Verdict v = verify(c, sys, theta, 1.0, BayesConfig{}, rng);
  CHECK(!v.accepted);
  REQUIRE(v.counterexample);
  CHECK(sys.domain.contains(v.counterexample->valuation));
  CHECK(!contains(c.set, v.counterexample->reach));
  CHECK(v.samples_checked == v.counterexample->sample_index + 1);
}

TEST_CASE("conservative uniform_orh on a closed system is accepted") {
  const UncertainSystem sys = fixtures::shear_system();
  const StarSet theta = fixtures::unit_box_star(2);
  GeneratorConfig cfg;
  cfg.epsilon = 0.0;
  Rng rng(3);
  const Candidate c = uniform_orh(sys, theta, 1.0, cfg, rng);
  REQUIRE(c.conservative);
  CHECK(verify(c, sys, theta, 1.0, BayesConfig{}, rng).accepted);
}

TEST_CASE("accepted verdicts replay") {
  const UncertainSystem sys = fixtures::shear_system();
  const StarSet theta = fixtures::unit_box_star(2);
  GeneratorConfig cfg;
  cfg.epsilon = 0.05;
  Rng gen(12);
  const Candidate c = box_bloat(sys, theta, 1.0, cfg, gen);
  BayesConfig bc;
  bc.B = 100;
  Rng a(500), b(500);
  const Verdict v1 = verify(c, sys, theta, 1.0, bc, a);
  REQUIRE(v1.accepted);
  for (std::size_t i = 0; i < v1.K; ++i) CHECK(contains(c.set, reach_star(theta, sample_dynamics(sys, b).second, 1.0)));
}

TEST_CASE("refine") {
  const Candidate c = [] {
    Candidate out;
    out.set = template_from_box(Box(std::vector<Interval>{Interval(-1, 1), Interval(-1, 1)}));
    return out;
  }();
  const StarSet escaped = box_to_star(Box(std::vector<Interval>{Interval(-1, 1.5), Interval(-1, 1)}));
  CHECK(escape_distance(c.set, escaped) == doctest::Approx(0.5));
  const double e1 = refine(0.01, c, escaped);
  CHECK(e1 >= 0.56 - 1e-12);
  const double e2 = refine(e1, c, escaped);
  CHECK(e2 > e1);

  const StarSet boundary = fixtures::unit_box_star(2);
  CHECK(refine(0.01, c, boundary) > 0.01);
  CHECK(refine(0.0, c, boundary) > 0.0);
}

TEST_CASE("compute_reach") {
  const StarSet theta = fixtures::unit_box_star(2);
  SUBCASE("zero uncertainty accepts in the first round") {
    const UncertainSystem sys = fixtures::constant_system(mat2(-0.5, 1, -1, -0.5));
    for (auto m : {GeneratorMethod::kBloatMean, GeneratorMethod::kBoxBloat, GeneratorMethod::kEncloseOrh}) {
      GeneratorConfig cfg;
      cfg.method = m;
      Rng rng(1);
      const ReachResult r = compute_reach(sys, theta, 1.0, cfg, BayesConfig{}, rng);
      CHECK(r.verdict.accepted);
      CHECK(r.refinements == 0);
    }
  }
  SUBCASE("shear system with box_bloat, fresh re-verification") {
    const UncertainSystem sys = fixtures::shear_system();
    GeneratorConfig cfg;
    Rng rng(1);
    const ReachResult r = compute_reach(sys, theta, 1.0, cfg, BayesConfig{}, rng);
    CHECK(r.verdict.accepted);
    Rng fresh(2024);
    CHECK(verify(r.candidate, sys, theta, 1.0, BayesConfig{}, fresh).accepted);
  }
  SUBCASE("budget exhaustion carries the last counterexample") {
    const UncertainSystem sys = fixtures::shear_system();
    GeneratorConfig cfg;
    cfg.method = GeneratorMethod::kEncloseOrh;
    cfg.sample_count = 1;
    cfg.epsilon = 0.0;
    BayesConfig bc;
    bc.max_refinements = 1;
    bc.c = 0.999999;
    bc.B = 1e12;
    Rng rng(5);
    try {
      compute_reach(sys, theta, 1.0, cfg, bc, rng);
      MESSAGE("accepted within budget");
    } catch (const BudgetExhausted& e) {
      CHECK(sys.domain.contains(e.last_counterexample().valuation));
      CHECK(e.last_epsilon() > 0.0);
    }
  }
}

TEST_CASE("verify_distance") {
  const UncertainSystem sys = fixtures::shear_system();
  const StarSet theta = fixtures::unit_box_star(2);
  GeneratorConfig cfg;
  Rng rng(9);
  const Candidate c = bloat_mean(sys, theta, 1.0, cfg, rng);
  BayesConfig bc;
  CHECK(verify_distance(c, sys, theta, 1.0, 1e9, bc, rng).accepted);
  CHECK(!verify_distance(c, sys, theta, 1.0, 0.0, bc, rng).accepted);
  // The candidate is the mean set bloated by d + eps, so its gap to any sample
  // is at most about 2d + eps.
  CHECK(verify_distance(c, sys, theta, 1.0, 4.0 * c.base_distance + 1.0, bc, rng).accepted);
  CHECK_THROWS_AS(verify_distance(c, sys, theta, 1.0, -1.0, bc, rng), InputError);
}
