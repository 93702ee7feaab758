// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero when any criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "reachstat/bench.hpp"
#include "reachstat/matrix_exp.hpp"

using namespace reachstat;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Outcome bayes_sample_count() {
  const std::size_t k = required_samples(9000, 0.99);
  return {k == 906, "K = " + std::to_string(k)};
}

Outcome bayes_type1_error() {
  const double e = type1_error(9000, 0.99);
  return {std::abs(e - 0.010880) <= 1e-6, fmt("err = %.8f", e)};
}

Outcome bayes_ratio_consistency() {
  std::mt19937_64 rng(2718);
  std::uniform_real_distribution<double> logb(std::log(1.5), std::log(1e5));
  std::uniform_real_distribution<double> uc(0.5, 0.999);
  int above_at_k = 0, at_most_below = 0;
  for (int i = 0; i < 50; ++i) {
    const double B = std::exp(logb(rng)), c = uc(rng);
    const auto K = static_cast<double>(required_samples(B, c));
    auto ratio = [&](double k) { return (1.0 - std::pow(c, k + 1)) / std::pow(c, k + 1); };
    if (ratio(K) > B) ++above_at_k;
    if (ratio(K - 1) <= B) ++at_most_below;
  }
  return {above_at_k == 50 && at_most_below == 50,
          fmt("ratio > B at K: %.0f/50, ratio <= B at K-1: %.0f/50", above_at_k, at_most_below)};
}

Outcome convex_combination_identity() {
  const UncertainSystem sys = fixtures::shear_system();
  Rng rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Vector g1 = sample_valuation(sys, rng), g2 = sample_valuation(sys, rng);
    const double beta = u(rng), t = 2.0 * u(rng);
    const Matrix lhs = matrix_exp(evaluate(sys.expr, beta * g1 + (1 - beta) * g2), t);
    const Matrix rhs = beta * matrix_exp(evaluate(sys.expr, g1), t) + (1 - beta) * matrix_exp(evaluate(sys.expr, g2), t);
    worst = std::max(worst, (lhs - rhs).norm());
  }
  return {worst <= 1e-8, fmt("max Frobenius error %.3g", worst)};
}

Outcome uniform_orh_conservative() {
  const UncertainSystem sys = fixtures::shear_system();
  const StarSet theta = fixtures::unit_box_star(2);
  Rng rng(41);
  std::uniform_real_distribution<double> ut(0.0, 2.0);
  GeneratorConfig cfg;
  cfg.epsilon = 0.0;
  int contained = 0;
  double worst_gap = -1e300;
  for (int k = 0; k < 5; ++k) {
    const double t = ut(rng);
    const Candidate c = uniform_orh(sys, theta, t, cfg, rng);
    for (int i = 0; i < 100; ++i) {
      const StarSet rs = reach_star(theta, sample_dynamics(sys, rng).second, t);
      if (contains(c.set, rs, kContainmentTol)) ++contained;
      for (Eigen::Index d = 0; d < c.set.size(); ++d)
        worst_gap = std::max(worst_gap, rs.support(c.set.directions[d]) - c.set.upper(d));
    }
  }
  return {contained == 500, fmt("%.0f/500 contained, max support excess %.3g", contained, worst_gap)};
}

Outcome matrix_exp_series() {
  std::mt19937_64 rng(51);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    Matrix a = fixtures::random_matrix(4, rng);
    a /= std::max(1.0, a.lpNorm<1>()) / (0.2 + 0.8 * (i % 5) / 4.0);
    if (a.lpNorm<1>() > 1.0) a /= a.lpNorm<1>();
    Matrix sum = Matrix::Identity(4, 4), term = sum;
    for (int k = 1; k < 30; ++k) {
      term = term * a / static_cast<double>(k);
      sum += term;
    }
    worst = std::max(worst, (matrix_exp(a) - sum).norm() / sum.norm());
  }
  return {worst <= 1e-10, fmt("max relative error %.3g", worst)};
}

Outcome max_singular_value_enumeration() {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> u(-2.0, 2.0), w(0.0, 1.0);
  int exact = 0, dominates = 0;
  for (int trial = 0; trial < 20; ++trial) {
    IntervalMatrix om(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const double lo = u(rng);
        om(i, j) = Interval(lo, lo + w(rng));
      }
    const MaxSingularValue got = max_singular_value_matrix(om);
    const Matrix ac = om.center(), delta = om.radius();
    double full = 0.0;
    for (int ys = 0; ys < 8; ++ys)
      for (int zs = 0; zs < 8; ++zs) {
        Matrix m = ac;
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j)
            m(i, j) += ((ys >> i & 1) ? 1.0 : -1.0) * ((zs >> j & 1) ? 1.0 : -1.0) * delta(i, j);
        full = std::max(full, sigma_max(m));
      }
    if (std::abs(full - got.sigma) <= 1e-12 * std::max(1.0, full)) ++exact;
    double sampled = 0.0;
    for (int s = 0; s < 1000; ++s) {
      Matrix m(3, 3);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = om(i, j).lo + w(rng) * om(i, j).width();
      sampled = std::max(sampled, sigma_max(m));
    }
    if (got.sigma >= sampled - 1e-12) ++dominates;
  }
  return {exact == 20 && dominates == 20,
          fmt("equal to full enumeration %.0f/20, dominates samples %.0f/20", exact, dominates)};
}

Outcome generator_containment() {
  const UncertainSystem sys = fixtures::shear_system();
  const StarSet theta = fixtures::unit_box_star(2);
  int ok = 0, total = 0;
  for (auto m : {GeneratorMethod::kBloatMean, GeneratorMethod::kMaxSv, GeneratorMethod::kEncloseOrh,
                 GeneratorMethod::kUniformOrh, GeneratorMethod::kBoxBloat}) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      GeneratorConfig cfg;
      cfg.method = m;
      Rng rng(seed);
      const Candidate c = generate(sys, theta, 1.0, cfg, rng);
      bool all = !c.generating_stars.empty();
      for (const auto& s : c.generating_stars) all = all && contains(c.set, s);
      ok += all;
      ++total;
    }
  }
  return {ok == total, fmt("%.0f/%.0f candidates contain their generating stars", ok, total)};
}

Outcome flight_collision_end_to_end() {
  const BenchmarkCase bc = load_case("flight-collision");
  BayesConfig bayes{9000, 0.99, 20};
  GeneratorConfig gen;
  gen.method = GeneratorMethod::kBoxBloat;
  const double t = bc.time_at(2000);
  const StarSet theta = box_to_star(bc.theta);
  Rng rng(1);
  try {
    const ReachResult r = compute_reach(bc.system, theta, t, gen, bayes, rng);
    Rng fresh(derive_seed(1, 0x5eed));
    const Verdict again = verify(r.candidate, bc.system, theta, t, bayes, fresh);
    return {r.verdict.accepted && again.accepted && again.samples_checked == 906,
            fmt("accepted after %.0f refinements; fresh re-verification ", static_cast<double>(r.refinements)) +
                (again.accepted ? "accepts" : "rejects")};
  } catch (const BudgetExhausted& e) {
    return {false, e.what()};
  }
}

// Best max residual over a C grid of spacing 1e-3 for one state row (p = 1).
double grid_oracle(const std::vector<double>& res, const std::vector<double>& gam, double u_c) {
  double best = 1e300;
  const long steps = static_cast<long>(std::llround(2 * u_c / 1e-3));
  for (long s = 0; s <= steps; ++s) {
    const double c = -u_c + 1e-3 * static_cast<double>(s);
    double worst = 0.0;
    for (std::size_t q = 0; q < res.size(); ++q) worst = std::max(worst, std::abs(res[q] - c * gam[q]));
    best = std::min(best, worst);
  }
  return best;
}

Outcome scenario_lp() {
  bool zero_ok = true, replay_ok = true, oracle_ok = true;
  double zero_kappa = 0.0, worst_replay = -1e300, worst_oracle = -1e300;

  const Box square(std::vector<Interval>{Interval(-1, 1), Interval(-1, 1)});
  {
    const Matrix a = fixtures::mat2(-0.4, 1.0, -1.0, -0.4);
    const UncertainSystem sys = fixtures::constant_system(a);
    Rng rng(71);
    const SampleTriples s = sample_triples(sys, square, sys.domain, Interval(0, 2), {10, 1, 10}, rng);
    const LinearFit fit = learn_model(s, a);
    zero_kappa = fit.kappa;
    zero_ok = fit.kappa <= 1e-9;
    worst_replay = std::max(worst_replay, max_training_residual(s, a, fit.C) - fit.kappa);
  }

  const UncertainSystem sys = fixtures::shear_system();
  const Matrix a_c = mean_dynamics(sys);
  const SampleCounts tiny[] = {{1, 1, 1}, {2, 1, 1}, {1, 2, 1}, {2, 2, 1}, {1, 2, 2}, {4, 1, 1}, {1, 4, 1}, {2, 1, 2}};
  for (int trial = 0; trial < 16; ++trial) {
    Rng rng(100 + trial);
    const SampleTriples s = sample_triples(sys, square, sys.domain, Interval(0.2, 2.0), tiny[trial % 8], rng);
    const LinearFit fit = learn_model(s, a_c, 10.0);
    worst_replay = std::max(worst_replay, max_training_residual(s, a_c, fit.C) - fit.kappa);
    double grid_best = 0.0, gamma_max = 0.0;
    for (Eigen::Index r = 0; r < 2; ++r) {
      std::vector<double> res, gam;
      for (std::size_t i = 0; i < s.xs.size(); ++i)
        for (std::size_t j = 0; j < s.gammas.size(); ++j)
          for (std::size_t k = 0; k < s.ts.size(); ++k) {
            res.push_back(s.y(i, j, k)(r) - (matrix_exp(a_c, s.ts[k]) * s.xs[i])(r));
            gam.push_back(s.gammas[j](0));
            gamma_max = std::max(gamma_max, std::abs(s.gammas[j](0)));
          }
      grid_best = std::max(grid_best, grid_oracle(res, gam, 10.0));
    }
    // The grid optimum is within half a grid step times |gamma| of the true optimum.
    const double slack = 0.5e-3 * gamma_max;
    worst_oracle = std::max(worst_oracle, grid_best - slack - fit.kappa);
    if (fit.kappa < grid_best - slack - 1e-9 || fit.kappa > grid_best + 1e-9) oracle_ok = false;
  }
  replay_ok = worst_replay <= 1e-9;

  // Larger models: the replay must hold too.
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    Rng rng(seed);
    const SampleTriples s = sample_triples(sys, square, sys.domain, Interval(1.0), {20, 25, 1}, rng);
    const LinearFit fit = learn_model(s, a_c);
    worst_replay = std::max(worst_replay, max_training_residual(s, a_c, fit.C) - fit.kappa);
  }
  replay_ok = replay_ok && worst_replay <= 1e-9;
  return {zero_ok && replay_ok && oracle_ok,
          fmt("zero-uncertainty kappa %.3g, worst replay excess %.3g, worst oracle excess %.3g", zero_kappa,
              worst_replay, worst_oracle)};
}

Outcome pac_validation() {
  const UncertainSystem sys = fixtures::shear_system();
  const Box square(std::vector<Interval>{Interval(-1, 1), Interval(-1, 1)});
  const SampleCounts counts{20, 25, 1};
  const double eps = pac_epsilon(counts.total(), 0.01, 2, 1);
  int good = 0;
  double worst_rate = 0.0;
  std::uniform_real_distribution<double> u(-1, 1);
  for (std::uint64_t run = 0; run < 100; ++run) {
    Rng rng(derive_seed(9000, run));
    const LearnedModel m = learn_with_margin(sys, square, sys.domain, Interval(1.0), Margins{}, counts, rng);
    const Matrix base = matrix_exp(m.a_c, 1.0);
    int violations = 0;
    for (int q = 0; q < 10000; ++q) {
      Vector x(2);
      x << u(rng), u(rng);
      const auto [g, a] = sample_dynamics(sys, rng);
      const Vector w = base * x + m.C * g;
      if ((w - matrix_exp(a, 1.0) * x).cwiseAbs().maxCoeff() > m.kappa) ++violations;
    }
    const double rate = violations / 10000.0;
    worst_rate = std::max(worst_rate, rate);
    if (rate <= eps + 0.02) ++good;
  }
  return {good >= 95, fmt("%.0f/100 runs within eps + 0.02 = %.4f (worst rate %.4f)", good, eps + 0.02, worst_rate)};
}

Outcome half_covering_rejection() {
  // Dense template around the reach sets of w in [-2, -1.9], half of the domain.
  const UncertainSystem sys = fixtures::shear_system();
  const StarSet theta = fixtures::unit_box_star(2);
  const double t = 1.0;
  std::vector<StarSet> half;
  for (double w : {-2.0, -1.9}) {
    Vector g(1);
    g << w;
    half.push_back(reach_star(theta, evaluate(sys.expr, g), t));
  }
  Matrix dirs(182, 2);
  for (int k = 0; k < 180; ++k) dirs.row(k) << std::cos(M_PI * k / 90.0), std::sin(M_PI * k / 90.0);
  dirs.row(180) << 1, 0;
  dirs.row(181) << 0, 1;
  Candidate c;
  c.set = orh_enclose(half, DirectionSet(dirs), 0.0);

  Rng probe(7);
  int inside = 0;
  for (int i = 0; i < 2000; ++i)
    if (contains(c.set, reach_star(theta, sample_dynamics(sys, probe).second, t))) ++inside;

  int rejected = 0;
  BayesConfig bayes{9000, 0.99, 20};
  for (std::uint64_t run = 0; run < 100; ++run) {
    Rng rng(derive_seed(77, run));
    if (!verify(c, sys, theta, t, bayes, rng).accepted) ++rejected;
  }
  return {rejected >= 99, fmt("%.0f/100 rejected; empirical coverage %.3f", rejected, inside / 2000.0)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"sample count K for B=9000, c=0.99", bayes_sample_count},
      {"type I error for B=9000, c=0.99", bayes_type1_error},
      {"Bayes ratio consistency on 50 random (B, c)", bayes_ratio_consistency},
      {"convex-combination exponential identity", convex_combination_identity},
      {"uniform_orh conservativeness on the closed system", uniform_orh_conservative},
      {"matrix exponential vs 30-term series", matrix_exp_series},
      {"max singular value sign enumeration", max_singular_value_enumeration},
      {"generator containment, 5 methods x 5 seeds", generator_containment},
      {"flight collision end to end at step 2000", flight_collision_end_to_end},
      {"scenario LP exactness, replay and grid oracle", scenario_lp},
      {"PAC validation with 500 scenarios", pac_validation},
      {"half-covering candidate rejection", half_covering_rejection},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s [%2zu] %s: %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, o.detail.c_str(),
                secs);
    std::fflush(stdout);
    failures += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
