#include "reachstat/verifier.hpp"

#include <algorithm>
#include <cmath>

#include "reachstat/errors.hpp"

namespace reachstat {

void BayesConfig::validate() const {
  if (!(B > 0.0) || !std::isfinite(B)) throw InputError("Bayes factor B must be positive and finite");
  if (!(c > 0.0 && c < 1.0)) throw InputError("confidence c must lie in (0,1)");
  if (max_refinements < 1) throw InputError("max_refinements must be >= 1");
}

std::size_t required_samples(double B, double c) {
  BayesConfig{B, c, 1}.validate();
  const double bound = -std::log1p(B) / std::log(c);
  double k = std::floor(bound) + 1.0;
  if (k - 1.0 > bound) k -= 1.0;
  return static_cast<std::size_t>(k);
}

double type1_error(double B, double c) {
  BayesConfig{B, c, 1}.validate();
  return c / (c + (1.0 - c) * B);
}

namespace {

template <class Pred>
Verdict run_samples(const UncertainSystem& sys, const StarSet& theta, double t, const BayesConfig& cfg, Rng& rng,
                    Pred&& holds) {
  cfg.validate();
  Verdict v;
  v.K = required_samples(cfg.B, cfg.c);
  v.type1_error = type1_error(cfg.B, cfg.c);
  for (std::size_t i = 0; i < v.K; ++i) {
    auto [valuation, a] = sample_dynamics(sys, rng);
    StarSet rs = reach_star(theta, a, t);
    ++v.samples_checked;
    if (!holds(rs)) {
      v.counterexample = Counterexample{std::move(rs), std::move(valuation), i};
      return v;
    }
  }
  v.accepted = true;
  return v;
}

}  // namespace

Verdict verify(const Candidate& candidate, const UncertainSystem& sys, const StarSet& theta, double t,
               const BayesConfig& cfg, Rng& rng) {
  return run_samples(sys, theta, t, cfg, rng, [&](const StarSet& rs) { return contains(candidate.set, rs); });
}

Verdict verify_distance(const Candidate& candidate, const UncertainSystem& sys, const StarSet& theta, double t,
                        double bound, const BayesConfig& cfg, Rng& rng, int random_dirs) {
  if (!(bound >= 0.0)) throw InputError("verify_distance: bound must be >= 0");
  const StarSet cand = template_to_star(candidate.set);
  DirectionSet dirs = candidate.set.directions;
  if (random_dirs > 0) dirs = dirs.concat(random_directions(theta.dim(), random_dirs, rng));
  return run_samples(sys, theta, t, cfg, rng,
                     [&](const StarSet& rs) { return hausdorff(rs, cand, dirs) <= bound; });
}

double escape_distance(const TemplatePolytope& t, const StarSet& ce) {
  double escape = 0.0;
  for (Eigen::Index i = 0; i < t.size(); ++i) {
    const Vector u = t.directions[i];
    escape = std::max(escape, ce.support(u) - t.upper(i));
    escape = std::max(escape, t.lower(i) + ce.support(-u));
  }
  return escape;
}

double refine(double eps, const Candidate& candidate, const StarSet& ce, double margin) {
  const double escape = escape_distance(candidate.set, ce);
  const double next = std::max(eps, escape) * (1.0 + margin) + eps;
  if (next > eps && next > escape) return next;
  return std::max(eps, escape) + 10.0 * kContainmentTol;
}

ReachResult compute_reach(const UncertainSystem& sys, const StarSet& theta, double t, GeneratorConfig gen_cfg,
                          const BayesConfig& bayes_cfg, Rng& rng) {
  bayes_cfg.validate();
  std::optional<Counterexample> last;
  for (std::size_t round = 0; round <= bayes_cfg.max_refinements; ++round) {
    Candidate cand = generate(sys, theta, t, gen_cfg, rng);
    Verdict v = verify(cand, sys, theta, t, bayes_cfg, rng);
    if (v.accepted) return ReachResult{std::move(cand), std::move(v), round};
    gen_cfg.epsilon = refine(gen_cfg.epsilon, cand, v.counterexample->reach);
    last = std::move(v.counterexample);
  }
  throw BudgetExhausted("refinement budget of " + std::to_string(bayes_cfg.max_refinements) + " exhausted", *last,
                        gen_cfg.epsilon);
}

}  // namespace reachstat
