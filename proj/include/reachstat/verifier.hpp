#pragma once

#include <cstdint>
#include <optional>

#include "reachstat/generators.hpp"

namespace reachstat {

struct BayesConfig {
  double B = 9000.0;  // Bayes factor threshold
  double c = 0.99;    // confidence threshold
  std::size_t max_refinements = 20;

  void validate() const;
};

struct Counterexample {
  StarSet reach;
  Vector valuation;
  std::size_t sample_index;
};

struct Verdict {
  bool accepted = false;
  std::size_t samples_checked = 0;
  std::size_t K = 0;
  double type1_error = 0.0;
  std::optional<Counterexample> counterexample;
  std::uint64_t seed = 0;
};

// Smallest integer K with K > -ln(B+1)/ln(c).
std::size_t required_samples(double B, double c);
// c / (c + (1-c) B)
double type1_error(double B, double c);

// Draws K dynamics from rng and checks containment of each reach star in the
// candidate. Stops at the first failure.
Verdict verify(const Candidate& candidate, const UncertainSystem& sys, const StarSet& theta, double t,
               const BayesConfig& cfg, Rng& rng);

// Same sampling scheme with the per-sample property
// hausdorff(sample, candidate) <= bound.
Verdict verify_distance(const Candidate& candidate, const UncertainSystem& sys, const StarSet& theta, double t,
                        double bound, const BayesConfig& cfg, Rng& rng, int random_dirs = 64);

// Largest amount by which ce sticks out of the template along its directions.
double escape_distance(const TemplatePolytope& t, const StarSet& ce);

// New bloating epsilon, strictly above both eps and the escape distance of ce.
double refine(double eps, const Candidate& candidate, const StarSet& ce, double margin = 0.1);

class BudgetExhausted : public std::runtime_error {
 public:
  BudgetExhausted(const std::string& what, Counterexample last, double last_epsilon)
      : std::runtime_error(what), last_(std::move(last)), last_epsilon_(last_epsilon) {}
  const Counterexample& last_counterexample() const { return last_; }
  double last_epsilon() const { return last_epsilon_; }

 private:
  Counterexample last_;
  double last_epsilon_;
};

struct ReachResult {
  Candidate candidate;
  Verdict verdict;
  std::size_t refinements = 0;
};

// Generate, verify, refine until a candidate is accepted or the refinement
// budget runs out (BudgetExhausted).
ReachResult compute_reach(const UncertainSystem& sys, const StarSet& theta, double t, GeneratorConfig gen_cfg,
                          const BayesConfig& bayes_cfg, Rng& rng);

}  // namespace reachstat
