#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "reachstat/set_geometry.hpp"
#include "reachstat/uncertain_dynamics.hpp"

namespace reachstat {

struct SampleCounts {
  std::size_t M = 1;  // initial states
  std::size_t N = 1;  // valuations
  std::size_t O = 1;  // times
  std::size_t total() const { return M * N * O; }
};

/// Training scenarios (x_i, gamma_j, t_k) with reach points y_{ijk}.
struct SampleTriples {
  std::vector<Vector> xs;
  std::vector<Vector> gammas;
  std::vector<double> ts;
  std::vector<Vector> ys;  // index (i * N + j) * O + k

  SampleCounts counts() const { return {xs.size(), gammas.size(), ts.size()}; }
  std::size_t index(std::size_t i, std::size_t j, std::size_t k) const {
    return (i * gammas.size() + j) * ts.size() + k;
  }
  const Vector& y(std::size_t i, std::size_t j, std::size_t k) const { return ys[index(i, j, k)]; }
};

SampleTriples sample_triples(const UncertainSystem& sys, const Box& theta, const VarDomain& domain,
                             const Interval& t_range, const SampleCounts& counts, Rng& rng);

inline constexpr double kDefaultCoefficientBound = 1e3;
inline constexpr double kDefaultKappaBound = 1e3;

struct LinearFit {
  Matrix C;
  double kappa = 0.0;
  std::vector<std::string> warnings;  // binding bound notices
};

// Minimax fit of y ~ e^{A_c t} x + C gamma: minimize kappa subject to
// |residual| <= kappa componentwise, |C| <= u_c, 0 <= kappa <= u_kappa.
// Among optimal fits, the one with the least sum |C| is returned.
LinearFit learn_model(const SampleTriples& samples, const Matrix& a_c, double u_c = kDefaultCoefficientBound,
                      double u_kappa = kDefaultKappaBound);

// Largest componentwise residual of the fit over the training triples.
double max_training_residual(const SampleTriples& samples, const Matrix& a_c, const Matrix& c);

struct LearnedModel {
  Matrix a_c;
  Matrix C;
  double kappa = 0.0;
  Box theta;
  VarDomain domain;
  Interval t_range;
  double u_c = kDefaultCoefficientBound;
  double u_kappa = kDefaultKappaBound;
  SampleCounts counts;
  std::uint64_t seed = 0;
  std::vector<std::string> warnings;
};

Vector model_predict(const LearnedModel& model, const Vector& x, const Vector& gamma, double t);

// (2/K)(ln(1/beta) + n p + 1)
double pac_epsilon(std::size_t K, double beta, std::size_t n, std::size_t p);

struct PacCertificate {
  double epsilon = 0.0;  // with K_effective = M N O
  double beta = 0.0;
  std::size_t K_effective = 0;
  std::size_t decision_dim = 0;  // n p + 1
  double epsilon_M = 0.0;
  double epsilon_N = 0.0;
  double epsilon_O = 0.0;
  double epsilon_nested = 0.0;  // 2/M form applied to every level
  bool vacuous = false;         // epsilon >= 1
};

PacCertificate pac_certificate(const SampleCounts& counts, double beta, std::size_t n, std::size_t p);

// Box image of theta and the domain under the model, bloated by kappa.
TemplatePolytope model_reach(const LearnedModel& model, double t);
std::vector<TemplatePolytope> reach_tube(const LearnedModel& model, const std::vector<double>& times);

struct Margins {
  double theta = 0.0;
  double domain = 0.0;
  double time = 0.0;
};

// Samples from the margin-bloated theta, domain and time range, fits against
// mean_dynamics(sys) and records the unbloated sets in the model.
LearnedModel learn_with_margin(const UncertainSystem& sys, const Box& theta, const VarDomain& domain,
                               const Interval& t_range, const Margins& margins, const SampleCounts& counts,
                               Rng& rng, double u_c = kDefaultCoefficientBound,
                               double u_kappa = kDefaultKappaBound);

}  // namespace reachstat
