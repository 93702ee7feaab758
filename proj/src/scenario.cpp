#include "reachstat/scenario.hpp"

#include <algorithm>
#include <cmath>

#include "reachstat/errors.hpp"
#include "reachstat/lp.hpp"
#include "reachstat/matrix_exp.hpp"

namespace reachstat {

namespace {

double uniform_in(const Interval& iv, Rng& rng) {
  if (iv.is_degenerate()) return iv.lo;
  return std::uniform_real_distribution<double>(iv.lo, iv.hi)(rng);
}

Vector uniform_in(const std::vector<Interval>& ivs, Rng& rng) {
  Vector v(static_cast<Eigen::Index>(ivs.size()));
  for (std::size_t i = 0; i < ivs.size(); ++i) v(static_cast<Eigen::Index>(i)) = uniform_in(ivs[i], rng);
  return v;
}

// e^{A_c t_k} x_i for every triple, in SampleTriples index order.
std::vector<Vector> base_predictions(const SampleTriples& s, const Matrix& a_c) {
  std::vector<Matrix> exps;
  exps.reserve(s.ts.size());
  for (double t : s.ts) exps.push_back(matrix_exp(a_c, t));
  std::vector<Vector> out(s.ys.size());
  for (std::size_t i = 0; i < s.xs.size(); ++i)
    for (std::size_t j = 0; j < s.gammas.size(); ++j)
      for (std::size_t k = 0; k < s.ts.size(); ++k) out[s.index(i, j, k)] = exps[k] * s.xs[i];
  return out;
}

}  // namespace

SampleTriples sample_triples(const UncertainSystem& sys, const Box& theta, const VarDomain& domain,
                             const Interval& t_range, const SampleCounts& counts, Rng& rng) {
  if (counts.M < 1 || counts.N < 1 || counts.O < 1) throw InputError("sample counts must be >= 1");
  if (theta.dim() != sys.dim()) throw InputError("theta dimension does not match the system");
  if (domain.size() != sys.var_count()) throw InputError("domain size does not match the system");
  SampleTriples s;
  for (std::size_t i = 0; i < counts.M; ++i) s.xs.push_back(uniform_in(theta.intervals, rng));
  for (std::size_t j = 0; j < counts.N; ++j) s.gammas.push_back(uniform_in(domain.intervals, rng));
  for (std::size_t k = 0; k < counts.O; ++k) s.ts.push_back(uniform_in(t_range, rng));

  s.ys.resize(counts.total());
  for (std::size_t j = 0; j < counts.N; ++j) {
    const Matrix a = evaluate(sys.expr, s.gammas[j]);
    for (std::size_t k = 0; k < counts.O; ++k) {
      const Matrix e = matrix_exp(a, s.ts[k]);
      for (std::size_t i = 0; i < counts.M; ++i) s.ys[s.index(i, j, k)] = e * s.xs[i];
    }
  }
  return s;
}

double max_training_residual(const SampleTriples& samples, const Matrix& a_c, const Matrix& c) {
  const std::vector<Vector> base = base_predictions(samples, a_c);
  double worst = 0.0;
  for (std::size_t i = 0; i < samples.xs.size(); ++i)
    for (std::size_t j = 0; j < samples.gammas.size(); ++j) {
      const Vector cg = c * samples.gammas[j];
      for (std::size_t k = 0; k < samples.ts.size(); ++k) {
        const std::size_t idx = samples.index(i, j, k);
        worst = std::max(worst, (base[idx] + cg - samples.ys[idx]).cwiseAbs().maxCoeff());
      }
    }
  return worst;
}

LinearFit learn_model(const SampleTriples& samples, const Matrix& a_c, double u_c, double u_kappa) {
  if (samples.ys.empty()) throw InputError("learn_model: no samples");
  if (!(u_c >= 0.0) || !(u_kappa >= 0.0)) throw InputError("learn_model: bounds must be >= 0");
  const Eigen::Index n = a_c.rows();
  const Eigen::Index p = samples.gammas.front().size();
  const Eigen::Index count = static_cast<Eigen::Index>(samples.ys.size());
  const std::vector<Vector> base = base_predictions(samples, a_c);

  Matrix gammas(count, p);
  for (std::size_t i = 0; i < samples.xs.size(); ++i)
    for (std::size_t j = 0; j < samples.gammas.size(); ++j)
      for (std::size_t k = 0; k < samples.ts.size(); ++k)
        gammas.row(static_cast<Eigen::Index>(samples.index(i, j, k))) = samples.gammas[j].transpose();

  // The constraints of different state rows share no variables, so each row
  // is solved on its own and kappa is the largest row optimum.
  LinearFit fit;
  fit.C = Matrix::Zero(n, p);
  std::vector<Vector> residual(static_cast<std::size_t>(n));
  for (Eigen::Index r = 0; r < n; ++r) {
    Vector res(count);
    for (Eigen::Index q = 0; q < count; ++q) res(q) = samples.ys[q](r) - base[q](r);
    residual[r] = std::move(res);
  }

  double kappa = 0.0;
  for (Eigen::Index r = 0; r < n; ++r) {
    lp::InequalityLp prog(p + 1);
    Matrix g(2 * count, p + 1);
    Vector h(2 * count);
    g.topLeftCorner(count, p) = gammas;
    g.bottomLeftCorner(count, p) = -gammas;
    g.col(p).setConstant(-1.0);
    h.head(count) = residual[r];
    h.tail(count) = -residual[r];
    prog.add_rows(g, h);
    for (Eigen::Index s = 0; s < p; ++s) prog.add_bounds(s, -u_c, u_c);
    prog.add_bounds(p, 0.0, u_kappa);
    Vector cost = Vector::Zero(p + 1);
    cost(p) = 1.0;
    const lp::Result res = prog.minimize(cost);
    if (res.status == lp::Status::kInfeasible)
      throw InfeasibleError("scenario program infeasible: no fit within kappa <= " + std::to_string(u_kappa) +
                            "; increase U_kappa");
    if (res.status != lp::Status::kOptimal)
      throw InvariantViolation("scenario program: solver returned " + lp::to_string(res.status));
    const Vector c_r = res.x.head(p);
    fit.C.row(r) = c_r.transpose();
    kappa = std::max(kappa, (gammas * c_r - residual[r]).cwiseAbs().maxCoeff());
  }

  // Tie-break: least sum |C| among fits reaching kappa.
  if (p > 0) {
    const double level = kappa + 1e-10 * std::max(1.0, kappa);
    for (Eigen::Index r = 0; r < n; ++r) {
      lp::InequalityLp prog(2 * p);
      Matrix g = Matrix::Zero(2 * count + 2 * p, 2 * p);
      Vector h = Vector::Zero(2 * count + 2 * p);
      g.block(0, 0, count, p) = gammas;
      g.block(count, 0, count, p) = -gammas;
      h.head(count) = residual[r].array() + level;
      h.segment(count, count) = level - residual[r].array();
      for (Eigen::Index s = 0; s < p; ++s) {
        g(2 * count + s, s) = 1.0;
        g(2 * count + s, p + s) = -1.0;
        g(2 * count + p + s, s) = -1.0;
        g(2 * count + p + s, p + s) = -1.0;
      }
      prog.add_rows(g, h);
      for (Eigen::Index s = 0; s < p; ++s) prog.add_bounds(s, -u_c, u_c);
      Vector cost = Vector::Zero(2 * p);
      cost.tail(p).setOnes();
      const lp::Result res = prog.minimize(cost);
      if (res.status != lp::Status::kOptimal) continue;
      fit.C.row(r) = res.x.head(p).transpose();
    }
    for (Eigen::Index r = 0; r < n; ++r)
      kappa = std::max(kappa, (gammas * fit.C.row(r).transpose() - residual[r]).cwiseAbs().maxCoeff());
  }
  fit.kappa = kappa;

  if (kappa >= u_kappa * (1.0 - 1e-6))
    fit.warnings.push_back("kappa is at its upper bound U_kappa = " + std::to_string(u_kappa));
  if (p > 0 && fit.C.cwiseAbs().maxCoeff() >= u_c * (1.0 - 1e-6))
    fit.warnings.push_back("a coefficient of C is at its bound U_C = " + std::to_string(u_c));
  return fit;
}

Vector model_predict(const LearnedModel& model, const Vector& x, const Vector& gamma, double t) {
  if (x.size() != model.a_c.cols() || gamma.size() != model.C.cols())
    throw InputError("model_predict: shape mismatch");
  return matrix_exp(model.a_c, t) * x + model.C * gamma;
}

double pac_epsilon(std::size_t K, double beta, std::size_t n, std::size_t p) {
  if (K < 1) throw InputError("pac_epsilon: K must be >= 1");
  if (!(beta > 0.0 && beta < 1.0)) throw InputError("pac_epsilon: beta must lie in (0,1)");
  return 2.0 / static_cast<double>(K) * (std::log(1.0 / beta) + static_cast<double>(n * p) + 1.0);
}

PacCertificate pac_certificate(const SampleCounts& counts, double beta, std::size_t n, std::size_t p) {
  PacCertificate cert;
  cert.beta = beta;
  cert.K_effective = counts.total();
  cert.decision_dim = n * p + 1;
  cert.epsilon = pac_epsilon(cert.K_effective, beta, n, p);
  cert.epsilon_M = pac_epsilon(counts.M, beta, n, p);
  cert.epsilon_N = pac_epsilon(counts.N, beta, n, p);
  cert.epsilon_O = pac_epsilon(counts.O, beta, n, p);
  cert.epsilon_nested = cert.epsilon_M;
  cert.vacuous = cert.epsilon >= 1.0;
  return cert;
}

TemplatePolytope model_reach(const LearnedModel& model, double t) {
  if (!model.t_range.contains(t, 1e-12 * std::max(1.0, std::abs(t))))
    throw InputError("model_reach: t outside the model's time range");
  const Box img = affine_interval_image(matrix_exp(model.a_c, t), model.theta, model.C, Box(model.domain.intervals));
  return template_from_box(img.bloated(model.kappa));
}

std::vector<TemplatePolytope> reach_tube(const LearnedModel& model, const std::vector<double>& times) {
  std::vector<TemplatePolytope> tube;
  tube.reserve(times.size());
  for (double t : times) tube.push_back(model_reach(model, t));
  return tube;
}

LearnedModel learn_with_margin(const UncertainSystem& sys, const Box& theta, const VarDomain& domain,
                               const Interval& t_range, const Margins& margins, const SampleCounts& counts,
                               Rng& rng, double u_c, double u_kappa) {
  if (margins.theta < 0.0 || margins.domain < 0.0 || margins.time < 0.0)
    throw InputError("margins must be >= 0");
  const SampleTriples s = sample_triples(sys, theta.bloated(margins.theta), domain.bloated(margins.domain),
                                         t_range.bloated(margins.time), counts, rng);
  LearnedModel m;
  m.a_c = mean_dynamics(sys);
  LinearFit fit = learn_model(s, m.a_c, u_c, u_kappa);
  m.C = std::move(fit.C);
  m.kappa = fit.kappa;
  m.warnings = std::move(fit.warnings);
  m.theta = theta;
  m.domain = domain;
  m.t_range = t_range;
  m.u_c = u_c;
  m.u_kappa = u_kappa;
  m.counts = counts;
  return m;
}

}  // namespace reachstat
