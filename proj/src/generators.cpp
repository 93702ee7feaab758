#include "reachstat/generators.hpp"

#include <algorithm>

#include "reachstat/errors.hpp"

namespace reachstat {

std::string to_string(GeneratorMethod m) {
  switch (m) {
    case GeneratorMethod::kBloatMean: return "bloat-mean";
    case GeneratorMethod::kMaxSv: return "max-sv";
    case GeneratorMethod::kEncloseOrh: return "enclose-orh";
    case GeneratorMethod::kUniformOrh: return "uniform-orh";
    case GeneratorMethod::kBoxBloat: return "box-bloat";
  }
  return "unknown";
}

GeneratorMethod method_from_string(const std::string& s) {
  if (s == "bloat-mean" || s == "mean") return GeneratorMethod::kBloatMean;
  if (s == "max-sv" || s == "sv") return GeneratorMethod::kMaxSv;
  if (s == "enclose-orh" || s == "orh") return GeneratorMethod::kEncloseOrh;
  if (s == "uniform-orh" || s == "uniform") return GeneratorMethod::kUniformOrh;
  if (s == "box-bloat" || s == "box") return GeneratorMethod::kBoxBloat;
  throw InputError("unknown generator method '" + s + "'");
}

void GeneratorConfig::validate() const {
  if (sample_count < 1 || points_per_set < 1 || grid_count < 1)
    throw InputError("GeneratorConfig: sample, point and grid counts must be >= 1");
  if (!(epsilon >= 0.0)) throw InputError("GeneratorConfig: epsilon must be >= 0");
}

namespace {

std::vector<StarSet> sample_reach_stars(const UncertainSystem& sys, const StarSet& theta, double t,
                                        std::size_t count, Rng& rng) {
  std::vector<StarSet> stars;
  stars.reserve(count);
  for (std::size_t i = 0; i < count; ++i) stars.push_back(reach_star(theta, sample_dynamics(sys, rng).second, t));
  return stars;
}

DirectionSet template_directions(const std::vector<StarSet>& stars, const GeneratorConfig& cfg, Rng& rng) {
  std::vector<Vector> pooled;
  for (const auto& s : stars) {
    auto pts = sample_points(s, cfg.points_per_set, rng);
    pooled.insert(pooled.end(), std::make_move_iterator(pts.begin()), std::make_move_iterator(pts.end()));
  }
  const Eigen::Index n = stars.front().dim();
  const Eigen::Index extra = cfg.extra_dirs_for(n);
  if (pooled.size() < 2) {
    DirectionSet d = axis_directions(n);
    return extra > 0 ? d.concat(random_directions(n, extra, rng)) : d;
  }
  return pca_directions(pooled, extra, rng);
}

// Shared body of bloat_mean and max_sv: bloat the template of the base reach
// set by the largest sampled Hausdorff gap plus epsilon.
Candidate bloat_around(const UncertainSystem& sys, const StarSet& theta, double t, const Matrix& base,
                       const GeneratorConfig& cfg, Rng& rng, GeneratorMethod method) {
  cfg.validate();
  const StarSet base_rs = reach_star(theta, base, t);
  std::vector<StarSet> samples = sample_reach_stars(sys, theta, t, cfg.sample_count, rng);
  std::vector<StarSet> all = samples;
  all.push_back(base_rs);
  const DirectionSet dirs = template_directions(all, cfg, rng);
  DirectionSet hdirs = dirs;
  if (cfg.hausdorff_random_dirs > 0) hdirs = dirs.concat(random_directions(theta.dim(), cfg.hausdorff_random_dirs, rng));
  double d = 0.0;
  for (const auto& s : samples) d = std::max(d, hausdorff(base_rs, s, hdirs));

  Candidate c;
  c.set = bloat(orh_enclose({base_rs}, dirs, 0.0), d + cfg.epsilon);
  c.method = method;
  c.epsilon_used = cfg.epsilon;
  c.base_distance = d;
  c.generating_stars = std::move(all);
  c.dynamics_evaluated = cfg.sample_count + 1;
  return c;
}

}  // namespace

Candidate bloat_mean(const UncertainSystem& sys, const StarSet& theta, double t, const GeneratorConfig& cfg, Rng& rng) {
  return bloat_around(sys, theta, t, mean_dynamics(sys), cfg, rng, GeneratorMethod::kBloatMean);
}

Candidate max_sv(const UncertainSystem& sys, const StarSet& theta, double t, const GeneratorConfig& cfg, Rng& rng) {
  const MaxSingularValue msv = max_singular_value_matrix(as_interval_matrix(sys), cfg.sign_cap);
  return bloat_around(sys, theta, t, msv.matrix, cfg, rng, GeneratorMethod::kMaxSv);
}

Candidate enclose_orh(const UncertainSystem& sys, const StarSet& theta, double t, const GeneratorConfig& cfg,
                      Rng& rng) {
  cfg.validate();
  std::vector<StarSet> stars = sample_reach_stars(sys, theta, t, cfg.sample_count, rng);
  const DirectionSet dirs = template_directions(stars, cfg, rng);
  Candidate c;
  c.set = orh_enclose(stars, dirs, cfg.epsilon);
  c.method = GeneratorMethod::kEncloseOrh;
  c.epsilon_used = cfg.epsilon;
  c.generating_stars = std::move(stars);
  c.dynamics_evaluated = cfg.sample_count;
  return c;
}

std::vector<Vector> structure_guided_valuations(const UncertainSystem& sys, std::size_t grid_count,
                                                std::size_t vertex_cap) {
  std::vector<Vector> vals = domain_vertices(sys.domain, vertex_cap);
  const Vector mid = sys.domain.midpoint();
  for (std::size_t v = 0; v < sys.var_count(); ++v) {
    if (is_lme_preserving(sys, v)) continue;
    const Interval& iv = sys.domain.intervals[v];
    for (std::size_t k = 0; k < grid_count; ++k) {
      Vector g = mid;
      g(static_cast<Eigen::Index>(v)) =
          grid_count == 1 ? iv.mid() : iv.lo + iv.width() * static_cast<double>(k) / static_cast<double>(grid_count - 1);
      vals.push_back(std::move(g));
    }
  }
  return vals;
}

Candidate uniform_orh(const UncertainSystem& sys, const StarSet& theta, double t, const GeneratorConfig& cfg,
                      Rng& rng) {
  cfg.validate();
  const std::vector<Vector> vals = structure_guided_valuations(sys, cfg.grid_count, cfg.vertex_cap);
  std::vector<StarSet> stars;
  stars.reserve(vals.size());
  for (const auto& g : vals) stars.push_back(reach_star(theta, evaluate(sys.expr, g), t));
  const DirectionSet dirs = template_directions(stars, cfg, rng);
  Candidate c;
  c.set = orh_enclose(stars, dirs, cfg.epsilon);
  c.method = GeneratorMethod::kUniformOrh;
  c.epsilon_used = cfg.epsilon;
  c.conservative = is_lme_closed(sys);
  c.generating_stars = std::move(stars);
  c.dynamics_evaluated = vals.size();
  return c;
}

Candidate box_bloat(const UncertainSystem& sys, const StarSet& theta, double t, const GeneratorConfig& cfg, Rng& rng) {
  cfg.validate();
  std::vector<StarSet> stars = sample_reach_stars(sys, theta, t, cfg.sample_count, rng);
  Box hull = bounding_box(stars.front());
  for (std::size_t i = 1; i < stars.size(); ++i) hull = hull.hull(bounding_box(stars[i]));
  Candidate c;
  c.set = template_from_box(hull.bloated(cfg.epsilon));
  c.method = GeneratorMethod::kBoxBloat;
  c.epsilon_used = cfg.epsilon;
  c.generating_stars = std::move(stars);
  c.dynamics_evaluated = cfg.sample_count;
  return c;
}

Candidate generate(const UncertainSystem& sys, const StarSet& theta, double t, const GeneratorConfig& cfg, Rng& rng) {
  switch (cfg.method) {
    case GeneratorMethod::kBloatMean: return bloat_mean(sys, theta, t, cfg, rng);
    case GeneratorMethod::kMaxSv: return max_sv(sys, theta, t, cfg, rng);
    case GeneratorMethod::kEncloseOrh: return enclose_orh(sys, theta, t, cfg, rng);
    case GeneratorMethod::kUniformOrh: return uniform_orh(sys, theta, t, cfg, rng);
    case GeneratorMethod::kBoxBloat: return box_bloat(sys, theta, t, cfg, rng);
  }
  throw InputError("generate: unknown method");
}

}  // namespace reachstat
