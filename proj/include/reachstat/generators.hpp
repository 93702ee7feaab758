#pragma once

#include <string>
#include <vector>

#include "reachstat/set_geometry.hpp"
#include "reachstat/uncertain_dynamics.hpp"

namespace reachstat {

enum class GeneratorMethod { kBloatMean, kMaxSv, kEncloseOrh, kUniformOrh, kBoxBloat };

std::string to_string(GeneratorMethod m);
// Accepts the long names (bloat-mean, ...) and the CLI short names (mean|sv|orh|uniform|box).
GeneratorMethod method_from_string(const std::string& s);

struct GeneratorConfig {
  GeneratorMethod method = GeneratorMethod::kBoxBloat;
  std::size_t sample_count = 20;     // N
  std::size_t points_per_set = 50;   // h
  std::size_t grid_count = 5;        // K_grid, per non-LME-preserving variable
  double epsilon = 0.01;
  int extra_dirs = -1;               // random template directions; negative means 2n
  int hausdorff_random_dirs = 64;
  std::size_t vertex_cap = kDefaultVertexCap;
  Eigen::Index sign_cap = kDefaultSignEnumerationCap;

  void validate() const;
  Eigen::Index extra_dirs_for(Eigen::Index n) const { return extra_dirs < 0 ? 2 * n : extra_dirs; }
};

struct Candidate {
  TemplatePolytope set;
  GeneratorMethod method = GeneratorMethod::kBoxBloat;
  double epsilon_used = 0.0;
  double base_distance = 0.0;
  bool conservative = false;
  // Reach stars the candidate was built from (used by containment self-checks).
  std::vector<StarSet> generating_stars;
  // Number of sample dynamics evaluated.
  std::size_t dynamics_evaluated = 0;
};

Candidate bloat_mean(const UncertainSystem& sys, const StarSet& theta, double t, const GeneratorConfig& cfg, Rng& rng);
Candidate max_sv(const UncertainSystem& sys, const StarSet& theta, double t, const GeneratorConfig& cfg, Rng& rng);
Candidate enclose_orh(const UncertainSystem& sys, const StarSet& theta, double t, const GeneratorConfig& cfg, Rng& rng);
Candidate uniform_orh(const UncertainSystem& sys, const StarSet& theta, double t, const GeneratorConfig& cfg, Rng& rng);
Candidate box_bloat(const UncertainSystem& sys, const StarSet& theta, double t, const GeneratorConfig& cfg, Rng& rng);

// Dispatches on cfg.method.
Candidate generate(const UncertainSystem& sys, const StarSet& theta, double t, const GeneratorConfig& cfg, Rng& rng);

// Valuations used by uniform_orh: domain vertices plus a K-point grid along
// every non-LME-preserving variable with the other variables at midpoints.
std::vector<Vector> structure_guided_valuations(const UncertainSystem& sys, std::size_t grid_count,
                                                std::size_t vertex_cap);

}  // namespace reachstat
