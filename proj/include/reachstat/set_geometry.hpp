#pragma once

#include <Eigen/Dense>

#include <vector>

#include "reachstat/interval.hpp"
#include "reachstat/uncertain_dynamics.hpp"

namespace reachstat {

// Tolerance on support-function comparisons in containment checks.
inline constexpr double kContainmentTol = 1e-9;

/// Axis-aligned box, one closed interval per axis.
struct Box {
  std::vector<Interval> intervals;

  Box() = default;
  explicit Box(std::vector<Interval> ivs);
  static Box from_bounds(const Vector& lower, const Vector& upper);

  Eigen::Index dim() const { return static_cast<Eigen::Index>(intervals.size()); }
  Vector lower() const;
  Vector upper() const;
  Vector center() const;
  bool contains(const Vector& x, double tol = 0.0) const;
  Box bloated(double delta) const;
  Box hull(const Box& other) const;
};

bool operator==(const Box& a, const Box& b);

/// Generalized star {c + V a : P a <= b}. Generators are the columns of V.
/// The predicate must be feasible and bounded; generators may be rank deficient.
class StarSet {
 public:
  StarSet(Vector anchor, Matrix generators, Matrix pred_a, Vector pred_b);

  Eigen::Index dim() const { return anchor_.size(); }
  Eigen::Index num_generators() const { return generators_.cols(); }
  const Vector& anchor() const { return anchor_; }
  const Matrix& generators() const { return generators_; }
  const Matrix& predicate_a() const { return pred_a_; }
  const Vector& predicate_b() const { return pred_b_; }

  // max u'x over the set; throws InvariantViolation when the LP is unbounded or infeasible.
  double support(const Vector& u) const;
  // A maximizer of u'x (a vertex of the set).
  Vector argmax(const Vector& u) const;
  // Membership test: exists a with P a <= b and c + V a = x (up to tol).
  bool contains_point(const Vector& x, double tol = 1e-9) const;

  // Image under x -> E x (anchor and generators mapped, predicate shared).
  StarSet linear_image(const Matrix& e) const;

 private:
  Vector predicate_argmax(const Vector& w) const;

  Vector anchor_;
  Matrix generators_;
  Matrix pred_a_;
  Vector pred_b_;
};

/// Unit directions, one per row.
struct DirectionSet {
  Matrix vectors;

  DirectionSet() = default;
  explicit DirectionSet(Matrix rows);  // rows are normalized; zero rows rejected

  Eigen::Index size() const { return vectors.rows(); }
  Eigen::Index dim() const { return vectors.cols(); }
  Vector operator[](Eigen::Index i) const { return vectors.row(i).transpose(); }
  DirectionSet concat(const DirectionSet& other) const;
};

DirectionSet axis_directions(Eigen::Index n);
DirectionSet random_directions(Eigen::Index n, Eigen::Index count, Rng& rng);

/// {x : lower_i <= u_i' x <= upper_i} over unit directions u_i.
struct TemplatePolytope {
  DirectionSet directions;
  Vector lower;
  Vector upper;

  TemplatePolytope() = default;
  TemplatePolytope(DirectionSet dirs, Vector lo, Vector hi);

  Eigen::Index dim() const { return directions.dim(); }
  Eigen::Index size() const { return directions.size(); }
  bool contains_point(const Vector& x, double tol = kContainmentTol) const;
};

TemplatePolytope template_from_box(const Box& b);
// The template as a star with identity generators; requires bounded template.
StarSet template_to_star(const TemplatePolytope& t);
// max d'x over the template polytope and a maximizer.
std::pair<double, Vector> template_support(const TemplatePolytope& t, const Vector& d);

StarSet box_to_star(const Box& b);
StarSet reach_star(const StarSet& theta, const Matrix& a, double t);

double support_function(const StarSet& s, const Vector& u);
bool contains(const TemplatePolytope& t, const StarSet& s, double tol = kContainmentTol);

// Support-function gap over dirs and their negations. Equals the Hausdorff
// distance of convex compact sets when dirs is dense on the sphere; a lower
// bound otherwise.
double hausdorff(const StarSet& s1, const StarSet& s2, const DirectionSet& dirs);

DirectionSet pca_directions(const std::vector<Vector>& points, Eigen::Index extra_random, Rng& rng);

TemplatePolytope orh_enclose(const std::vector<StarSet>& stars, const DirectionSet& dirs, double epsilon);
Box bounding_box(const StarSet& s);
TemplatePolytope bloat(const TemplatePolytope& t, double delta);
Box affine_interval_image(const Matrix& e, const Box& b, const Matrix& c, const Box& d);
TemplatePolytope template_union(const std::vector<TemplatePolytope>& ts);

// Random points of a star: rejection sampling of predicate coordinates in the
// predicate's bounding box, falling back to predicate vertices.
std::vector<Vector> sample_points(const StarSet& s, std::size_t count, Rng& rng);

}  // namespace reachstat
