#include "reachstat/set_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "reachstat/errors.hpp"
#include "reachstat/lp.hpp"
#include "reachstat/matrix_exp.hpp"

namespace reachstat {

// ---- Box ----

Box::Box(std::vector<Interval> ivs) : intervals(std::move(ivs)) {
  for (const auto& iv : intervals)
    if (!iv.is_valid()) throw InputError("Box: interval with lower > upper");
}

Box Box::from_bounds(const Vector& lower, const Vector& upper) {
  if (lower.size() != upper.size()) throw InputError("Box::from_bounds: size mismatch");
  std::vector<Interval> ivs;
  for (Eigen::Index i = 0; i < lower.size(); ++i) ivs.emplace_back(lower(i), upper(i));
  return Box(std::move(ivs));
}

Vector Box::lower() const {
  Vector v(dim());
  for (Eigen::Index i = 0; i < dim(); ++i) v(i) = intervals[i].lo;
  return v;
}

Vector Box::upper() const {
  Vector v(dim());
  for (Eigen::Index i = 0; i < dim(); ++i) v(i) = intervals[i].hi;
  return v;
}

Vector Box::center() const { return 0.5 * (lower() + upper()); }

bool Box::contains(const Vector& x, double tol) const {
  if (x.size() != dim()) return false;
  for (Eigen::Index i = 0; i < dim(); ++i)
    if (!intervals[i].contains(x(i), tol)) return false;
  return true;
}

Box Box::bloated(double delta) const {
  Box b = *this;
  for (auto& iv : b.intervals) iv = iv.bloated(delta);
  return b;
}

Box Box::hull(const Box& other) const {
  if (other.dim() != dim()) throw InputError("Box::hull: dimension mismatch");
  Box b = *this;
  for (Eigen::Index i = 0; i < dim(); ++i) b.intervals[i] = b.intervals[i].hull(other.intervals[i]);
  return b;
}

bool operator==(const Box& a, const Box& b) { return a.intervals == b.intervals; }

// ---- StarSet ----

StarSet::StarSet(Vector anchor, Matrix generators, Matrix pred_a, Vector pred_b)
    : anchor_(std::move(anchor)), generators_(std::move(generators)), pred_a_(std::move(pred_a)),
      pred_b_(std::move(pred_b)) {
  if (generators_.cols() < 1) throw InputError("StarSet: at least one generator is required");
  if (generators_.rows() != anchor_.size()) throw InputError("StarSet: generator length differs from anchor");
  if (pred_a_.cols() != generators_.cols()) throw InputError("StarSet: predicate width differs from generator count");
  if (pred_a_.rows() != pred_b_.size()) throw InputError("StarSet: predicate row/offset count mismatch");
}

Vector StarSet::predicate_argmax(const Vector& w) const {
  lp::InequalityLp prog(num_generators());
  prog.add_rows(pred_a_, pred_b_);
  const lp::Result r = prog.maximize(w);
  if (r.status != lp::Status::kOptimal)
    throw InvariantViolation("star support LP is " + lp::to_string(r.status));
  return r.x;
}

double StarSet::support(const Vector& u) const {
  if (u.size() != dim()) throw InputError("StarSet::support: direction dimension mismatch");
  const Vector w = generators_.transpose() * u;
  const Vector alpha = predicate_argmax(w);
  return u.dot(anchor_) + w.dot(alpha);
}

Vector StarSet::argmax(const Vector& u) const {
  if (u.size() != dim()) throw InputError("StarSet::argmax: direction dimension mismatch");
  return anchor_ + generators_ * predicate_argmax(generators_.transpose() * u);
}

bool StarSet::contains_point(const Vector& x, double tol) const {
  if (x.size() != dim()) return false;
  lp::InequalityLp prog(num_generators());
  prog.add_rows(pred_a_, pred_b_);
  const Vector offset = x - anchor_;
  for (Eigen::Index i = 0; i < dim(); ++i) {
    const Vector g = generators_.row(i).transpose();
    prog.add_row(g, offset(i) + tol);
    prog.add_row(-g, -offset(i) + tol);
  }
  return prog.find_feasible().status == lp::Status::kOptimal;
}

StarSet StarSet::linear_image(const Matrix& e) const {
  if (e.cols() != dim()) throw InputError("StarSet::linear_image: dimension mismatch");
  return StarSet(e * anchor_, e * generators_, pred_a_, pred_b_);
}

// ---- directions ----

DirectionSet::DirectionSet(Matrix rows) : vectors(std::move(rows)) {
  for (Eigen::Index i = 0; i < vectors.rows(); ++i) {
    const double nrm = vectors.row(i).norm();
    if (!(nrm > 0.0) || !std::isfinite(nrm)) throw InputError("DirectionSet: zero or non-finite direction");
    vectors.row(i) /= nrm;
  }
}

DirectionSet DirectionSet::concat(const DirectionSet& other) const {
  if (size() == 0) return other;
  if (other.size() == 0) return *this;
  if (other.dim() != dim()) throw InputError("DirectionSet::concat: dimension mismatch");
  Matrix m(size() + other.size(), dim());
  m << vectors, other.vectors;
  DirectionSet d;
  d.vectors = std::move(m);
  return d;
}

DirectionSet axis_directions(Eigen::Index n) { return DirectionSet(Matrix::Identity(n, n)); }

DirectionSet random_directions(Eigen::Index n, Eigen::Index count, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(count, n);
  for (Eigen::Index i = 0; i < count; ++i) {
    do {
      for (Eigen::Index j = 0; j < n; ++j) m(i, j) = normal(rng);
    } while (m.row(i).norm() < 1e-12);
  }
  return DirectionSet(std::move(m));
}

// ---- TemplatePolytope ----

TemplatePolytope::TemplatePolytope(DirectionSet dirs, Vector lo, Vector hi)
    : directions(std::move(dirs)), lower(std::move(lo)), upper(std::move(hi)) {
  if (lower.size() != directions.size() || upper.size() != directions.size())
    throw InputError("TemplatePolytope: bound count differs from direction count");
  for (Eigen::Index i = 0; i < lower.size(); ++i)
    if (!(lower(i) <= upper(i))) throw InputError("TemplatePolytope: lower bound above upper bound");
}

bool TemplatePolytope::contains_point(const Vector& x, double tol) const {
  const Vector proj = directions.vectors * x;
  for (Eigen::Index i = 0; i < size(); ++i)
    if (proj(i) > upper(i) + tol || proj(i) < lower(i) - tol) return false;
  return true;
}

TemplatePolytope template_from_box(const Box& b) {
  return TemplatePolytope(axis_directions(b.dim()), b.lower(), b.upper());
}

StarSet template_to_star(const TemplatePolytope& t) {
  const Eigen::Index n = t.dim();
  const Eigen::Index d = t.size();
  Matrix a(2 * d, n);
  Vector b(2 * d);
  a << t.directions.vectors, -t.directions.vectors;
  b << t.upper, -t.lower;
  return StarSet(Vector::Zero(n), Matrix::Identity(n, n), std::move(a), std::move(b));
}

std::pair<double, Vector> template_support(const TemplatePolytope& t, const Vector& d) {
  lp::InequalityLp prog(t.dim());
  prog.add_rows(t.directions.vectors, t.upper);
  prog.add_rows(-t.directions.vectors, -t.lower);
  const lp::Result r = prog.maximize(d);
  if (r.status != lp::Status::kOptimal)
    throw InvariantViolation("template support LP is " + lp::to_string(r.status));
  return {r.objective, r.x};
}

// ---- operations ----

StarSet box_to_star(const Box& b) {
  const Eigen::Index n = b.dim();
  if (n < 1) throw InputError("box_to_star: empty box");
  Matrix gens = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) gens(i, i) = b.intervals[i].radius();
  Matrix a(2 * n, n);
  a << Matrix::Identity(n, n), -Matrix::Identity(n, n);
  return StarSet(b.center(), std::move(gens), std::move(a), Vector::Ones(2 * n));
}

StarSet reach_star(const StarSet& theta, const Matrix& a, double t) {
  if (a.rows() != theta.dim() || a.cols() != theta.dim()) throw InputError("reach_star: dimension mismatch");
  return theta.linear_image(matrix_exp(a, t));
}

double support_function(const StarSet& s, const Vector& u) { return s.support(u); }

bool contains(const TemplatePolytope& t, const StarSet& s, double tol) {
  if (t.dim() != s.dim()) throw InputError("contains: dimension mismatch");
  for (Eigen::Index i = 0; i < t.size(); ++i) {
    const Vector u = t.directions[i];
    if (s.support(u) > t.upper(i) + tol) return false;
    if (-s.support(-u) < t.lower(i) - tol) return false;
  }
  return true;
}

double hausdorff(const StarSet& s1, const StarSet& s2, const DirectionSet& dirs) {
  if (dirs.size() == 0) throw InputError("hausdorff: empty direction set");
  if (s1.dim() != s2.dim() || dirs.dim() != s1.dim()) throw InputError("hausdorff: dimension mismatch");
  double gap = 0.0;
  for (Eigen::Index i = 0; i < dirs.size(); ++i) {
    const Vector u = dirs[i];
    gap = std::max(gap, std::abs(s1.support(u) - s2.support(u)));
    gap = std::max(gap, std::abs(s1.support(-u) - s2.support(-u)));
  }
  return gap;
}

DirectionSet pca_directions(const std::vector<Vector>& points, Eigen::Index extra_random, Rng& rng) {
  if (points.size() < 2) throw InputError("pca_directions: at least two points are required");
  const Eigen::Index n = points.front().size();
  Vector mean = Vector::Zero(n);
  for (const auto& p : points) {
    if (p.size() != n) throw InputError("pca_directions: points of mixed dimension");
    mean += p;
  }
  mean /= static_cast<double>(points.size());
  Matrix cov = Matrix::Zero(n, n);
  for (const auto& p : points) {
    const Vector c = p - mean;
    cov.noalias() += c * c.transpose();
  }
  cov /= static_cast<double>(points.size() - 1);
  // Eigenvectors of a symmetric matrix form a full orthonormal basis even when
  // the cloud is rank deficient.
  Eigen::SelfAdjointEigenSolver<Matrix> eig(cov);
  Matrix rows(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    Vector v = eig.eigenvectors().col(n - 1 - k);
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    if (v(imax) < 0.0) v = -v;
    rows.row(k) = v.transpose();
  }
  DirectionSet dirs(std::move(rows));
  if (extra_random > 0) dirs = dirs.concat(random_directions(n, extra_random, rng));
  return dirs;
}

TemplatePolytope orh_enclose(const std::vector<StarSet>& stars, const DirectionSet& dirs, double epsilon) {
  if (stars.empty()) throw InputError("orh_enclose: no stars given");
  if (epsilon < 0.0) throw InputError("orh_enclose: epsilon must be non-negative");
  const Eigen::Index d = dirs.size();
  Vector lo = Vector::Constant(d, std::numeric_limits<double>::infinity());
  Vector hi = Vector::Constant(d, -std::numeric_limits<double>::infinity());
  for (const auto& s : stars) {
    if (s.dim() != dirs.dim()) throw InputError("orh_enclose: dimension mismatch");
    for (Eigen::Index i = 0; i < d; ++i) {
      const Vector u = dirs[i];
      hi(i) = std::max(hi(i), s.support(u));
      lo(i) = std::min(lo(i), -s.support(-u));
    }
  }
  return TemplatePolytope(dirs, lo.array() - epsilon, hi.array() + epsilon);
}

Box bounding_box(const StarSet& s) {
  std::vector<Interval> ivs;
  const Eigen::Index n = s.dim();
  for (Eigen::Index i = 0; i < n; ++i) {
    const Vector e = Vector::Unit(n, i);
    const double hi = s.support(e);
    double lo = -s.support(-e);
    if (lo > hi) lo = hi;  // rounding on degenerate axes
    ivs.emplace_back(lo, hi);
  }
  return Box(std::move(ivs));
}

TemplatePolytope bloat(const TemplatePolytope& t, double delta) {
  if (delta < 0.0) throw InputError("bloat: delta must be non-negative");
  return TemplatePolytope(t.directions, t.lower.array() - delta, t.upper.array() + delta);
}

Box affine_interval_image(const Matrix& e, const Box& b, const Matrix& c, const Box& d) {
  if (e.cols() != b.dim() || c.cols() != d.dim() || e.rows() != c.rows())
    throw InputError("affine_interval_image: shape mismatch");
  std::vector<Interval> out(static_cast<std::size_t>(e.rows()));
  for (Eigen::Index r = 0; r < e.rows(); ++r) {
    Interval acc(0.0);
    for (Eigen::Index j = 0; j < e.cols(); ++j) acc += e(r, j) * b.intervals[j];
    for (Eigen::Index j = 0; j < c.cols(); ++j) acc += c(r, j) * d.intervals[j];
    out[r] = acc;
  }
  return Box(std::move(out));
}

TemplatePolytope template_union(const std::vector<TemplatePolytope>& ts) {
  if (ts.empty()) throw InputError("template_union: empty list");
  TemplatePolytope out = ts.front();
  for (std::size_t k = 1; k < ts.size(); ++k) {
    if (ts[k].directions.vectors != out.directions.vectors)
      throw InputError("template_union: templates do not share a direction list");
    out.lower = out.lower.cwiseMin(ts[k].lower);
    out.upper = out.upper.cwiseMax(ts[k].upper);
  }
  return out;
}

std::vector<Vector> sample_points(const StarSet& s, std::size_t count, Rng& rng) {
  const Eigen::Index m = s.num_generators();
  lp::InequalityLp prog(m);
  prog.add_rows(s.predicate_a(), s.predicate_b());
  Vector lo(m), hi(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Vector e = Vector::Unit(m, i);
    const lp::Result up = prog.maximize(e);
    const lp::Result dn = prog.minimize(e);
    if (up.status != lp::Status::kOptimal || dn.status != lp::Status::kOptimal)
      throw InvariantViolation("sample_points: predicate is unbounded or infeasible");
    hi(i) = up.objective;
    lo(i) = std::min(dn.objective, up.objective);
  }
  std::vector<Vector> out;
  out.reserve(count);
  const std::size_t max_attempts = 100 * count;
  Vector alpha(m);
  for (std::size_t attempt = 0; attempt < max_attempts && out.size() < count; ++attempt) {
    for (Eigen::Index i = 0; i < m; ++i)
      alpha(i) = lo(i) == hi(i) ? lo(i) : std::uniform_real_distribution<double>(lo(i), hi(i))(rng);
    if (((s.predicate_a() * alpha - s.predicate_b()).array() <= 1e-12).all())
      out.push_back(s.anchor() + s.generators() * alpha);
  }
  std::normal_distribution<double> normal(0.0, 1.0);
  while (out.size() < count) {
    Vector w(m);
    for (Eigen::Index i = 0; i < m; ++i) w(i) = normal(rng);
    const lp::Result r = prog.maximize(w);
    if (r.status != lp::Status::kOptimal) throw InvariantViolation("sample_points: predicate vertex LP failed");
    out.push_back(s.anchor() + s.generators() * r.x);
  }
  return out;
}

}  // namespace reachstat
