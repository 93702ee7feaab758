#pragma once

#include <algorithm>
#include <cmath>
#include <iosfwd>

namespace reachstat {

/// Closed real interval [lo, hi]. Arithmetic is plain double arithmetic
/// (no outward rounding); callers compare against tolerances instead.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  constexpr Interval() = default;
  constexpr Interval(double point) : lo(point), hi(point) {}  // NOLINT: implicit scalar promotion
  constexpr Interval(double lower, double upper) : lo(lower), hi(upper) {}

  constexpr double mid() const { return 0.5 * (lo + hi); }
  constexpr double width() const { return hi - lo; }
  constexpr double radius() const { return 0.5 * (hi - lo); }
  constexpr bool is_degenerate() const { return lo == hi; }
  constexpr bool is_valid() const { return lo <= hi; }
  constexpr bool contains(double x, double tol = 0.0) const { return x >= lo - tol && x <= hi + tol; }

  Interval bloated(double delta) const { return {lo - delta, hi + delta}; }
  Interval hull(const Interval& o) const { return {std::min(lo, o.lo), std::max(hi, o.hi)}; }
};

inline Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
inline Interval operator-(const Interval& a, const Interval& b) { return {a.lo - b.hi, a.hi - b.lo}; }
inline Interval operator*(double s, const Interval& a) {
  return s >= 0.0 ? Interval{s * a.lo, s * a.hi} : Interval{s * a.hi, s * a.lo};
}
inline Interval operator*(const Interval& a, double s) { return s * a; }
inline Interval operator*(const Interval& a, const Interval& b) {
  const double p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
  return {std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4})};
}
inline Interval& operator+=(Interval& a, const Interval& b) { return a = a + b; }
inline bool operator==(const Interval& a, const Interval& b) { return a.lo == b.lo && a.hi == b.hi; }

std::ostream& operator<<(std::ostream& os, const Interval& iv);

}  // namespace reachstat
