#pragma once

#include <cmath>
#include <iosfwd>
#include <limits>
#include <stdexcept>

namespace bilip {

// Closed interval [lo, hi] of doubles with outward-rounded arithmetic.
//
// Basic operations (+, -, *, /, sqrt) use error-free transformations to
// round each endpoint in the correct direction, so exact results stay
// exact. Transcendental functions assume the platform libm is faithful
// (error < 1 ulp) and widen by two ulps on each side.
class Interval {
 public:
  constexpr Interval() = default;
  constexpr Interval(double v) : lo_(v), hi_(v) {}  // NOLINT: implicit point interval
  Interval(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!(lo <= hi)) throw std::invalid_argument("Interval: lo > hi or NaN endpoint");
  }

  static Interval hull(const Interval& a, const Interval& b) {
    return {std::fmin(a.lo_, b.lo_), std::fmax(a.hi_, b.hi_)};
  }
  static Interval entire() {
    return {-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  }

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double mid() const { return lo_ + 0.5 * (hi_ - lo_); }
  double width() const { return hi_ - lo_; }
  bool is_point() const { return lo_ == hi_; }

  bool contains(double v) const { return lo_ <= v && v <= hi_; }
  bool contains(const Interval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
  bool overlaps(const Interval& o) const { return lo_ <= o.hi_ && o.lo_ <= hi_; }

  // Certainly-less comparisons: true only when every element satisfies it.
  bool certainly_lt(const Interval& o) const { return hi_ < o.lo_; }
  bool certainly_le(const Interval& o) const { return hi_ <= o.lo_; }

  Interval operator-() const { return {-hi_, -lo_}; }
  Interval& operator+=(const Interval& o);
  Interval& operator-=(const Interval& o);
  Interval& operator*=(const Interval& o);
  Interval& operator/=(const Interval& o);

  friend bool operator==(const Interval& a, const Interval& b) {
    return a.lo_ == b.lo_ && a.hi_ == b.hi_;
  }

 private:
  double lo_ = 0.0;
  double hi_ = 0.0;
};

Interval operator+(Interval a, const Interval& b);
Interval operator-(Interval a, const Interval& b);
Interval operator*(Interval a, const Interval& b);
Interval operator/(Interval a, const Interval& b);

std::ostream& operator<<(std::ostream& os, const Interval& x);

namespace rounding {
double next_up(double x);
double next_down(double x);
double add_down(double a, double b);
double add_up(double a, double b);
double sub_down(double a, double b);
double sub_up(double a, double b);
double mul_down(double a, double b);
double mul_up(double a, double b);
double div_down(double a, double b);
double div_up(double a, double b);
}  // namespace rounding

Interval abs(const Interval& x);
Interval min(const Interval& a, const Interval& b);
Interval max(const Interval& a, const Interval& b);
Interval sqr(const Interval& x);
Interval sqrt(const Interval& x);
Interval exp(const Interval& x);
Interval log(const Interval& x);
// base must be nonnegative; exponent may be any interval.
Interval pow(const Interval& base, const Interval& exponent);
Interval atan(const Interval& x);
// Valid only when x lies strictly inside (-pi/2, pi/2).
Interval tan(const Interval& x);
// Valid only when x lies strictly inside (0, pi).
Interval cot(const Interval& x);
Interval floor(const Interval& x);
Interval pi();
Interval log3();

// Intersection with [lo, hi]; throws if empty.
Interval clamp(const Interval& x, double lo, double hi);

}  // namespace bilip
