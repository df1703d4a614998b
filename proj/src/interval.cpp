#include "bilip/interval.hpp"

#include <algorithm>
#include <cfloat>
#include <ostream>

namespace bilip {

namespace rounding {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
// Below this magnitude fma residuals may be inexact (subnormal range).
constexpr double kTiny = 0x1p-960;

double widen_down(double r, int ulps) {
  for (int i = 0; i < ulps; ++i) r = std::nextafter(r, -kInf);
  return r;
}
double widen_up(double r, int ulps) {
  for (int i = 0; i < ulps; ++i) r = std::nextafter(r, kInf);
  return r;
}
}  // namespace

double next_up(double x) { return std::nextafter(x, kInf); }
double next_down(double x) { return std::nextafter(x, -kInf); }

// TwoSum: s + err == a + b exactly.
double add_down(double a, double b) {
  const double s = a + b;
  if (!std::isfinite(s)) return std::isnan(s) ? s : (s > 0 ? DBL_MAX : s);
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  return err < 0 ? next_down(s) : s;
}

double add_up(double a, double b) {
  const double s = a + b;
  if (!std::isfinite(s)) return std::isnan(s) ? s : (s < 0 ? -DBL_MAX : s);
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  return err > 0 ? next_up(s) : s;
}

double sub_down(double a, double b) { return add_down(a, -b); }
double sub_up(double a, double b) { return add_up(a, -b); }

double mul_down(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  const double p = a * b;
  if (!std::isfinite(p)) return p > 0 ? DBL_MAX : p;
  if (std::fabs(p) < kTiny) return next_down(p);
  const double err = std::fma(a, b, -p);
  return err < 0 ? next_down(p) : p;
}

double mul_up(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  const double p = a * b;
  if (!std::isfinite(p)) return p < 0 ? -DBL_MAX : p;
  if (std::fabs(p) < kTiny) return next_up(p);
  const double err = std::fma(a, b, -p);
  return err > 0 ? next_up(p) : p;
}

// For q = a/b the residual r = a - q*b is exact; sign(r/b) gives the
// direction of the rounding error.
double div_down(double a, double b) {
  if (a == 0.0) return 0.0;
  const double q = a / b;
  if (!std::isfinite(q)) return q > 0 ? DBL_MAX : q;
  if (std::fabs(q) < kTiny || std::fabs(a) < kTiny) return next_down(q);
  const double r = std::fma(-q, b, a);
  const bool above = (r < 0) != (b < 0);  // true value below q
  return (r != 0 && above) ? next_down(q) : q;
}

double div_up(double a, double b) {
  if (a == 0.0) return 0.0;
  const double q = a / b;
  if (!std::isfinite(q)) return q < 0 ? -DBL_MAX : q;
  if (std::fabs(q) < kTiny || std::fabs(a) < kTiny) return next_up(q);
  const double r = std::fma(-q, b, a);
  const bool below = (r > 0) != (b < 0);  // true value above q
  return (r != 0 && below) ? next_up(q) : q;
}

double libm_down(double r) { return widen_down(r, 2); }
double libm_up(double r) { return widen_up(r, 2); }

}  // namespace rounding

using namespace rounding;

Interval& Interval::operator+=(const Interval& o) {
  *this = Interval(add_down(lo_, o.lo_), add_up(hi_, o.hi_));
  return *this;
}

Interval& Interval::operator-=(const Interval& o) {
  *this = Interval(sub_down(lo_, o.hi_), sub_up(hi_, o.lo_));
  return *this;
}

Interval& Interval::operator*=(const Interval& o) {
  const double a = lo_, b = hi_, c = o.lo_, d = o.hi_;
  if (a >= 0 && c >= 0) {
    *this = Interval(mul_down(a, c), mul_up(b, d));
    return *this;
  }
  const double lo = std::min({mul_down(a, c), mul_down(a, d), mul_down(b, c), mul_down(b, d)});
  const double hi = std::max({mul_up(a, c), mul_up(a, d), mul_up(b, c), mul_up(b, d)});
  *this = Interval(lo, hi);
  return *this;
}

Interval& Interval::operator/=(const Interval& o) {
  if (o.lo_ <= 0 && o.hi_ >= 0) throw std::domain_error("Interval: division by interval containing zero");
  const double a = lo_, b = hi_, c = o.lo_, d = o.hi_;
  const double lo = std::min({div_down(a, c), div_down(a, d), div_down(b, c), div_down(b, d)});
  const double hi = std::max({div_up(a, c), div_up(a, d), div_up(b, c), div_up(b, d)});
  *this = Interval(lo, hi);
  return *this;
}

Interval operator+(Interval a, const Interval& b) { return a += b; }
Interval operator-(Interval a, const Interval& b) { return a -= b; }
Interval operator*(Interval a, const Interval& b) { return a *= b; }
Interval operator/(Interval a, const Interval& b) { return a /= b; }

std::ostream& operator<<(std::ostream& os, const Interval& x) {
  const auto prec = os.precision(17);
  os << '[' << x.lo() << ", " << x.hi() << ']';
  os.precision(prec);
  return os;
}

Interval abs(const Interval& x) {
  if (x.lo() >= 0) return x;
  if (x.hi() <= 0) return -x;
  return {0.0, std::max(-x.lo(), x.hi())};
}

Interval min(const Interval& a, const Interval& b) {
  return {std::min(a.lo(), b.lo()), std::min(a.hi(), b.hi())};
}

Interval max(const Interval& a, const Interval& b) {
  return {std::max(a.lo(), b.lo()), std::max(a.hi(), b.hi())};
}

Interval sqr(const Interval& x) {
  const Interval m = abs(x);
  return {mul_down(m.lo(), m.lo()), mul_up(m.hi(), m.hi())};
}

namespace {
double sqrt_down(double x) {
  if (x <= 0) return 0.0;
  const double r = std::sqrt(x);
  const double err = std::fma(-r, r, x);
  return err < 0 ? next_down(r) : r;
}
double sqrt_up(double x) {
  if (x <= 0) return 0.0;
  const double r = std::sqrt(x);
  const double err = std::fma(-r, r, x);
  return err > 0 ? next_up(r) : r;
}
}  // namespace

Interval sqrt(const Interval& x) {
  if (x.hi() < 0) throw std::domain_error("sqrt of negative interval");
  return {sqrt_down(std::max(0.0, x.lo())), sqrt_up(x.hi())};
}

Interval exp(const Interval& x) {
  const double lo = x.lo() == 0 ? 1.0 : std::max(0.0, libm_down(std::exp(x.lo())));
  const double hi = x.hi() == 0 ? 1.0 : libm_up(std::exp(x.hi()));
  return {lo, hi};
}

Interval log(const Interval& x) {
  if (x.lo() <= 0) throw std::domain_error("log of nonpositive interval");
  const double lo = x.lo() == 1 ? 0.0 : libm_down(std::log(x.lo()));
  const double hi = x.hi() == 1 ? 0.0 : libm_up(std::log(x.hi()));
  return {lo, hi};
}

namespace {
// Endpoint evaluation of b^e with the exact special cases that matter for
// maps fixing 0 and 1.
double pow_down(double b, double e) {
  if (b == 0) return e > 0 ? 0.0 : (e == 0 ? 1.0 : DBL_MAX);
  if (b == 1 || e == 0) return 1.0;
  if (e == 1) return b;
  return std::max(0.0, libm_down(std::pow(b, e)));
}
double pow_up(double b, double e) {
  if (b == 0) return e > 0 ? 0.0 : (e == 0 ? 1.0 : std::numeric_limits<double>::infinity());
  if (b == 1 || e == 0) return 1.0;
  if (e == 1) return b;
  return libm_up(std::pow(b, e));
}
}  // namespace

Interval pow(const Interval& base, const Interval& exponent) {
  if (base.lo() < 0) throw std::domain_error("pow: negative base");
  // b^e is monotone in each argument on the positive quadrant, so the
  // extremes are attained at corners.
  const double bs[2] = {base.lo(), base.hi()};
  const double es[2] = {exponent.lo(), exponent.hi()};
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (double b : bs) {
    for (double e : es) {
      lo = std::min(lo, pow_down(b, e));
      hi = std::max(hi, pow_up(b, e));
    }
  }
  return {lo, hi};
}

Interval atan(const Interval& x) {
  const double lo = x.lo() == 0 ? 0.0 : libm_down(std::atan(x.lo()));
  const double hi = x.hi() == 0 ? 0.0 : libm_up(std::atan(x.hi()));
  return {lo, hi};
}

Interval tan(const Interval& x) {
  const Interval half_pi = pi() / Interval(2.0);
  if (!(x.lo() > -half_pi.lo() && x.hi() < half_pi.lo())) {
    throw std::domain_error("tan: interval not inside (-pi/2, pi/2)");
  }
  const double lo = x.lo() == 0 ? 0.0 : libm_down(std::tan(x.lo()));
  const double hi = x.hi() == 0 ? 0.0 : libm_up(std::tan(x.hi()));
  return {lo, hi};
}

Interval cot(const Interval& x) {
  if (!(x.lo() > 0 && x.hi() < pi().lo())) throw std::domain_error("cot: interval not inside (0, pi)");
  // cot is decreasing on (0, pi); cot(y) = cos(y)/sin(y).
  const double at_hi = std::cos(x.hi()) / std::sin(x.hi());
  const double at_lo = std::cos(x.lo()) / std::sin(x.lo());
  // cos, sin and the quotient each contribute up to one ulp.
  return {widen_down(at_hi, 4), widen_up(at_lo, 4)};
}

Interval floor(const Interval& x) { return {std::floor(x.lo()), std::floor(x.hi())}; }

Interval pi() {
  // M_PI is the double nearest pi; pi lies strictly between its neighbours.
  static const Interval value(next_down(M_PI), next_up(M_PI));
  return value;
}

Interval log3() {
  static const Interval value(libm_down(std::log(3.0)), libm_up(std::log(3.0)));
  return value;
}

Interval clamp(const Interval& x, double lo, double hi) {
  const double a = std::max(x.lo(), lo);
  const double b = std::min(x.hi(), hi);
  if (a > b) throw std::domain_error("clamp: empty intersection");
  return {a, b};
}

}  // namespace bilip
