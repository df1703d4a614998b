#include "bilip/real.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace bilip {

Rational make_rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  if (const auto slash = text.find('/'); slash != std::string::npos) {
    Rational q(mpz_class(text.substr(0, slash)), mpz_class(text.substr(slash + 1)));
    if (q.get_den() == 0) throw std::invalid_argument("rational with zero denominator: " + text);
    q.canonicalize();
    return q;
  }
  // Decimal literal: sign, digits, optional fraction, optional exponent.
  std::size_t i = 0;
  bool negative = false;
  if (text[i] == '+' || text[i] == '-') negative = text[i++] == '-';
  std::string digits;
  long scale = 0;
  bool seen_digit = false;
  for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
    digits += text[i];
    seen_digit = true;
  }
  if (i < text.size() && text[i] == '.') {
    for (++i; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
      digits += text[i];
      --scale;
      seen_digit = true;
    }
  }
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    std::size_t used = 0;
    long e = 0;
    try {
      e = std::stol(text.substr(i), &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed exponent in: " + text);
    }
    scale += e;
    i += used;
  }
  if (!seen_digit || i != text.size()) throw std::invalid_argument("malformed rational literal: " + text);
  mpz_class num(digits);
  mpz_class den(1);
  mpz_class ten(10);
  if (scale > 0) {
    mpz_pow_ui(den.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(scale));
    num *= den;
    den = 1;
  } else if (scale < 0) {
    mpz_pow_ui(den.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(-scale));
  }
  Rational q(negative ? mpz_class(-num) : num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Interval enclose(const Rational& q) {
  const double d = q.get_d();  // truncates toward zero
  if (cmp(q, d) == 0) return Interval(d);
  // Keep the sign of q when d underflows toward zero.
  const int sign = sgn(q);
  return {sign > 0 ? std::max(0.0, rounding::next_down(d)) : rounding::next_down(d),
          sign < 0 ? std::min(0.0, rounding::next_up(d)) : rounding::next_up(d)};
}

Rational exact_rational(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite double has no rational value");
  Rational q(x);  // mpq_set_d is exact
  return q;
}

Interval Real::enclosure() const {
  if (const auto* q = std::get_if<Rational>(&value_)) return enclose(*q);
  return std::get<Interval>(value_);
}

Real Real::normalized() const {
  if (const auto* x = std::get_if<Interval>(&value_); x && x->is_point() && std::isfinite(x->lo())) {
    return Real(exact_rational(x->lo()));
  }
  return *this;
}

Real operator+(const Real& a, const Real& b) {
  if (a.is_exact() && b.is_exact()) return Real(Rational(a.exact() + b.exact()));
  return Real(a.enclosure() + b.enclosure());
}

Real operator-(const Real& a, const Real& b) {
  if (a.is_exact() && b.is_exact()) return Real(Rational(a.exact() - b.exact()));
  return Real(a.enclosure() - b.enclosure());
}

Real operator*(const Real& a, const Real& b) {
  if (a.is_exact() && b.is_exact()) return Real(Rational(a.exact() * b.exact()));
  return Real(a.enclosure() * b.enclosure());
}

Real operator/(const Real& a, const Real& b) {
  if (a.is_exact() && b.is_exact()) {
    if (b.exact() == 0) throw std::domain_error("division by exact zero");
    return Real(Rational(a.exact() / b.exact()));
  }
  return Real(a.enclosure() / b.enclosure());
}

Real Real::operator-() const {
  if (is_exact()) return Real(Rational(-exact()));
  return Real(-enclosure());
}

bool operator==(const Real& a, const Real& b) {
  if (a.is_exact() && b.is_exact()) return a.exact() == b.exact();
  if (a.is_exact() || b.is_exact()) return false;
  return a.enclosure() == b.enclosure();
}

std::string Real::to_string() const {
  if (is_exact()) return exact().get_str();
  std::ostringstream os;
  os << enclosure();
  return os.str();
}

Real abs(const Real& x) {
  if (x.is_exact()) return Real(Rational(::abs(x.exact())));
  return Real(abs(x.enclosure()));
}

Real min(const Real& a, const Real& b) {
  if (a.is_exact() && b.is_exact()) return a.exact() <= b.exact() ? a : b;
  return Real(min(a.enclosure(), b.enclosure()));
}

Real frac_shift(const Real& x) {
  if (x.is_exact()) {
    const Rational& q = x.exact();
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return Real(Rational(q - f));
  }
  const Interval e = x.enclosure();
  const double k = std::floor(e.lo());
  return Real(Interval(std::max(0.0, rounding::sub_down(e.lo(), k)), rounding::sub_up(e.hi(), k)));
}

}  // namespace bilip
