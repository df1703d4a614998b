#pragma once

#include <gmpxx.h>

#include <string>
#include <variant>

#include "bilip/interval.hpp"

namespace bilip {

using Rational = mpq_class;

Rational make_rational(long num, long den = 1);
// Parses "p/q", an integer, or a finite decimal such as "1.25" or "-3e-2".
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);

// Certified enclosure of a rational by doubles.
Interval enclose(const Rational& q);
// The exact rational value of a double.
Rational exact_rational(double x);

// A real number that is either known exactly (rational) or only through a
// certified enclosure. Arithmetic stays exact while both operands are exact.
class Real {
 public:
  Real() : value_(Rational(0)) {}
  Real(Rational q) : value_(std::move(q)) { std::get<Rational>(value_).canonicalize(); }  // NOLINT: implicit
  Real(Interval x) : value_(x) {}             // NOLINT: implicit
  static Real from_int(long v) { return Real(Rational(v)); }

  bool is_exact() const { return std::holds_alternative<Rational>(value_); }
  const Rational& exact() const { return std::get<Rational>(value_); }
  Interval enclosure() const;
  // An exact rational point interval collapses to its rational.
  Real normalized() const;

  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);
  Real operator-() const;
  Real& operator+=(const Real& b) { return *this = *this + b; }

  friend bool operator==(const Real& a, const Real& b);

  std::string to_string() const;

 private:
  std::variant<Rational, Interval> value_;
};

Real abs(const Real& x);
Real min(const Real& a, const Real& b);
// x - floor(x) for exact values; for enclosures shifts by floor(lo).
Real frac_shift(const Real& x);

}  // namespace bilip
