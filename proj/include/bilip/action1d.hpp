#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "bilip/freegroup.hpp"
#include "bilip/real.hpp"

namespace bilip::action {

enum class Space { interval, circle };

std::string to_string(Space s);
Space parse_space(const std::string& text);

// Points are Reals: exact rationals where the map family permits, certified
// enclosures otherwise. Circle points are canonicalized to [0,1) (an
// enclosure may poke past 1 when it straddles the basepoint).
using Point = Real;

struct PLMap {
  // Strictly increasing in x, from (0,0) to (1,1) or from (0,1) to (1,0).
  std::vector<std::pair<Rational, Rational>> breakpoints;
};
struct PowerMap {
  Rational alpha;  // p -> p^alpha, alpha > 0
};
struct MobiusMap {
  Rational lambda;  // p -> lambda p / (1 + (lambda - 1) p), lambda > 0
};
struct RotationMap {
  Rational theta;  // p -> p + theta mod 1, theta in [0, 1)
};
struct CircleMobiusMap {
  Rational time;  // time-t map of the hyperbolic flow tan(pi p) -> e^t tan(pi p)
};

// Closed-form homeomorphism of [0,1] or of the circle R/Z.
class GenMap {
 public:
  using Kind = std::variant<PLMap, PowerMap, MobiusMap, RotationMap, CircleMobiusMap>;

  static GenMap pl(std::vector<std::pair<Rational, Rational>> breakpoints);
  static GenMap power(Rational alpha);
  static GenMap mobius(Rational lambda);
  static GenMap rotation(Rational theta);
  static GenMap circle_mobius(Rational time);
  static GenMap identity() { return pl({{Rational(0), Rational(0)}, {Rational(1), Rational(1)}}); }

  const Kind& kind() const { return kind_; }
  std::string type_name() const;
  bool orientation_preserving() const;
  bool acts_on(Space s) const;

  GenMap inverse() const;
  // Same-family composition (this after other) when exactly representable.
  std::optional<GenMap> compose_same_family(const GenMap& other) const;

  Point apply(const Point& p, Space space) const;

  // Breakpoints of PL maps, empty otherwise.
  std::vector<Rational> breakpoints_x() const;
  std::string describe() const;

 private:
  explicit GenMap(Kind k);
  void prepare();

  Kind kind_;
  // PL piece coefficients y = intercept + slope * x per piece.
  std::vector<Rational> slopes_;
  std::vector<Rational> intercepts_;
  std::vector<Interval> slope_enc_;
  std::vector<Interval> intercept_enc_;
  Interval param_enc_;  // alpha, lambda, theta or e^t as an enclosure
};

Point eval_gen(const GenMap& g, const Point& p, Space space);
Point eval_gen_inverse(const GenMap& g, const Point& p, Space space);

// Assignment of generator maps to F_inf indices 0..m-1 acting on one space.
class ActionSpec {
 public:
  ActionSpec(Space space, std::vector<GenMap> generators);

  Space space() const { return space_; }
  std::uint32_t generator_count() const { return static_cast<std::uint32_t>(generators_.size()); }
  const GenMap& generator(std::uint32_t i) const;
  const GenMap& generator_inverse(std::uint32_t i) const;
  bool orientation_preserving(std::uint32_t i) const { return generator(i).orientation_preserving(); }
  bool all_orientation_preserving() const;
  const std::vector<GenMap>& generators() const { return generators_; }

  // Applies x_index^{sign} for sign = +1 or -1.
  Point step(std::uint32_t index, int sign, const Point& p) const;

  std::string describe() const;

 private:
  Space space_;
  std::vector<GenMap> generators_;
  std::vector<GenMap> inverses_;
};

// rho(w)(p), composing right to left.
Point eval_word(const ActionSpec& a, const freegroup::InfWord& w, const Point& p);

// Standard metric: |p - q| on [0,1], arc distance min(|p-q|, 1-|p-q|) on R/Z.
Real base_metric(Space space, const Point& p, const Point& q);

// Interval Mobius map e -> e / (e + (1 - e)/lambda) at a point e in [0,1];
// lambda occurs once, so an interval lambda gives a tight enclosure.
Interval mobius_unit(double e, const Interval& lambda);
// Circle Mobius lift at e in [0,1) with stretch E = e^t: increasing in e and
// in E, with values in [0,1).
Interval circle_mobius_unit(const Interval& e, const Interval& stretch);

// Validates p in [0,1] (interval) and canonicalizes circle points.
Point canonical_point(Space space, const Point& p);

}  // namespace bilip::action
