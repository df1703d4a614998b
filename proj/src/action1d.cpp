#include "bilip/action1d.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace bilip::action {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Rational frac(const Rational& q) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(q - f);
}

Rational rational_pow(const Rational& base, unsigned long e) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
  Rational q(num, den);
  q.canonicalize();
  return q;
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

// Arc length of the tent function x -> dist(x, Z) at a point.
Interval tent_at(double x) {
  const double k = std::floor(x);
  const Interval f = Interval(x) - Interval(k);
  return min(f, Interval(1.0) - f);
}

}  // namespace

std::string to_string(Space s) { return s == Space::interval ? "interval" : "circle"; }

Space parse_space(const std::string& text) {
  if (text == "interval") return Space::interval;
  if (text == "circle") return Space::circle;
  throw std::invalid_argument("unknown space '" + text + "' (expected interval or circle)");
}

// --- GenMap -----------------------------------------------------------------

GenMap::GenMap(Kind k) : kind_(std::move(k)) { prepare(); }

GenMap GenMap::pl(std::vector<std::pair<Rational, Rational>> breakpoints) {
  if (breakpoints.size() < 2) throw std::invalid_argument("PL map needs at least two breakpoints");
  for (auto& [x, y] : breakpoints) {
    x.canonicalize();
    y.canonicalize();
  }
  if (breakpoints.front().first != 0 || breakpoints.back().first != 1) {
    throw std::invalid_argument("PL breakpoints must run from x = 0 to x = 1");
  }
  const bool increasing = breakpoints.front().second == 0 && breakpoints.back().second == 1;
  const bool decreasing = breakpoints.front().second == 1 && breakpoints.back().second == 0;
  if (!increasing && !decreasing) throw std::invalid_argument("PL map must send {0,1} onto {0,1}");
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    if (!(breakpoints[i].first > breakpoints[i - 1].first)) {
      throw std::invalid_argument("PL breakpoints must be strictly increasing in x");
    }
    const bool up = breakpoints[i].second > breakpoints[i - 1].second;
    const bool down = breakpoints[i].second < breakpoints[i - 1].second;
    if ((increasing && !up) || (decreasing && !down)) throw std::invalid_argument("PL map must be strictly monotone");
  }
  return GenMap(PLMap{std::move(breakpoints)});
}

GenMap GenMap::power(Rational alpha) {
  alpha.canonicalize();
  if (alpha <= 0) throw std::invalid_argument("power exponent must be positive");
  return GenMap(PowerMap{std::move(alpha)});
}

GenMap GenMap::mobius(Rational lambda) {
  lambda.canonicalize();
  if (lambda <= 0) throw std::invalid_argument("mobius parameter lambda must be positive");
  return GenMap(MobiusMap{std::move(lambda)});
}

GenMap GenMap::rotation(Rational theta) {
  theta.canonicalize();
  return GenMap(RotationMap{frac(theta)});
}

GenMap GenMap::circle_mobius(Rational time) {
  time.canonicalize();
  return GenMap(CircleMobiusMap{std::move(time)});
}

void GenMap::prepare() {
  std::visit(Overloaded{
                 [&](const PLMap& m) {
                   for (std::size_t i = 0; i + 1 < m.breakpoints.size(); ++i) {
                     const auto& [x0, y0] = m.breakpoints[i];
                     const auto& [x1, y1] = m.breakpoints[i + 1];
                     Rational slope = (y1 - y0) / (x1 - x0);
                     Rational icpt = y0 - slope * x0;
                     slope_enc_.push_back(enclose(slope));
                     intercept_enc_.push_back(enclose(icpt));
                     slopes_.push_back(std::move(slope));
                     intercepts_.push_back(std::move(icpt));
                   }
                 },
                 [&](const PowerMap& m) { param_enc_ = enclose(m.alpha); },
                 [&](const MobiusMap& m) { param_enc_ = enclose(m.lambda); },
                 [&](const RotationMap& m) { param_enc_ = enclose(m.theta); },
                 [&](const CircleMobiusMap& m) { param_enc_ = exp(enclose(m.time)); },
             },
             kind_);
}

std::string GenMap::type_name() const {
  return std::visit(Overloaded{
                        [](const PLMap&) { return std::string("pl"); },
                        [](const PowerMap&) { return std::string("power"); },
                        [](const MobiusMap&) { return std::string("mobius"); },
                        [](const RotationMap&) { return std::string("rotation"); },
                        [](const CircleMobiusMap&) { return std::string("circle_mobius"); },
                    },
                    kind_);
}

bool GenMap::orientation_preserving() const {
  if (const auto* m = std::get_if<PLMap>(&kind_)) return m->breakpoints.front().second == 0;
  return true;
}

bool GenMap::acts_on(Space s) const {
  if (std::holds_alternative<RotationMap>(kind_) || std::holds_alternative<CircleMobiusMap>(kind_)) {
    return s == Space::circle;
  }
  return s == Space::interval || orientation_preserving();
}

GenMap GenMap::inverse() const {
  return std::visit(Overloaded{
                        [](const PLMap& m) {
                          std::vector<std::pair<Rational, Rational>> inv;
                          inv.reserve(m.breakpoints.size());
                          for (const auto& [x, y] : m.breakpoints) inv.emplace_back(y, x);
                          std::sort(inv.begin(), inv.end(),
                                    [](const auto& a, const auto& b) { return a.first < b.first; });
                          return GenMap::pl(std::move(inv));
                        },
                        [](const PowerMap& m) { return GenMap::power(Rational(1 / m.alpha)); },
                        [](const MobiusMap& m) { return GenMap::mobius(Rational(1 / m.lambda)); },
                        [](const RotationMap& m) { return GenMap::rotation(Rational(-m.theta)); },
                        [](const CircleMobiusMap& m) { return GenMap::circle_mobius(Rational(-m.time)); },
                    },
                    kind_);
}

std::optional<GenMap> GenMap::compose_same_family(const GenMap& other) const {
  if (kind_.index() != other.kind_.index()) return std::nullopt;
  return std::visit(
      Overloaded{
          [&](const PLMap& m) -> std::optional<GenMap> {
            const auto& inner = std::get<PLMap>(other.kind_);
            // Breakpoints of this∘other: other's x-breakpoints and the
            // preimages under `other` of this map's x-breakpoints.
            std::vector<Rational> xs;
            for (const auto& bp : inner.breakpoints) xs.push_back(bp.first);
            const GenMap inner_inv = other.inverse();
            for (const auto& bp : m.breakpoints) xs.push_back(inner_inv.apply(Point(bp.first), Space::interval).exact());
            std::sort(xs.begin(), xs.end());
            xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
            std::vector<std::pair<Rational, Rational>> out;
            for (const Rational& x : xs) {
              out.emplace_back(x, apply(other.apply(Point(x), Space::interval), Space::interval).exact());
            }
            // Drop collinear interior points.
            std::vector<std::pair<Rational, Rational>> pruned{out.front()};
            for (std::size_t i = 1; i + 1 < out.size(); ++i) {
              const auto& a = pruned.back();
              const auto& b = out[i];
              const auto& c = out[i + 1];
              if ((b.second - a.second) * (c.first - b.first) != (c.second - b.second) * (b.first - a.first)) {
                pruned.push_back(b);
              }
            }
            pruned.push_back(out.back());
            return GenMap::pl(std::move(pruned));
          },
          [&](const PowerMap& m) -> std::optional<GenMap> {
            // (p^b)^a = p^{ab}
            return GenMap::power(Rational(m.alpha * std::get<PowerMap>(other.kind_).alpha));
          },
          [&](const MobiusMap& m) -> std::optional<GenMap> {
            return GenMap::mobius(Rational(m.lambda * std::get<MobiusMap>(other.kind_).lambda));
          },
          [&](const RotationMap& m) -> std::optional<GenMap> {
            return GenMap::rotation(Rational(m.theta + std::get<RotationMap>(other.kind_).theta));
          },
          [&](const CircleMobiusMap& m) -> std::optional<GenMap> {
            return GenMap::circle_mobius(Rational(m.time + std::get<CircleMobiusMap>(other.kind_).time));
          },
      },
      kind_);
}

std::vector<Rational> GenMap::breakpoints_x() const {
  std::vector<Rational> xs;
  if (const auto* m = std::get_if<PLMap>(&kind_)) {
    for (const auto& bp : m->breakpoints) xs.push_back(bp.first);
  }
  return xs;
}

std::string GenMap::describe() const {
  std::ostringstream os;
  os << type_name() << '{';
  std::visit(Overloaded{
                 [&](const PLMap& m) {
                   for (std::size_t i = 0; i < m.breakpoints.size(); ++i) {
                     if (i) os << ' ';
                     os << '(' << m.breakpoints[i].first << ',' << m.breakpoints[i].second << ')';
                   }
                 },
                 [&](const PowerMap& m) { os << "alpha=" << m.alpha; },
                 [&](const MobiusMap& m) { os << "lambda=" << m.lambda; },
                 [&](const RotationMap& m) { os << "theta=" << m.theta; },
                 [&](const CircleMobiusMap& m) { os << "t=" << m.time; },
             },
             kind_);
  os << '}';
  return os.str();
}

namespace {

// Evaluation on a unit coordinate e in [0,1] (interval maps) or [0,1)
// (circle lifts). Exact inputs give exact outputs whenever the family allows.
struct UnitEvaluator {
  const GenMap::Kind& kind;
  const std::vector<Rational>& slopes;
  const std::vector<Rational>& intercepts;
  const std::vector<Interval>& slope_enc;
  const std::vector<Interval>& intercept_enc;
  const Interval& param;

  std::size_t piece_of(const PLMap& m, const Rational& x) const {
    std::size_t i = 0;
    while (i + 2 < m.breakpoints.size() && x >= m.breakpoints[i + 1].first) ++i;
    return i;
  }
  std::size_t piece_of(const PLMap& m, double x) const {
    std::size_t i = 0;
    while (i + 2 < m.breakpoints.size() && cmp(m.breakpoints[i + 1].first, x) <= 0) ++i;
    return i;
  }

  Real exact(const Rational& e) const {
    return std::visit(
        Overloaded{
            [&](const PLMap& m) -> Real {
              const std::size_t i = piece_of(m, e);
              return Real(Rational(intercepts[i] + slopes[i] * e));
            },
            [&](const PowerMap& m) -> Real {
              if (e == 0 || e == 1) return Real(e);
              // Exact powers only while the result stays small.
              if (is_integer(m.alpha) && m.alpha <= 64 &&
                  (mpz_sizeinbase(e.get_num_mpz_t(), 2) + mpz_sizeinbase(e.get_den_mpz_t(), 2)) * m.alpha.get_num().get_ui() <= 4096) {
                return Real(rational_pow(e, m.alpha.get_num().get_ui()));
              }
              return Real(pow(enclose(e), param));
            },
            [&](const MobiusMap& m) -> Real {
              return Real(Rational(m.lambda * e / (1 + (m.lambda - 1) * e)));
            },
            [&](const RotationMap& m) -> Real { return Real(Rational(e + m.theta)); },
            [&](const CircleMobiusMap& m) -> Real {
              if (e == 0 || e * 2 == 1 || m.time == 0) return Real(e);
              return Real(point(0.0, &e));
            },
        },
        kind);
  }

  // Enclosure of the image of a double point (exact input value x).
  Interval point(double x, const Rational* exact_x = nullptr) const {
    return std::visit(
        Overloaded{
            [&](const PLMap& m) -> Interval {
              const std::size_t i = piece_of(m, x);
              return intercept_enc[i] + slope_enc[i] * Interval(x);
            },
            [&](const PowerMap&) -> Interval { return pow(Interval(x), param); },
            [&](const MobiusMap&) -> Interval {
              return mobius_unit(x, param);
            },
            [&](const RotationMap&) -> Interval { return Interval(x) + param; },
            [&](const CircleMobiusMap&) -> Interval {
              return circle_mobius_unit(exact_x ? enclose(*exact_x) : Interval(x), param);
            },
        },
        kind);
  }
};

}  // namespace

Interval mobius_unit(double x, const Interval& lambda) {
  if (x == 0) return Interval(0.0);
  const Interval e(x);
  return e / (e + (Interval(1.0) - e) / lambda);
}

Interval circle_mobius_unit(const Interval& e, const Interval& stretch) {
  if (e.hi() <= 0.25) {
    if (e.hi() == 0) return Interval(0.0);
    return atan(stretch * tan(pi() * e)) / pi();
  }
  if (e.lo() >= 0.75) {
    return Interval(1.0) + atan(stretch * tan(pi() * (e - Interval(1.0)))) / pi();
  }
  if (e.lo() > 0.25 - 1e-9 && e.hi() < 0.75 + 1e-9) {
    return Interval(0.5) - atan(cot(pi() * e) / stretch) / pi();
  }
  throw std::logic_error("circle mobius: enclosure spans evaluation regions");
}

Point GenMap::apply(const Point& p, Space space) const {
  const UnitEvaluator ev{kind_, slopes_, intercepts_, slope_enc_, intercept_enc_, param_enc_};
  if (space == Space::interval) {
    if (!acts_on(Space::interval)) throw std::invalid_argument(type_name() + " does not act on the interval");
    if (p.is_exact()) {
      const Rational& e = p.exact();
      if (e < 0 || e > 1) throw std::domain_error("point outside [0,1]: " + e.get_str());
      return ev.exact(e);
    }
    const Interval x = clamp(p.enclosure(), 0.0, 1.0);
    const Interval a = ev.point(x.lo());
    const Interval b = ev.point(x.hi());
    return Real(clamp(Interval::hull(a, b), 0.0, 1.0));
  }
  if (!acts_on(Space::circle)) throw std::invalid_argument(type_name() + " does not act on the circle");
  if (p.is_exact()) {
    const Rational e = frac(p.exact());
    const Real image = ev.exact(e);
    return frac_shift(image);
  }
  // Lift: F(x) = floor(x) + f(frac x), increasing.
  const Interval x = p.enclosure();
  auto lift = [&](double v) {
    const double k = std::floor(v);
    const double e = v - k;  // exact for |v| < 2
    return Interval(k) + ev.point(e);
  };
  const Interval a = lift(x.lo());
  const Interval b = lift(x.hi());
  return frac_shift(Real(Interval(a.lo(), std::max(a.hi(), b.hi()))));
}

Point eval_gen(const GenMap& g, const Point& p, Space space) { return g.apply(p, space); }

Point eval_gen_inverse(const GenMap& g, const Point& p, Space space) { return g.inverse().apply(p, space); }

// --- ActionSpec --------------------------------------------------------------

ActionSpec::ActionSpec(Space space, std::vector<GenMap> generators) : space_(space), generators_(std::move(generators)) {
  if (generators_.empty()) throw std::invalid_argument("action needs at least one generator");
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (!generators_[i].acts_on(space_)) {
      throw std::invalid_argument("generator " + std::to_string(i) + " (" + generators_[i].type_name() +
                                  ") does not act on the " + to_string(space_));
    }
    inverses_.push_back(generators_[i].inverse());
  }
}

const GenMap& ActionSpec::generator(std::uint32_t i) const {
  if (i >= generators_.size()) throw std::out_of_range("unassigned generator index x" + std::to_string(i));
  return generators_[i];
}

const GenMap& ActionSpec::generator_inverse(std::uint32_t i) const {
  if (i >= inverses_.size()) throw std::out_of_range("unassigned generator index x" + std::to_string(i));
  return inverses_[i];
}

bool ActionSpec::all_orientation_preserving() const {
  return std::all_of(generators_.begin(), generators_.end(), [](const GenMap& g) { return g.orientation_preserving(); });
}

Point ActionSpec::step(std::uint32_t index, int sign, const Point& p) const {
  return (sign > 0 ? generator(index) : generator_inverse(index)).apply(p, space_);
}

std::string ActionSpec::describe() const {
  std::ostringstream os;
  os << to_string(space_) << ':';
  for (std::size_t i = 0; i < generators_.size(); ++i) os << " x" << i << '=' << generators_[i].describe();
  return os.str();
}

Point eval_word(const ActionSpec& a, const freegroup::InfWord& w, const Point& p) {
  for (const auto& s : w.syllables()) a.generator(s.index);  // validate before evaluating
  Point cur = canonical_point(a.space(), p);
  const auto& syl = w.syllables();
  for (auto it = syl.rbegin(); it != syl.rend(); ++it) {
    const int sign = it->exponent > 0 ? 1 : -1;
    for (std::int32_t k = 0; k < std::abs(it->exponent); ++k) cur = a.step(it->index, sign, cur);
  }
  return cur;
}

Point canonical_point(Space space, const Point& p) {
  if (space == Space::interval) {
    if (p.is_exact()) {
      if (p.exact() < 0 || p.exact() > 1) throw std::domain_error("point outside [0,1]: " + p.exact().get_str());
      return p;
    }
    return Real(clamp(p.enclosure(), 0.0, 1.0));
  }
  return frac_shift(p);
}

Real base_metric(Space space, const Point& p, const Point& q) {
  if (space == Space::interval) return abs(p - q);
  if (p.is_exact() && q.is_exact()) {
    const Rational d = frac(Rational(p.exact() - q.exact()));
    return Real(Rational(d <= Rational(1, 2) ? d : Rational(1 - d)));
  }
  const Interval d = q.enclosure() - p.enclosure();
  if (d.width() >= 1.0) return Real(Interval(0.0, 0.5));
  const double k = std::floor(d.lo());
  const double a = rounding::sub_down(d.lo(), k);
  const double b = rounding::sub_up(d.hi(), k);
  // Tent function on [a, b] within [0, 2].
  const Interval ta = tent_at(a);
  const Interval tb = tent_at(b);
  double lo = std::min(ta.lo(), tb.lo());
  double hi = std::max(ta.hi(), tb.hi());
  if (a <= 1.0 && b >= 1.0) lo = 0.0;
  if ((a <= 0.5 && b >= 0.5) || (a <= 1.5 && b >= 1.5)) hi = 0.5;
  return Real(Interval(std::max(0.0, lo), std::min(0.5, hi)));
}

}  // namespace bilip::action
