#include "bilip/smoothing.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace bilip::smoothing {

using freegroup::InfWord;
using freegroup::Syllable;

namespace {

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t c = a + b;
  return c < a ? UINT64_MAX : c;
}

struct BallCounter {
  std::uint32_t bound;
  std::uint32_t radius;
  std::map<std::pair<std::int64_t, std::uint64_t>, std::uint64_t> memo;

  // Words strictly extending a prefix that ends in index `last` (-1: empty)
  // with open cost `cost`.
  std::uint64_t extensions(std::int64_t last, std::uint64_t cost) {
    const auto key = std::make_pair(last, cost);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::uint64_t total = 0;
    for (std::uint32_t j = 0; j < bound; ++j) {
      if (last >= 0 && j == static_cast<std::uint32_t>(last)) continue;
      const std::uint64_t move = last >= 0 ? static_cast<std::uint64_t>(std::abs(static_cast<std::int64_t>(j) - last)) : j;
      for (std::uint64_t mag = 1; cost + move + mag + j <= radius; ++mag) {
        const std::uint64_t sub = sat_add(1, extensions(j, cost + move + mag));
        total = sat_add(total, sat_add(sub, sub));
      }
    }
    memo[key] = total;
    return total;
  }
};

}  // namespace

std::uint64_t ball_size(freegroup::GeneratorCount m, std::uint32_t radius) {
  const std::uint32_t reach = radius >= 1 ? (radius - 1) / 2 + 1 : 0;
  BallCounter c{m ? std::min(*m, reach) : reach, radius, {}};
  return sat_add(1, c.extensions(-1, 0));
}

// --- WeightedBall -------------------------------------------------------------

WeightedBall::WeightedBall(freegroup::GeneratorCount m, std::uint32_t radius, const freegroup::WeightParams& params,
                           std::size_t max_nodes)
    : radius_(radius) {
  const std::uint64_t count = ball_size(m, radius);
  if (count > max_nodes) {
    throw std::length_error("ball of radius " + std::to_string(radius) + " has " + std::to_string(count) +
                            " words, above the cap of " + std::to_string(max_nodes));
  }
  auto entries = freegroup::enumerate_ball(m, radius);
  std::map<InfWord, std::int64_t> position;
  nodes_.reserve(entries.size());
  for (auto& e : entries) {
    Node node{std::move(e.word), e.length, -1, 0, 0};
    if (!node.word.is_identity()) {
      std::vector<Syllable> syl = node.word.syllables();
      Syllable& last = syl.back();
      node.index = last.index;
      node.sign = last.exponent > 0 ? 1 : -1;
      last.exponent -= node.sign;
      if (last.exponent == 0) syl.pop_back();
      const auto it = position.find(InfWord::from_syllables(syl));
      if (it == position.end()) throw std::logic_error("ball is not prefix-closed");
      node.parent = it->second;
    }
    position.emplace(node.word, static_cast<std::int64_t>(nodes_.size()));
    nodes_.push_back(std::move(node));
  }
  shell_count_.assign(radius + 1, 0);
  for (const Node& n : nodes_) ++shell_count_[n.length];
  prefix_end_.assign(radius + 1, 0);
  std::size_t acc = 0;
  for (std::uint32_t r = 0; r <= radius; ++r) {
    acc += shell_count_[r];
    prefix_end_[r] = acc;
  }
  for (std::uint32_t n = 0; n <= radius; ++n) weights_.push_back(params.weight(n));
}

std::size_t WeightedBall::size_upto(std::uint32_t r) const {
  if (r > radius_) throw std::out_of_range("radius beyond the enumerated ball");
  return prefix_end_[r];
}

Interval WeightedBall::partial_sum(std::uint32_t r) const {
  if (r > radius_) throw std::out_of_range("radius beyond the enumerated ball");
  Interval s(0.0);
  for (std::uint32_t n = 0; n <= r; ++n) s += Interval(static_cast<double>(shell_count_[n])) * weights_[n];
  return s;
}

Orbit compute_orbit(const action::ActionSpec& a, const WeightedBall& ball, const Point& p, OrbitMode mode) {
  Point start = action::canonical_point(a.space(), p);
  if (mode == OrbitMode::enclosure) start = Real(start.enclosure());
  Orbit orbit;
  orbit.reserve(ball.size());
  for (const auto& node : ball.nodes()) {
    if (node.parent < 0) {
      orbit.push_back(start);
    } else {
      // rho(h x^e)^{-1} = rho(x)^{-e} rho(h)^{-1}
      orbit.push_back(a.step(node.index, -node.sign, orbit[static_cast<std::size_t>(node.parent)]));
    }
  }
  return orbit;
}

Interval ShellSums::weighted(const WeightedBall& ball, std::uint32_t r) const {
  if (r >= shells.size()) throw std::out_of_range("shell sums do not reach the requested radius");
  Interval s(0.0);
  for (std::uint32_t n = 0; n <= r; ++n) s += ball.weight(n) * shells[n].enclosure();
  return s;
}

bool ShellSums::all_exact() const {
  return std::all_of(shells.begin(), shells.end(), [](const Real& x) { return x.is_exact(); });
}

namespace {

template <class Term>
ShellSums accumulate(const WeightedBall& ball, const Orbit& a, const Orbit& b, Term term) {
  if (a.size() != ball.size() || b.size() != ball.size()) throw std::invalid_argument("orbit size does not match ball");
  ShellSums out;
  out.shells.assign(ball.radius() + 1, Real(Rational(0)));
  if (&a == &b) return out;  // same points: every term vanishes
  const auto& nodes = ball.nodes();
  for (std::size_t k = 0; k < nodes.size(); ++k) out.shells[nodes[k].length] += term(a[k], b[k]);
  return out;
}

Real ccw_arc(const Point& a, const Point& b) {
  if (a.is_exact() && b.is_exact()) return frac_shift(b - a);
  const Interval d = b.enclosure() - a.enclosure();
  const double k = std::floor(d.lo());
  const double lo = rounding::sub_down(d.lo(), k);
  const double hi = rounding::sub_up(d.hi(), k);
  if (hi > 1.0) return Real(Interval(0.0, 1.0));
  return Real(Interval(std::max(0.0, lo), hi));
}

}  // namespace

ShellSums metric_shells(action::Space space, const WeightedBall& ball, const Orbit& a, const Orbit& b) {
  return accumulate(ball, a, b, [space](const Point& x, const Point& y) { return action::base_metric(space, x, y); });
}

ShellSums measure_shells(action::Space space, const WeightedBall& ball, const Orbit& a, const Orbit& b) {
  if (space == action::Space::interval) {
    return accumulate(ball, a, b, [](const Point& x, const Point& y) { return y - x; });
  }
  return accumulate(ball, a, b, ccw_arc);
}

// --- SmoothedMetric ------------------------------------------------------------

SmoothedMetric::SmoothedMetric(action::ActionSpec a, freegroup::WeightParams params, std::uint32_t radius,
                               OrbitMode mode, std::uint32_t extra)
    : action_(std::move(a)),
      params_(std::move(params)),
      radius_(radius),
      mode_(mode),
      ball_(action_.generator_count(), radius + extra, params_) {}

Interval SmoothedMetric::truncated(const Point& p, const Point& q, std::optional<std::uint32_t> r) const {
  return shells(orbit(p), orbit(q)).weighted(ball_, r.value_or(radius_));
}

IntervalValue SmoothedMetric::distance_from_shells(const ShellSums& s) const {
  const Interval d = s.weighted(ball_, radius_);
  return {d.lo(), rounding::add_up(d.hi(), tail().hi())};
}

IntervalValue SmoothedMetric::distance(const Point& p, const Point& q) const {
  return distance_from_shells(shells(orbit(p), orbit(q)));
}

std::vector<std::vector<IntervalValue>> SmoothedMetric::matrix(const std::vector<Point>& points) const {
  const std::size_t n = points.size();
  std::vector<Orbit> orbits(n);
  for (std::size_t i = 0; i < n; ++i) orbits[i] = orbit(points[i]);
  std::vector<std::vector<IntervalValue>> m(n, std::vector<IntervalValue>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      m[i][j] = distance_from_shells(shells(orbits[i], orbits[j]));
      m[j][i] = m[i][j];
    }
  }
  return m;
}

Interval lipschitz_bound(const freegroup::WeightParams& params, const freegroup::InfWord& w) {
  const std::uint64_t len = freegroup::embedded_length(w);
  if (len == 0) return Interval(1.0);
  return exp(params.s() * Interval(static_cast<double>(len)));
}

// --- SmoothedMeasure -----------------------------------------------------------

SmoothedMeasure::SmoothedMeasure(action::ActionSpec a, freegroup::WeightParams params, std::uint32_t radius,
                                 OrbitMode mode, std::uint32_t extra)
    : action_(std::move(a)),
      params_(std::move(params)),
      radius_(radius),
      mode_(mode),
      ball_(action_.generator_count(), radius + extra, params_) {
  if (!action_.all_orientation_preserving()) {
    throw std::invalid_argument("smoothed measure needs orientation-preserving generators");
  }
}

Interval SmoothedMeasure::mass(const Point& a, const Point& b, std::optional<std::uint32_t> r) const {
  if (action_.space() == action::Space::interval) {
    const Real diff = b - a;
    if (diff.is_exact() ? diff.exact() < 0 : diff.enclosure().hi() < 0) {
      throw std::invalid_argument("interval measure needs a <= b");
    }
  }
  return shells(orbit(a), orbit(b)).weighted(ball_, r.value_or(radius_));
}

Interval SmoothedMeasure::total_mass(std::optional<std::uint32_t> r) const {
  return ball_.partial_sum(r.value_or(radius_));
}

IntervalValue SmoothedMeasure::mass_enclosure(const Point& a, const Point& b) const {
  const Interval m = mass(a, b);
  return {m.lo(), rounding::add_up(m.hi(), tail().hi())};
}

}  // namespace bilip::smoothing
