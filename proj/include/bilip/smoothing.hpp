#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bilip/action1d.hpp"
#include "bilip/freegroup.hpp"
#include "bilip/interval.hpp"

namespace bilip::smoothing {

using action::Point;
using IntervalValue = Interval;

// Exact keeps rational orbits wherever the maps allow; enclosure converts the
// starting point to doubles and stays in interval arithmetic (much faster).
enum class OrbitMode { exact, enclosure };

// Number of F_inf words over m generators with embedded length <= radius.
std::uint64_t ball_size(freegroup::GeneratorCount m, std::uint32_t radius);

inline constexpr std::size_t kDefaultMaxBall = 4'000'000;

// The enumerated ball as a prefix tree: each node is its parent times one
// letter x_index^sign, and parents always come first.
class WeightedBall {
 public:
  struct Node {
    freegroup::InfWord word;
    std::uint32_t length;
    std::int64_t parent;  // -1 for the identity
    std::uint32_t index;
    std::int8_t sign;
  };

  // Throws std::length_error when the ball has more than max_nodes words.
  WeightedBall(freegroup::GeneratorCount m, std::uint32_t radius, const freegroup::WeightParams& params,
               std::size_t max_nodes = kDefaultMaxBall);

  std::uint32_t radius() const { return radius_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  // Nodes with length <= r form a prefix of nodes().
  std::size_t size_upto(std::uint32_t r) const;
  std::uint64_t shell_count(std::uint32_t n) const { return n < shell_count_.size() ? shell_count_[n] : 0; }
  // exp(-s n)
  const Interval& weight(std::uint32_t n) const { return weights_.at(n); }
  // Sum of weights over the words of length <= r.
  Interval partial_sum(std::uint32_t r) const;

 private:
  std::uint32_t radius_;
  std::vector<Node> nodes_;
  std::vector<std::uint64_t> shell_count_;
  std::vector<std::size_t> prefix_end_;
  std::vector<Interval> weights_;
};

// orbit[k] = rho(g_k)^{-1}(p) for every ball node g_k.
using Orbit = std::vector<Point>;
Orbit compute_orbit(const action::ActionSpec& a, const WeightedBall& ball, const Point& p, OrbitMode mode);

// Per-length sums of the terms, S_n = sum over words of length n.
struct ShellSums {
  std::vector<Real> shells;
  // sum_{n <= r} exp(-s n) S_n
  Interval weighted(const WeightedBall& ball, std::uint32_t r) const;
  bool all_exact() const;
};

// Terms base_metric(orbit_a[g], orbit_b[g]).
ShellSums metric_shells(action::Space space, const WeightedBall& ball, const Orbit& a, const Orbit& b);
// Terms mu(g^{-1}[a,b]): b - a on the interval, counterclockwise arc on the circle.
ShellSums measure_shells(action::Space space, const WeightedBall& ball, const Orbit& a, const Orbit& b);

// Truncated weighted-average metric delta_R with the F2 tail bound.
class SmoothedMetric {
 public:
  // The ball is enumerated to radius + extra so larger truncations can be
  // read off the same orbits.
  SmoothedMetric(action::ActionSpec a, freegroup::WeightParams params, std::uint32_t radius,
                 OrbitMode mode = OrbitMode::exact, std::uint32_t extra = 0);

  const action::ActionSpec& action() const { return action_; }
  const freegroup::WeightParams& params() const { return params_; }
  std::uint32_t radius() const { return radius_; }
  std::uint32_t ball_radius() const { return ball_.radius(); }
  const WeightedBall& ball() const { return ball_; }
  OrbitMode mode() const { return mode_; }

  Interval tail(std::uint32_t r) const { return freegroup::weight_tail(params_, r); }
  Interval tail() const { return tail(radius_); }

  Orbit orbit(const Point& p) const { return compute_orbit(action_, ball_, p, mode_); }
  ShellSums shells(const Orbit& a, const Orbit& b) const { return metric_shells(action_.space(), ball_, a, b); }

  // delta_r(p, q) (default r = radius()).
  Interval truncated(const Point& p, const Point& q, std::optional<std::uint32_t> r = std::nullopt) const;
  // [delta_R(p,q), delta_R(p,q) + T(R)], which contains the untruncated value.
  IntervalValue distance(const Point& p, const Point& q) const;
  IntervalValue distance_from_shells(const ShellSums& s) const;

  std::vector<std::vector<IntervalValue>> matrix(const std::vector<Point>& points) const;

 private:
  action::ActionSpec action_;
  freegroup::WeightParams params_;
  std::uint32_t radius_;
  OrbitMode mode_;
  WeightedBall ball_;
};

// exp(s * ||higman_embed(w)||)
Interval lipschitz_bound(const freegroup::WeightParams& params, const freegroup::InfWord& w);

// nu = sum exp(-s||g||) mu o rho(g)^{-1} truncated at radius R, with mu
// Lebesgue measure or arc length.
class SmoothedMeasure {
 public:
  // Throws std::invalid_argument for orientation-reversing generators.
  SmoothedMeasure(action::ActionSpec a, freegroup::WeightParams params, std::uint32_t radius,
                  OrbitMode mode = OrbitMode::exact, std::uint32_t extra = 0);

  const action::ActionSpec& action() const { return action_; }
  const freegroup::WeightParams& params() const { return params_; }
  std::uint32_t radius() const { return radius_; }
  const WeightedBall& ball() const { return ball_; }

  Interval tail(std::uint32_t r) const { return freegroup::weight_tail(params_, r); }
  Interval tail() const { return tail(radius_); }

  Orbit orbit(const Point& p) const { return compute_orbit(action_, ball_, p, mode_); }
  ShellSums shells(const Orbit& a, const Orbit& b) const { return measure_shells(action_.space(), ball_, a, b); }

  // nu_r([a, b]) on the interval (a <= b), nu_r of the arc from a
  // counterclockwise to b on the circle.
  Interval mass(const Point& a, const Point& b, std::optional<std::uint32_t> r = std::nullopt) const;
  // nu_r(X): every term has mass 1.
  Interval total_mass(std::optional<std::uint32_t> r = std::nullopt) const;
  // [nu_R(A), nu_R(A) + T(R)]
  IntervalValue mass_enclosure(const Point& a, const Point& b) const;

 private:
  action::ActionSpec action_;
  freegroup::WeightParams params_;
  std::uint32_t radius_;
  OrbitMode mode_;
  WeightedBall ball_;
};

}  // namespace bilip::smoothing
