#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "bilip/report.hpp"
#include "bilip/smoothing.hpp"

namespace bilip::conjugacy {

using action::Point;
using smoothing::SmoothedMeasure;
using smoothing::SmoothedMetric;

enum class Route { metric, measure };
std::string to_string(Route r);

struct ConjugacyOptions {
  std::size_t grid_points = 257;
  double inverse_tolerance = 1e-12;  // width target for conj_apply_inverse
};

// Monotone homeomorphism h normalized by h(0) = 0 and total mass 1.
//
// h is the normalized CDF of the truncated metric (or measure): exactly a
// homeomorphism, evaluated directly with certified enclosures. `epsilon`
// bounds |h - h_untruncated| where h_untruncated is the CDF of the full
// series.
class ConjugacyMap {
 public:
  using Evaluator = std::function<Interval(const Point&)>;

  ConjugacyMap(action::Space space, Route route, Evaluator eval, Interval epsilon);

  action::Space space() const { return space_; }
  Route route() const { return route_; }
  const Interval& epsilon() const { return epsilon_; }
  const std::vector<Rational>& grid() const { return grid_; }
  const std::vector<Interval>& values() const { return values_; }

  // Certified h(p). Interval inputs use monotonicity at both endpoints.
  Interval apply(const Point& p) const;
  // Encloses h^{-1}(q); throws std::runtime_error when the enclosure cannot
  // be brought below `tolerance`.
  Interval apply_inverse(const Interval& q, double tolerance) const;

  // Tabulates h on the grid (sorted, deduplicated) and certifies strict
  // increase between neighbors; throws std::runtime_error on overlap.
  void build_grid(std::vector<Rational> points);
  // h on the grid cell containing p, from the tabulated values only.
  Interval interpolate(const Point& p) const;

 private:
  action::Space space_;
  Route route_;
  Evaluator eval_;
  Interval epsilon_;
  std::vector<Rational> grid_;
  std::vector<Interval> values_;
};

// h(p) = delta_R(0,p) / delta_R(0,1) on the interval.
ConjugacyMap conj_metric_interval(std::shared_ptr<const SmoothedMetric> m, const ConjugacyOptions& opts = {});
// h(p) = nu_R([0,p]) / nu_R(X) on the interval or the circle (basepoint 0).
ConjugacyMap conj_measure(std::shared_ptr<const SmoothedMeasure> s, const ConjugacyOptions& opts = {});

// [delta_R(0,p)/(delta_R(0,1)+T), (delta_R(0,p)+T)/delta_R(0,1)] clipped to
// [0,1]: the enclosure of the untruncated CDF from the tail bound alone.
Interval untruncated_enclosure(const SmoothedMetric& m, const Point& p);

Interval conj_apply(const ConjugacyMap& h, const Point& p);
Interval conj_apply_inverse(const ConjugacyMap& h, const Interval& q, double tolerance = 1e-12);

// h o rho(w) o h^{-1} at q.
Interval conjugated_map_eval(const action::ActionSpec& a, const freegroup::InfWord& w, const ConjugacyMap& h,
                             const Interval& q, double tolerance = 1e-12);

// Arc or subinterval [a, b] (counterclockwise from a to b on the circle).
struct Arc {
  Rational a;
  Rational b;
};

// For each arc A checks exp(-s||w||) <= nu(rho(w)A)/nu(A) <= exp(s||w||)
// twice: with the tail slack [nu_R, nu_R + T], and with the shifted radius
// nu_R(rho(w)A) <= e^{s||w||} nu_{R+||w||}(A) (and the mirror). The measure
// must have been built with extra >= ||w||.
VerificationReport measure_quasi_invariance_check(const SmoothedMeasure& s, const freegroup::InfWord& w,
                                                  const std::vector<Arc>& arcs);

}  // namespace bilip::conjugacy
