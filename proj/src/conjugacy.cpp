#include "bilip/conjugacy.hpp"

#include <algorithm>
#include <stdexcept>

namespace bilip::conjugacy {

using action::Space;

std::string to_string(Route r) { return r == Route::metric ? "metric" : "measure"; }

ConjugacyMap::ConjugacyMap(Space space, Route route, Evaluator eval, Interval epsilon)
    : space_(space), route_(route), eval_(std::move(eval)), epsilon_(epsilon) {}

Interval ConjugacyMap::apply(const Point& p) const {
  if (p.is_exact() || p.enclosure().is_point()) return eval_(p);
  const Interval x = p.enclosure();
  const Interval lo = eval_(Real(Interval(x.lo())));
  if (space_ == Space::circle && x.hi() >= 1.0) {
    // Enclosure wraps past the basepoint: continue on the next sheet.
    const Interval hi = Interval(1.0) + eval_(Real(Interval(rounding::sub_up(x.hi(), 1.0))));
    return {lo.lo(), hi.hi()};
  }
  const Interval hi = eval_(Real(Interval(x.hi())));
  return {lo.lo(), std::max(lo.hi(), hi.hi())};
}

Interval ConjugacyMap::apply_inverse(const Interval& q, double tolerance) const {
  // h(0) = 0 and h(1^-) = 1, so the brackets start at the endpoints.
  auto h_at = [&](double x) { return apply(Real(Interval(x))); };
  double lower = 0.0;
  if (q.lo() >= 1.0) {
    lower = 1.0;
  } else if (q.lo() > 0.0) {
    double bad = 1.0;
    for (int i = 0; i < 200 && bad - lower > tolerance / 4; ++i) {
      const double mid = lower + 0.5 * (bad - lower);
      if (mid == lower || mid == bad) break;
      (h_at(mid).hi() <= q.lo() ? lower : bad) = mid;
    }
  }
  double upper = 1.0;
  if (q.hi() <= 0.0) {
    upper = 0.0;
  } else if (q.hi() < 1.0) {
    double bad = 0.0;
    for (int i = 0; i < 200 && upper - bad > tolerance / 4; ++i) {
      const double mid = bad + 0.5 * (upper - bad);
      if (mid == bad || mid == upper) break;
      (h_at(mid).lo() >= q.hi() ? upper : bad) = mid;
    }
  }
  if (upper < lower) throw std::logic_error("inverse bracket crossed");
  if (upper - lower > tolerance) {
    throw std::runtime_error("conj_apply_inverse: tolerance " + format_double(tolerance) +
                             " unreachable, enclosure width " + format_double(upper - lower));
  }
  return {lower, upper};
}

void ConjugacyMap::build_grid(std::vector<Rational> points) {
  for (Rational& g : points) g.canonicalize();
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  std::vector<Interval> values;
  values.reserve(points.size());
  for (const Rational& g : points) values.push_back(apply(Real(g)));
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    if (!(values[i].hi() < values[i + 1].lo())) {
      throw std::runtime_error("conjugacy grid: enclosures at " + points[i].get_str() + " and " +
                               points[i + 1].get_str() + " are not separated");
    }
  }
  grid_ = std::move(points);
  values_ = std::move(values);
}

Interval ConjugacyMap::interpolate(const Point& p) const {
  if (grid_.empty()) throw std::logic_error("conjugacy grid not built");
  const Interval x = p.enclosure();
  // Cells containing the endpoints of x.
  auto cell_lo = [&](double v) {
    std::size_t i = 0;
    while (i + 1 < grid_.size() && cmp(grid_[i + 1], v) <= 0) ++i;
    return i;
  };
  if (p.is_exact()) {
    const auto it = std::lower_bound(grid_.begin(), grid_.end(), p.exact());
    if (it != grid_.end() && *it == p.exact()) return values_[static_cast<std::size_t>(it - grid_.begin())];
  }
  const std::size_t a = cell_lo(x.lo());
  std::size_t b = cell_lo(x.hi());
  if (cmp(grid_[b], x.hi()) < 0 && b + 1 < grid_.size()) ++b;
  return {values_[a].lo(), values_[b].hi()};
}

namespace {

Interval ratio_in_unit(const Interval& num, const Interval& den) {
  const Interval r = num / den;
  return {std::clamp(r.lo(), 0.0, 1.0), std::clamp(r.hi(), 0.0, 1.0)};
}

Interval epsilon_bound(const Interval& tail, const Interval& total) {
  const Interval e = Interval(tail.hi()) / (Interval(total.lo()) + Interval(tail.hi()));
  return {0.0, e.hi()};
}

std::vector<Rational> default_grid(std::size_t n, const action::ActionSpec& a) {
  if (n < 2) throw std::invalid_argument("conjugacy grid needs at least two points");
  std::vector<Rational> g;
  for (std::size_t k = 0; k < n; ++k) g.push_back(Rational(static_cast<long>(k), static_cast<long>(n - 1)));
  for (const auto& gen : a.generators()) {
    for (const Rational& x : gen.breakpoints_x()) g.push_back(x);
  }
  if (a.space() == Space::circle) {
    // The circle grid lives on [0, 1).
    std::erase_if(g, [](const Rational& x) { return x >= 1; });
  }
  return g;
}

}  // namespace

ConjugacyMap conj_metric_interval(std::shared_ptr<const SmoothedMetric> m, const ConjugacyOptions& opts) {
  if (m->action().space() != Space::interval) throw std::invalid_argument("metric conjugacy needs the interval");
  auto origin = std::make_shared<const smoothing::Orbit>(m->orbit(Real(Rational(0))));
  const Interval total = m->shells(*origin, m->orbit(Real(Rational(1)))).weighted(m->ball(), m->radius());
  if (!(total.lo() > 0)) throw std::runtime_error("delta_R(0,1) is not certified positive");
  auto eval = [m, origin, total](const Point& p) -> Interval {
    if (p.is_exact()) {
      if (p.exact() == 0) return Interval(0.0);
      if (p.exact() == 1) return Interval(1.0);
    }
    const Interval num = m->shells(*origin, m->orbit(p)).weighted(m->ball(), m->radius());
    return ratio_in_unit(num, total);
  };
  ConjugacyMap h(Space::interval, Route::metric, eval, epsilon_bound(m->tail(), total));
  h.build_grid(default_grid(opts.grid_points, m->action()));
  return h;
}

ConjugacyMap conj_measure(std::shared_ptr<const SmoothedMeasure> s, const ConjugacyOptions& opts) {
  const Space space = s->action().space();
  auto origin = std::make_shared<const smoothing::Orbit>(s->orbit(Real(Rational(0))));
  const Interval total = s->total_mass();
  auto eval = [s, origin, total, space](const Point& p) -> Interval {
    const Point x = action::canonical_point(space, p);
    if (x.is_exact()) {
      if (x.exact() == 0) return Interval(0.0);
      if (space == Space::interval && x.exact() == 1) return Interval(1.0);
    }
    const Interval num = s->shells(*origin, s->orbit(x)).weighted(s->ball(), s->radius());
    return ratio_in_unit(num, total);
  };
  ConjugacyMap h(space, Route::measure, eval, epsilon_bound(s->tail(), total));
  h.build_grid(default_grid(opts.grid_points, s->action()));
  return h;
}

Interval untruncated_enclosure(const SmoothedMetric& m, const Point& p) {
  const auto origin = m.orbit(Real(Rational(0)));
  const Interval num = m.shells(origin, m.orbit(p)).weighted(m.ball(), m.radius());
  const Interval den = m.shells(origin, m.orbit(Real(Rational(1)))).weighted(m.ball(), m.radius());
  const Interval t(m.tail().hi());
  const Interval lo = Interval(num.lo()) / (Interval(den.hi()) + t);
  const Interval hi = (Interval(num.hi()) + t) / Interval(den.lo());
  return {std::clamp(lo.lo(), 0.0, 1.0), std::clamp(hi.hi(), 0.0, 1.0)};
}

Interval conj_apply(const ConjugacyMap& h, const Point& p) { return h.apply(p); }

Interval conj_apply_inverse(const ConjugacyMap& h, const Interval& q, double tolerance) {
  return h.apply_inverse(q, tolerance);
}

Interval conjugated_map_eval(const action::ActionSpec& a, const freegroup::InfWord& w, const ConjugacyMap& h,
                             const Interval& q, double tolerance) {
  const Interval p = h.apply_inverse(q, tolerance);
  const Point image = action::eval_word(a, w, p.is_point() ? Real(exact_rational(p.lo())) : Real(p));
  return h.apply(image);
}

VerificationReport measure_quasi_invariance_check(const SmoothedMeasure& s, const freegroup::InfWord& w,
                                                  const std::vector<Arc>& arcs) {
  VerificationReport report("measure_quasi_invariance", 0);
  const std::uint32_t k = static_cast<std::uint32_t>(freegroup::embedded_length(w));
  const std::uint32_t r = s.radius();
  if (s.ball().radius() < r + k) {
    throw std::invalid_argument("measure ball must extend to R + ||w|| for the shifted comparison");
  }
  const Interval c = smoothing::lipschitz_bound(s.params(), w);
  const Interval c_inv = Interval(1.0) / c;
  const double t = s.tail().hi();
  for (const Arc& arc : arcs) {
    if (s.action().space() == Space::interval && !(arc.a < arc.b)) {
      throw std::invalid_argument("subinterval must have positive length");
    }
    const Point a(arc.a), b(arc.b);
    const Point wa = action::eval_word(s.action(), w, a);
    const Point wb = action::eval_word(s.action(), w, b);
    const smoothing::ShellSums base = s.shells(s.orbit(a), s.orbit(b));
    const smoothing::ShellSums moved = s.shells(s.orbit(wa), s.orbit(wb));
    const Interval nu_a = base.weighted(s.ball(), r);
    const Interval nu_wa = moved.weighted(s.ball(), r);
    const Interval nu_a_shift = base.weighted(s.ball(), r + k);
    const Interval nu_wa_shift = moved.weighted(s.ball(), r + k);

    // Tail slack: the untruncated values lie in [nu_R, nu_R + T].
    const Interval a_hi(rounding::add_up(nu_a.hi(), t));
    const Interval wa_hi(rounding::add_up(nu_wa.hi(), t));
    Verdict v = Verdict::pass;
    if (!w.is_identity()) {
      v = certify_le(Interval(nu_wa.lo()), c * a_hi);
      v = combine(v, certify_le(Interval(nu_a.lo()), c * wa_hi));
      // Shifted radius, both directions.
      v = combine(v, certify_le(nu_wa, c * nu_a_shift));
      v = combine(v, certify_le(nu_a, c * nu_wa_shift));
    }

    CheckRecord rec;
    rec.check = "quasi_invariance";
    rec.inputs["word"] = w.to_string();
    rec.inputs["arc"] = Json::array({arc.a.get_str(), arc.b.get_str()});
    const Interval ratio = nu_wa / nu_a;
    rec.values["nu_A"] = interval_json(nu_a);
    rec.values["nu_wA"] = interval_json(nu_wa);
    rec.values["ratio_truncated"] = interval_json(ratio);
    rec.values["bound"] = interval_json(c);
    rec.values["tail"] = format_double(t);
    rec.verdict = v;
    rec.margin = std::min((c * nu_a_shift).lo() - nu_wa.hi(), (c * nu_wa_shift).lo() - nu_a.hi());
    // The truncated ratio itself is reported; it need not lie in [1/c, c].
    if (w.is_identity()) {
      rec.note = "identity: ratio is exactly 1";
    } else if (!(ratio.lo() >= c_inv.lo() && ratio.hi() <= c.hi())) {
      rec.note = "truncated ratio outside [1/c, c]";
    }
    report.add(std::move(rec));
  }
  return report;
}

}  // namespace bilip::conjugacy
