#include "bilip/verify.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

#include "bilip/demos.hpp"
#include "bilip/lcgroup.hpp"
#include "bilip/parallel.hpp"

namespace bilip::verify {

using freegroup::InfWord;
using smoothing::Orbit;
using smoothing::ShellSums;

namespace {

Verdict from_bool(bool ok) { return ok ? Verdict::pass : Verdict::fail; }

struct Tally {
  std::size_t pass = 0, fail = 0, inconclusive = 0;
  void add(Verdict v) {
    (v == Verdict::pass ? pass : v == Verdict::fail ? fail : inconclusive)++;
  }
  Verdict verdict() const {
    if (fail) return Verdict::fail;
    if (inconclusive) return Verdict::inconclusive;
    return Verdict::pass;
  }
  Json json() const { return Json{{"pass", pass}, {"fail", fail}, {"inconclusive", inconclusive}}; }
};

// Exact shell-wise a <= b + c.
bool shells_triangle(const ShellSums& a, const ShellSums& b, const ShellSums& c) {
  for (std::size_t n = 0; n < a.shells.size(); ++n) {
    if (a.shells[n].exact() > b.shells[n].exact() + c.shells[n].exact()) return false;
  }
  return true;
}

bool shells_equal(const ShellSums& a, const ShellSums& b) {
  for (std::size_t n = 0; n < a.shells.size(); ++n) {
    if (a.shells[n].is_exact() != b.shells[n].is_exact()) return false;
    if (a.shells[n].is_exact()) {
      if (a.shells[n].exact() != b.shells[n].exact()) return false;
    } else if (!a.shells[n].enclosure().overlaps(b.shells[n].enclosure())) {
      return false;
    }
  }
  return true;
}

}  // namespace

// --- metric axioms -----------------------------------------------------------

VerificationReport metric_axioms_check(const SmoothedMetric& m, const std::vector<Point>& points,
                                       const std::vector<std::array<std::size_t, 3>>& triples, double slack) {
  VerificationReport report("metric_axioms", 0);
  const std::size_t n = points.size();
  if (n < 2) throw std::invalid_argument("metric_axioms_check needs at least two points");
  std::vector<Orbit> orbits(n);
  parallel_for(n, [&](std::size_t i) { orbits[i] = m.orbit(points[i]); });
  std::vector<std::vector<ShellSums>> sh(n, std::vector<ShellSums>(n));
  parallel_for(n, [&](std::size_t i) {
    for (std::size_t j = 0; j < n; ++j) sh[i][j] = m.shells(orbits[i], orbits[j]);
  });
  auto delta = [&](std::size_t i, std::size_t j) { return sh[i][j].weighted(m.ball(), m.radius()); };
  const action::Space space = m.action().space();

  {
    Tally t;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) t.add(from_bool(shells_equal(sh[i][j], sh[j][i])));
    }
    CheckRecord r;
    r.check = "symmetry";
    r.values = t.json();
    r.verdict = t.verdict();
    report.add(std::move(r));
  }
  {
    Tally t;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) {
          t.add(certify_le(delta(i, i), Interval(0.0)));
          continue;
        }
        const Real base = action::base_metric(space, action::canonical_point(space, points[i]),
                                              action::canonical_point(space, points[j]));
        // The identity term is the base metric; every other shell is >= 0.
        Verdict v;
        if (sh[i][j].all_exact()) {
          v = from_bool(sh[i][j].shells[0].exact() == base.exact());
          for (std::size_t k = 1; k < sh[i][j].shells.size(); ++k) {
            v = combine(v, from_bool(sh[i][j].shells[k].exact() >= 0));
          }
        } else {
          v = certify_le(base.enclosure(), delta(i, j));
        }
        if (!(base.is_exact() && base.exact() == 0)) v = combine(v, certify_lt(Interval(0.0), delta(i, j)));
        t.add(v);
      }
    }
    CheckRecord r;
    r.check = "positivity";
    r.values = t.json();
    r.verdict = t.verdict();
    report.add(std::move(r));
  }
  {
    std::vector<std::array<std::size_t, 3>> tri = triples;
    if (tri.empty()) {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t k = 0; k < n; ++k) tri.push_back({i, j, k});
    }
    Tally t;
    std::size_t exact = 0;
    double consumed = 0;
    for (const auto& [i, j, k] : tri) {
      if (sh[i][k].all_exact() && sh[i][j].all_exact() && sh[j][k].all_exact()) {
        ++exact;
        t.add(from_bool(shells_triangle(sh[i][k], sh[i][j], sh[j][k])));
        continue;
      }
      const Interval lhs = delta(i, k);
      const Interval rhs = delta(i, j) + delta(j, k);
      consumed = std::max(consumed, lhs.hi() - rhs.lo());
      if (lhs.hi() <= rounding::add_down(rhs.lo(), slack)) {
        t.add(Verdict::pass);
      } else if (lhs.lo() > rounding::add_up(rhs.hi(), slack)) {
        t.add(Verdict::fail);
      } else {
        t.add(Verdict::inconclusive);
      }
    }
    CheckRecord r;
    r.check = "triangle";
    r.inputs["triples"] = tri.size();
    r.inputs["slack"] = format_double(slack);
    r.values = t.json();
    r.values["decided_exactly"] = exact;
    r.values["slack_consumed"] = format_double(std::max(0.0, consumed));
    r.verdict = t.verdict();
    r.margin = slack - std::max(0.0, consumed);
    report.add(std::move(r));
  }
  {
    Tally t;
    const Interval total = freegroup::weight_total(m.params());
    const double tail = m.tail().hi();
    double worst = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double hi = rounding::add_up(delta(i, j).hi(), tail);
        worst = std::max(worst, hi);
        t.add(certify_le(Interval(hi), total));
      }
    }
    CheckRecord r;
    r.check = "boundedness";
    r.values = t.json();
    r.values["max_upper"] = format_double(worst);
    r.values["weight_total"] = interval_json(total);
    r.verdict = t.verdict();
    r.margin = total.lo() - worst;
    report.add(std::move(r));
  }
  return report;
}

// --- Eq. (A) ball inclusion -----------------------------------------------

BallInclusionResult ball_inclusion_search(const SmoothedMetric& m, const Point& x, const Rational& r,
                                          const BallInclusionOptions& opts) {
  if (!(r > 0)) throw std::invalid_argument("ball radius r must be positive");
  BallInclusionResult res;
  const auto& params = m.params();
  const action::ActionSpec& a = m.action();
  const Interval total = freegroup::weight_total(params);
  if (cmp(r, total.hi()) >= 0) {
    res.verdict = Verdict::pass;
    res.r_prime = 1;
    res.note = "r >= weight_total bounds the whole space";
    return res;
  }
  const double half = enclose(Rational(r / 2)).lo();
  std::uint32_t ra = 0;
  while (!(freegroup::weight_tail(params, ra).hi() < half)) {
    if (++ra > 2000) throw std::runtime_error("tail never drops below r/2");
  }
  res.radius_A = ra;
  res.tail = freegroup::weight_tail(params, ra);
  const std::uint64_t size = smoothing::ball_size(a.generator_count(), ra);
  if (size > opts.max_ball) {
    res.verdict = Verdict::inconclusive;
    res.note = "finite set A has " + std::to_string(size) + " words, above the enumeration cap";
    return res;
  }
  const SmoothedMetric ma(a, params, ra, smoothing::OrbitMode::enclosure);
  const Point cx = action::canonical_point(a.space(), x);
  const Orbit ox = ma.orbit(cx);
  const Interval bound = enclose(r);
  auto delta_upper = [&](const Point& y) {
    return ma.shells(ox, ma.orbit(y)).weighted(ma.ball(), ra) + Interval(res.tail.hi());
  };
  Rational rp(1);
  const std::size_t w = std::max<std::size_t>(opts.witness_points, 2);
  for (unsigned k = 0; k <= opts.max_halvings; ++k, rp /= 2) {
    std::vector<Rational> ys;
    if (a.space() == action::Space::interval) {
      const Rational& xv = cx.exact();
      for (std::size_t i = 1; i <= w; ++i) {
        const Rational step = rp * Rational(static_cast<long>(i), static_cast<long>(w));
        ys.push_back(std::max(Rational(0), Rational(xv - step)));
        ys.push_back(std::min(Rational(1), Rational(xv + step)));
      }
    } else {
      for (std::size_t i = 1; i <= w; ++i) {
        const Rational step = rp * Rational(static_cast<long>(i), static_cast<long>(w)) / 2;
        ys.push_back(Rational(cx.exact() - step));
        ys.push_back(Rational(cx.exact() + step));
      }
    }
    std::vector<std::pair<Rational, Interval>> witness;
    bool ok = true;
    for (const Rational& y : ys) {
      const Interval d = delta_upper(Real(y));
      witness.emplace_back(y, d);
      if (!(d.hi() < bound.lo())) {
        ok = false;
        break;
      }
    }
    if (ok) {
      res.verdict = Verdict::pass;
      res.r_prime = a.space() == action::Space::interval ? rp : Rational(rp / 2);
      res.witness = std::move(witness);
      res.note = a.space() == action::Space::interval ? "monotone terms: endpoints x +- r' bound the ball"
                                                      : "circle: sampled witnesses";
      return res;
    }
  }
  res.verdict = Verdict::inconclusive;
  res.note = "r' underflowed the halving budget";
  return res;
}

CheckRecord to_record(const BallInclusionResult& res, const Point& x, const Rational& r) {
  CheckRecord rec;
  rec.check = "ball_inclusion";
  rec.inputs["x"] = x.to_string();
  rec.inputs["r"] = r.get_str();
  rec.values["r_prime"] = res.r_prime.get_str();
  rec.values["radius_A"] = res.radius_A;
  rec.values["tail"] = format_double(res.tail.hi());
  Json wit = Json::array();
  for (const auto& [y, d] : res.witness) wit.push_back(Json::array({y.get_str(), format_double(d.hi())}));
  rec.values["witness"] = std::move(wit);
  rec.verdict = res.verdict;
  rec.note = res.note;
  if (!res.witness.empty()) {
    double worst = 0;
    for (const auto& wd : res.witness) worst = std::max(worst, wd.second.hi());
    rec.margin = r.get_d() - worst;
  }
  return rec;
}

// --- Lipschitz ratios ------------------------------------------------------

namespace {

// Orbits keyed by the (exact or enclosed) start point.
class OrbitCache {
 public:
  explicit OrbitCache(const SmoothedMetric& m) : m_(m) {}
  const Orbit& get(const Point& p) {
    const std::string key = p.to_string();
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, m_.orbit(p)).first;
    return it->second;
  }

 private:
  const SmoothedMetric& m_;
  std::map<std::string, Orbit> cache_;
};

Point start_point(const SmoothedMetric& m, const Rational& p) {
  return m.mode() == smoothing::OrbitMode::exact ? Point(p) : Point(enclose(p));
}

}  // namespace

VerificationReport lipschitz_ratio_report(const SmoothedMetric& m, const std::vector<InfWord>& words,
                                          const std::vector<std::pair<Rational, Rational>>& pairs) {
  VerificationReport report("lipschitz", 0);
  const std::uint32_t r = m.radius();
  const double tail = m.tail().hi();
  std::set<Rational> pool;
  for (const auto& [p, q] : pairs) {
    pool.insert(p);
    pool.insert(q);
  }
  std::vector<Rational> pts(pool.begin(), pool.end());
  std::map<Rational, std::size_t> index;
  for (std::size_t i = 0; i < pts.size(); ++i) index[pts[i]] = i;
  std::vector<Orbit> base(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) { base[i] = m.orbit(start_point(m, pts[i])); });

  for (const InfWord& w : words) {
    const std::uint32_t k = static_cast<std::uint32_t>(freegroup::embedded_length(w));
    if (m.ball_radius() < r + k) throw std::invalid_argument("metric ball must reach R + ||w||");
    const Interval c = smoothing::lipschitz_bound(m.params(), w);
    std::vector<Orbit> moved(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) {
      moved[i] = m.orbit(action::eval_word(m.action(), w, start_point(m, pts[i])));
    });
    struct PairResult {
      Verdict tail_v, shift_v;
      double margin;
      Interval ratio;
    };
    std::vector<PairResult> res(pairs.size());
    if (w.is_identity()) {
      // Both sides are the same sum term by term.
      for (auto& pr : res) pr = {Verdict::pass, Verdict::pass, 0.0, Interval(1.0)};
    } else parallel_for(pairs.size(), [&](std::size_t t) {
      const std::size_t i = index.at(pairs[t].first), j = index.at(pairs[t].second);
      const ShellSums s = m.shells(base[i], base[j]);
      const ShellSums sw = m.shells(moved[i], moved[j]);
      const Interval d = s.weighted(m.ball(), r), dk = s.weighted(m.ball(), r + k);
      const Interval e = sw.weighted(m.ball(), r), ek = sw.weighted(m.ball(), r + k);
      const Verdict tv = combine(certify_le(Interval(e.lo()), c * Interval(rounding::add_up(d.hi(), tail))),
                                 certify_le(Interval(d.lo()), c * Interval(rounding::add_up(e.hi(), tail))));
      const Verdict sv = combine(certify_le(e, c * dk), certify_le(d, c * ek));
      const double margin = std::min((c * dk).lo() / e.hi(), (c * ek).lo() / d.hi()) - 1.0;
      res[t] = {tv, sv, margin, e / d};
    });
    Tally tt, ts;
    double worst = std::numeric_limits<double>::infinity();
    double ratio_max = 0, ratio_min = std::numeric_limits<double>::infinity();
    for (const auto& pr : res) {
      tt.add(pr.tail_v);
      ts.add(pr.shift_v);
      worst = std::min(worst, pr.margin);
      ratio_max = std::max(ratio_max, pr.ratio.hi());
      ratio_min = std::min(ratio_min, pr.ratio.lo());
    }
    CheckRecord rec;
    rec.check = "lipschitz";
    rec.inputs["word"] = w.to_string();
    rec.inputs["embedded_length"] = k;
    rec.inputs["pairs"] = pairs.size();
    rec.values["bound"] = interval_json(c);
    rec.values["tail_slack"] = tt.json();
    rec.values["shifted_radius"] = ts.json();
    rec.values["truncated_ratio_range"] = Json::array({format_double(ratio_min), format_double(ratio_max)});
    rec.values["worst_relative_margin"] = format_double(worst);
    rec.verdict = combine(tt.verdict(), ts.verdict());
    rec.margin = worst;
    if (w.is_identity()) rec.note = "identity: ratio is exactly 1";
    report.add(std::move(rec));
  }
  return report;
}

// --- smoothing effectiveness -------------------------------------------------

VerificationReport smoothing_effectiveness_report(const SmoothedMetric& m, const conjugacy::ConjugacyMap& h,
                                                  const InfWord& w,
                                                  const std::vector<std::pair<Rational, Rational>>& pairs) {
  VerificationReport report("smoothing_effectiveness", 0);
  const auto& a = m.action();
  const std::uint32_t r = m.radius();
  const std::uint32_t k = static_cast<std::uint32_t>(freegroup::embedded_length(w));
  if (m.ball_radius() < r + k) throw std::invalid_argument("metric ball must reach R + ||w||");
  const Interval c = smoothing::lipschitz_bound(m.params(), w);
  struct Row {
    Interval raw, conj, allowed, slack;
  };
  std::vector<Row> rows(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t t) {
    const Rational& p = pairs[t].first;
    const Rational& q = pairs[t].second;
    if (!(p < q)) throw std::invalid_argument("effectiveness pairs must satisfy p < q");
    const Interval wp = action::eval_word(a, w, Point(p)).enclosure();
    const Interval wq = action::eval_word(a, w, Point(q)).enclosure();
    const Interval raw = abs((wq - wp) / enclose(Rational(q - p)));
    const Interval hp = h.apply(Point(p)), hq = h.apply(Point(q));
    const Interval cp = conjugacy::conjugated_map_eval(a, w, h, hp);
    const Interval cq = conjugacy::conjugated_map_eval(a, w, h, hq);
    const Interval conj = abs((cq - cp) / (hq - hp));
    const ShellSums s = m.shells(m.orbit(Point(p)), m.orbit(Point(q)));
    const Interval d = s.weighted(m.ball(), r), dk = s.weighted(m.ball(), r + k);
    rows[t] = {raw, conj, c * dk / d, dk / d - Interval(1.0)};
  });
  double raw_sup = 0, conj_sup = 0, allowed_max = 0;
  for (std::size_t t = 0; t < pairs.size(); ++t) {
    const Row& row = rows[t];
    raw_sup = std::max(raw_sup, row.raw.lo());
    conj_sup = std::max(conj_sup, row.conj.hi());
    allowed_max = std::max(allowed_max, row.allowed.lo());
    CheckRecord rec;
    rec.check = "conjugated_quotient";
    rec.inputs["p"] = pairs[t].first.get_str();
    rec.inputs["q"] = pairs[t].second.get_str();
    rec.values["raw_quotient"] = interval_json(row.raw);
    rec.values["conjugated_quotient"] = interval_json(row.conj);
    rec.values["slack"] = format_double(row.slack.hi());
    rec.values["allowed"] = interval_json(row.allowed);
    rec.verdict = certify_le(row.conj, row.allowed);
    rec.margin = row.allowed.lo() - row.conj.hi();
    report.add(std::move(rec));
  }
  report.extra()["word"] = w.to_string();
  report.extra()["cap"] = interval_json(c);
  report.extra()["raw_sup_lower"] = format_double(raw_sup);
  report.extra()["conjugated_sup_upper"] = format_double(conj_sup);
  report.extra()["epsilon"] = format_double(h.epsilon().hi());
  return report;
}

// --- tail honesty -------------------------------------------------------------

VerificationReport tail_honesty_check(const action::ActionSpec& a, const freegroup::WeightParams& params,
                                      std::uint32_t radius, const std::vector<std::pair<Rational, Rational>>& pairs) {
  VerificationReport report("tail_honesty", 0);
  const SmoothedMetric m(a, params, radius, smoothing::OrbitMode::exact, 2);
  const double tail = m.tail().hi();
  std::vector<CheckRecord> recs(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t t) {
    const auto& [p, q] = pairs[t];
    const ShellSums s = m.shells(m.orbit(Point(p)), m.orbit(Point(q)));
    const Interval d = s.weighted(m.ball(), radius);
    const Interval d2 = s.weighted(m.ball(), radius + 2);
    // delta_{R+2} - delta_R is a sum of nonnegative shells.
    bool lower = true;
    for (std::uint32_t n = radius + 1; n <= radius + 2; ++n) {
      const Real& x = s.shells[n];
      lower = lower && (x.is_exact() ? x.exact() >= 0 : x.enclosure().lo() >= 0);
    }
    const Verdict upper = certify_le(d2, d + Interval(tail));
    CheckRecord rec;
    rec.check = "tail_honesty";
    rec.inputs["p"] = p.get_str();
    rec.inputs["q"] = q.get_str();
    rec.values["delta_R"] = interval_json(d);
    rec.values["delta_R_plus_2"] = interval_json(d2);
    rec.values["tail"] = format_double(tail);
    rec.verdict = combine(from_bool(lower), upper);
    rec.margin = (d + Interval(tail)).lo() - d2.hi();
    recs[t] = std::move(rec);
  });
  for (auto& r : recs) report.add(std::move(r));
  return report;
}

// --- brute-force oracles ------------------------------------------------------

std::string naive_reduce(const std::string& word) {
  std::string s = word;
  auto inverse = [](char a, char b) { return a != b && std::tolower(a) == std::tolower(b); };
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      if (inverse(s[i], s[i + 1])) {
        s.erase(i, 2);
        changed = true;
        break;
      }
    }
  }
  return s;
}

VerificationReport sphere_count_oracle(unsigned max_radius) {
  VerificationReport report("sphere_count", 0);
  const char letters[4] = {'x', 'X', 't', 'T'};
  for (unsigned r = 0; r <= max_radius; ++r) {
    std::set<std::string> reduced;
    std::uint64_t total = 1;
    for (unsigned i = 0; i < r; ++i) total *= 4;
    for (std::uint64_t code = 0; code < total; ++code) {
      std::string w;
      std::uint64_t c = code;
      for (unsigned i = 0; i < r; ++i, c /= 4) w += letters[c % 4];
      const std::string red = naive_reduce(w);
      if (red.size() == r) reduced.insert(red);
    }
    CheckRecord rec;
    rec.check = "sphere_count";
    rec.inputs["r"] = r;
    rec.values["enumerated"] = reduced.size();
    rec.values["closed_form"] = freegroup::sphere_count_f2(r);
    rec.verdict = from_bool(reduced.size() == freegroup::sphere_count_f2(r));
    report.add(std::move(rec));
  }
  return report;
}

namespace {

// Every reduced syllable sequence within the bounds; `budget` caps sum |e|.
void all_syllable_words(unsigned max_syllables, unsigned max_index, int max_exponent, std::vector<InfWord>& out,
                        int budget = std::numeric_limits<int>::max()) {
  std::vector<freegroup::Syllable> stack;
  int used = 0;
  std::function<void()> rec = [&] {
    out.push_back(InfWord::from_syllables(stack));
    if (stack.size() == max_syllables) return;
    for (unsigned i = 0; i <= max_index; ++i) {
      if (!stack.empty() && stack.back().index == i) continue;
      for (int e = -max_exponent; e <= max_exponent; ++e) {
        if (e == 0 || used + std::abs(e) > budget) continue;
        stack.push_back({i, e});
        used += std::abs(e);
        rec();
        used -= std::abs(e);
        stack.pop_back();
      }
    }
  };
  rec();
}

std::string substitute(const InfWord& w) {
  std::string s;
  for (const auto& syl : w.syllables()) {
    for (int k = 0; k < std::abs(syl.exponent); ++k) {
      s += std::string(syl.index, 't');
      s += syl.exponent > 0 ? 'x' : 'X';
      s += std::string(syl.index, 'T');
    }
  }
  return s;
}

}  // namespace

VerificationReport embedding_oracle(unsigned max_syllables, unsigned max_index, int max_exponent) {
  VerificationReport report("embedding", 0);
  std::vector<InfWord> words;
  all_syllable_words(max_syllables, max_index, max_exponent, words);
  std::size_t mismatches = 0, library_mismatches = 0;
  std::set<std::string> images;
  for (const InfWord& w : words) {
    const std::string red = naive_reduce(substitute(w));
    if (red.size() != freegroup::embedded_length(w)) ++mismatches;
    if (freegroup::higman_embed(w).to_string() != (red.empty() ? "1" : red)) ++library_mismatches;
    images.insert(red);
  }
  CheckRecord len;
  len.check = "embedded_length_formula";
  len.inputs = Json{{"max_syllables", max_syllables}, {"max_index", max_index}, {"max_exponent", max_exponent}};
  len.values["words"] = words.size();
  len.values["mismatches"] = mismatches;
  len.values["embed_mismatches"] = library_mismatches;
  len.verdict = from_bool(mismatches == 0 && library_mismatches == 0);
  report.add(std::move(len));
  CheckRecord inj;
  inj.check = "embedding_injective";
  inj.values["words"] = words.size();
  inj.values["distinct_images"] = images.size();
  inj.verdict = from_bool(images.size() == words.size());
  report.add(std::move(inj));
  return report;
}

VerificationReport oracle_pack(std::uint64_t seed) {
  VerificationReport report("oracles", seed);
  demos::Rng rng(seed);
  report.append(sphere_count_oracle(8));
  report.append(embedding_oracle(4, 3, 2));

  {
    // Ball enumeration against a filter of the exhaustive syllable words.
    const std::uint32_t radius = 6;
    std::vector<InfWord> words;
    all_syllable_words(radius, 1, static_cast<int>(radius), words, static_cast<int>(radius));
    std::set<InfWord> expected;
    for (const InfWord& w : words) {
      if (naive_reduce(substitute(w)).size() <= radius) expected.insert(w);
    }
    std::set<InfWord> got;
    std::size_t duplicates = 0;
    for (const auto& e : freegroup::enumerate_ball(2u, radius)) duplicates += !got.insert(e.word).second;
    CheckRecord rec;
    rec.check = "ball_enumeration";
    rec.inputs = Json{{"m", 2}, {"R", radius}};
    rec.values = Json{{"enumerated", got.size()}, {"oracle", expected.size()}, {"duplicates", duplicates}};
    rec.verdict = from_bool(got == expected && duplicates == 0);
    report.add(std::move(rec));
  }
  {
    // Partial weight sums over F_inf balls stay below the F2 closed form.
    const auto params = freegroup::WeightParams::default_params();
    const Interval total = freegroup::weight_total(params);
    Interval prev(0.0);
    bool ok = true;
    for (std::uint32_t radius = 0; radius <= 10; ++radius) {
      const smoothing::WeightedBall ball(freegroup::kAllGenerators, radius, params);
      const Interval s = ball.partial_sum(radius);
      ok = ok && prev.hi() <= s.lo() && s.hi() <= total.lo();
      prev = s;
    }
    CheckRecord rec;
    rec.check = "weight_partial_sums";
    rec.values = Json{{"S_10", interval_json(prev)}, {"weight_total", interval_json(total)}};
    rec.verdict = from_bool(ok);
    report.add(std::move(rec));
  }

  const auto pool = demos::uniform_points(65);
  const auto params = freegroup::WeightParams::default_params();
  for (const auto& [name, a] : {std::pair{"pl", demos::pl_demo()}, std::pair{"power", demos::power_demo()}}) {
    auto r = tail_honesty_check(a, params, 6, demos::random_pairs(rng, pool, 50));
    Tally t;
    for (const auto& rec : r.records()) t.add(rec.verdict);
    CheckRecord rec;
    rec.check = "tail_honesty";
    rec.inputs = Json{{"action", name}, {"pairs", 50}};
    rec.values = t.json();
    rec.verdict = t.verdict();
    report.add(std::move(rec));
  }
  {
    // Metric CDF and measure CDF agree termwise for monotone interval actions;
    // and delta_R(a,b) = delta_R(0,b) - delta_R(0,a), shell by shell.
    const SmoothedMetric m(demos::pl_demo(), params, 6);
    const smoothing::SmoothedMeasure nu(demos::pl_demo(), params, 6);
    const Orbit o0 = m.orbit(Point(Rational(0)));
    std::vector<Orbit> orbits;
    for (const Rational& p : pool) orbits.push_back(m.orbit(Point(p)));
    bool cdf = true, additive = true;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      cdf = cdf && shells_equal(m.shells(o0, orbits[i]), nu.shells(o0, orbits[i]));
      for (std::size_t j = i; j < pool.size(); j += 7) {
        const ShellSums ab = m.shells(orbits[i], orbits[j]);
        const ShellSums b0 = m.shells(o0, orbits[j]);
        const ShellSums a0 = m.shells(o0, orbits[i]);
        for (std::size_t n = 0; n < ab.shells.size(); ++n) {
          additive = additive && ab.shells[n].exact() == b0.shells[n].exact() - a0.shells[n].exact();
        }
      }
    }
    CheckRecord c1;
    c1.check = "metric_measure_cdf_coincidence";
    c1.inputs = Json{{"action", "pl"}, {"grid", pool.size()}};
    c1.verdict = from_bool(cdf);
    report.add(std::move(c1));
    CheckRecord c2;
    c2.check = "interval_additivity";
    c2.inputs = Json{{"action", "pl"}};
    c2.verdict = from_bool(additive);
    report.add(std::move(c2));
  }
  {
    // Word homomorphism on exact PL data.
    const auto a = demos::pl_demo();
    bool ok = true;
    for (int trial = 0; trial < 100; ++trial) {
      auto random_word = [&] {
        std::vector<freegroup::Syllable> s;
        const std::size_t len = 1 + rng() % 6;
        for (std::size_t i = 0; i < len; ++i) {
          s.push_back({static_cast<std::uint32_t>(rng() % 2), rng() % 2 ? 1 : -1});
        }
        return InfWord::from_syllables(s);
      };
      const InfWord u = random_word(), v = random_word();
      const Point p(pool[rng() % pool.size()]);
      ok = ok && action::eval_word(a, u * v, p) == action::eval_word(a, u, action::eval_word(a, v, p));
    }
    CheckRecord rec;
    rec.check = "word_homomorphism";
    rec.inputs = Json{{"action", "pl"}, {"trials", 100}};
    rec.verdict = from_bool(ok);
    report.add(std::move(rec));
  }
  {
    const auto net = lcgroup::build_net(1, Rational(10), Rational(1, 4));
    report.append(lcgroup::net_invariants_check(net));
    // Norm against a scan over every vertex.
    bool ok = true;
    for (long k = -24; k <= 24; ++k) {
      const lcgroup::Vec g{Rational(k, 4), Rational(0)};
      std::int64_t best = -1;
      for (std::size_t v = 0; v < net.vertices().size(); ++v) {
        if (lcgroup::squared_distance(net.vertices()[v], g) <= 1) {
          const auto b = net.bfs_distance()[v];
          if (best < 0 || b < best) best = b;
        }
      }
      ok = ok && best == static_cast<std::int64_t>(lcgroup::lc_norm(net, g));
    }
    CheckRecord rec;
    rec.check = "norm_scan";
    rec.inputs = Json{{"d", 1}, {"L", 10}};
    rec.verdict = from_bool(ok);
    report.add(std::move(rec));
  }
  return report;
}

}  // namespace bilip::verify
