#include "bilip/demos.hpp"
#include "bilip/verify.hpp"
#include "helpers.hpp"

using namespace bilip;
using namespace bilip::verify;
using action::Point;
using freegroup::InfWord;

namespace {
std::vector<Point> points(std::initializer_list<Rational> qs) {
  std::vector<Point> out;
  for (const auto& q : qs) out.emplace_back(q);
  return out;
}
const CheckRecord& find(const VerificationReport& r, const std::string& check) {
  for (const auto& rec : r.records()) {
    if (rec.check == check) return rec;
  }
  throw std::runtime_error("no record " + check);
}
}  // namespace

TEST_CASE("verdict combinators") {
  CHECK(certify_le(Interval(1.0, 2.0), Interval(2.0, 3.0)) == Verdict::pass);
  CHECK(certify_le(Interval(1.0, 2.5), Interval(2.0, 3.0)) == Verdict::inconclusive);
  CHECK(certify_le(Interval(3.5), Interval(2.0, 3.0)) == Verdict::fail);
  CHECK(certify_lt(Interval(2.0), Interval(2.0)) == Verdict::fail);
  CHECK(certify_lt(Interval(1.0, 2.0), Interval(1.5, 3.0)) == Verdict::inconclusive);
  CHECK(combine(Verdict::pass, Verdict::inconclusive) == Verdict::inconclusive);
  CHECK(combine(Verdict::fail, Verdict::inconclusive) == Verdict::fail);
}

TEST_CASE("metric axioms: trivial action, three points, no slack used") {
  const SmoothedMetric m(demos::trivial_action(2), freegroup::WeightParams::parse("log(4)"), 6);
  const auto r = metric_axioms_check(m, points({Rational(0), Rational(1, 3), Rational(1)}));
  CHECK(r.passed());
  CHECK(find(r, "triangle").values["decided_exactly"] == 27);
  CHECK(find(r, "triangle").values["slack_consumed"] == "0");
}

TEST_CASE("metric axioms on the demos") {
  const auto params = freegroup::WeightParams::default_params();
  std::vector<Point> pts;
  for (const auto& q : demos::uniform_points(12)) pts.emplace_back(q);
  const auto pl = metric_axioms_check(SmoothedMetric(demos::pl_demo(), params, 6), pts);
  CHECK(pl.passed());
  CHECK(find(pl, "triangle").values["decided_exactly"] == 12 * 12 * 12);
  const auto pw = metric_axioms_check(SmoothedMetric(demos::power_demo(), params, 6), pts);
  CHECK(pw.passed());
  const auto circ = metric_axioms_check(SmoothedMetric(demos::circle_demo(), params, 4),
                                        points({Rational(0), Rational(1, 4), Rational(2, 3), Rational(9, 10)}));
  CHECK(circ.passed());
}

TEST_CASE("ball inclusion") {
  const auto log4 = freegroup::WeightParams::parse("log(4)");
  const SmoothedMetric triv(demos::trivial_action(1), log4, 0);
  // r above the diameter bound.
  const auto whole = ball_inclusion_search(triv, Point(Rational(1, 2)), Rational(6));
  CHECK(whole.verdict == Verdict::pass);
  CHECK(whole.r_prime == 1);
  // Trivial action: delta <= weight_total * base, so r / weight_total is
  // always admissible and the search finds at least half of it.
  const Rational r(1, 4);
  const auto res = ball_inclusion_search(triv, Point(Rational(1, 2)), r);
  CHECK(res.verdict == Verdict::pass);
  CHECK(res.r_prime * 2 > r / 5);
  const auto pw = ball_inclusion_search(SmoothedMetric(demos::power_demo(), freegroup::WeightParams::default_params(), 0),
                                        Point(Rational(0)), r);
  CHECK(pw.verdict == Verdict::pass);
  CHECK(pw.r_prime > 0);
  CHECK(pw.radius_A == 46);
  CHECK(pw.tail.hi() < 0.125);
  // Too many words for A: inconclusive, never pass.
  const auto big = ball_inclusion_search(
      SmoothedMetric(demos::pl_demo(), freegroup::WeightParams::default_params(), 0), Point(Rational(0)), r);
  CHECK(big.verdict == Verdict::inconclusive);
  const auto rec = to_record(pw, Point(Rational(0)), r);
  CHECK(rec.values["radius_A"] == 46);
  CHECK_THROWS(ball_inclusion_search(triv, Point(Rational(0)), Rational(0)));
}

TEST_CASE("Lipschitz ratios") {
  const auto params = freegroup::WeightParams::default_params();
  const SmoothedMetric m(demos::mobius_demo(), params, 6, smoothing::OrbitMode::enclosure, 2);
  demos::Rng rng(4);
  const auto pairs = demos::random_pairs(rng, demos::uniform_points(33), 60);
  const auto r = lipschitz_ratio_report(m, {InfWord(), InfWord::generator(0), InfWord::generator(0, -1)}, pairs);
  CHECK(r.passed());
  CHECK(r.records()[0].values["bound"][0] == "1");
  // ||w|| = ||w^-1|| and delta is symmetric: the two margins agree.
  const double mw = r.records()[1].margin, mwi = r.records()[2].margin;
  CHECK(std::abs(mw - mwi) < 0.05);
  const SmoothedMetric shallow(demos::mobius_demo(), params, 6, smoothing::OrbitMode::enclosure, 0);
  CHECK_THROWS(lipschitz_ratio_report(shallow, {InfWord::generator(0)}, pairs));
}

TEST_CASE("smoothing effectiveness") {
  const auto params = freegroup::WeightParams::default_params();
  auto tm = std::make_shared<const SmoothedMetric>(demos::trivial_action(1), freegroup::WeightParams::parse("log(4)"), 6,
                                                   smoothing::OrbitMode::exact, 1);
  const auto th = conjugacy::conj_metric_interval(tm);
  const auto tr = smoothing_effectiveness_report(*tm, th, InfWord::generator(0), {{Rational(1, 4), Rational(1, 2)}});
  CHECK(tr.passed());
  CHECK(tr.records()[0].values["raw_quotient"][0] == "1");
  auto pm = std::make_shared<const SmoothedMetric>(demos::power_demo(), params, 6, smoothing::OrbitMode::exact, 1);
  const auto h = conjugacy::conj_metric_interval(pm);
  std::vector<std::pair<Rational, Rational>> pairs;
  for (long k = 0; k < 10; ++k) pairs.emplace_back(Rational(k, 10000), Rational(k + 1, 10000));
  const auto r = smoothing_effectiveness_report(*pm, h, InfWord::generator(0), pairs);
  CHECK(r.passed());
  CHECK(std::stod(r.extra()["raw_sup_lower"].get<std::string>()) >= 40);
  CHECK(std::stod(r.extra()["conjugated_sup_upper"].get<std::string>()) <= 3.4);
}

TEST_CASE("tail honesty") {
  demos::Rng rng(9);
  const auto pairs = demos::random_pairs(rng, demos::uniform_points(17), 20);
  for (const auto& a : {demos::pl_demo(), demos::power_demo(), demos::circle_demo()}) {
    CHECK(tail_honesty_check(a, freegroup::WeightParams::default_params(), 4, pairs).passed());
  }
}

TEST_CASE("brute-force oracles") {
  CHECK(naive_reduce("xtTX") == "");
  CHECK(naive_reduce("txXt") == "tt");
  CHECK(sphere_count_oracle(6).passed());
  CHECK(embedding_oracle(3, 2, 2).passed());
  const auto pack = oracle_pack(1);
  for (const auto& rec : pack.records()) CHECK_MESSAGE(rec.verdict == Verdict::pass, rec.check);
}

TEST_CASE("reports serialize deterministically") {
  VerificationReport r("demo", 5);
  CheckRecord c;
  c.check = "x";
  c.verdict = Verdict::pass;
  c.margin = 0.1;
  r.add(c);
  c.verdict = Verdict::inconclusive;
  r.add(c);
  CHECK_FALSE(r.passed());
  CHECK(r.to_json().dump() == r.to_json().dump());
  CHECK(r.to_json()["summary"]["inconclusive"] == 1);
  CHECK(format_double(0.1) == "0.1");
}
