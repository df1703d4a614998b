#include "bilip/demos.hpp"
#include "bilip/smoothing.hpp"
#include "helpers.hpp"
#include "oracle_values.hpp"

using namespace bilip;
using namespace bilip::smoothing;
using action::Point;
using action::Space;

TEST_CASE("trivial action: delta_R is the partial weight sum times the base metric") {
  const auto p = freegroup::WeightParams::parse("log(4)");
  const SmoothedMetric m(demos::trivial_action(2), p, 6);
  const Interval s = m.ball().partial_sum(6);
  for (long k = 0; k <= 8; ++k) {
    const Interval d = m.truncated(Point(Rational(0)), Point(Rational(k, 8)));
    const Interval expect = s * Interval(k / 8.0);
    CHECK(d.overlaps(expect));
    CHECK(d.width() < 1e-14);
  }
  const Interval full = m.distance(Point(Rational(0)), Point(Rational(1)));
  CHECK(full.hi() <= freegroup::weight_total(p).hi());
  CHECK(full.lo() <= s.hi());
}

TEST_CASE("diagonal and R = 0") {
  const auto params = freegroup::WeightParams::default_params();
  const SmoothedMetric m(demos::power_demo(), params, 6);
  const Interval d = m.distance(Point(Rational(1, 3)), Point(Rational(1, 3)));
  CHECK(d.lo() == 0.0);
  CHECK(d.hi() >= m.tail().lo());
  const SmoothedMetric m0(demos::mobius_demo(), params, 0);
  const Interval d0 = m0.distance(Point(Rational(1, 4)), Point(Rational(1, 2)));
  CHECK(d0.lo() == 0.25);
  CHECK(testing::encloses(Interval(d0.hi() - 0.25), m0.tail().mid(), 1e-12));
}

TEST_CASE("values against the mpmath oracle") {
  const auto params = freegroup::WeightParams::default_params();
  const SmoothedMetric mob(demos::mobius_demo(), params, 6);
  CHECK(testing::encloses(mob.truncated(Point(Rational(1, 4)), Point(Rational(1, 2))), oracle::MOBIUS3_DELTA_R6));
  const SmoothedMetric pl(demos::pl_demo(), params, 6);
  CHECK(testing::encloses(pl.truncated(Point(Rational(0)), Point(Rational(1, 2))), oracle::PL_DELTA_0_HALF_R6));
  CHECK(testing::encloses(pl.truncated(Point(Rational(0)), Point(Rational(1))), oracle::PL_DELTA_0_ONE_R6));
  CHECK(testing::encloses(pl.truncated(Point(Rational(1, 3)), Point(Rational(2, 3))),
                          oracle::PL_DELTA_THIRD_TWOTHIRDS_R6));
  // Enclosure mode brackets the exact-mode value.
  const SmoothedMetric ple(demos::pl_demo(), params, 6, OrbitMode::enclosure);
  CHECK(testing::encloses(ple.truncated(Point(Rational(0)), Point(Rational(1, 2))), oracle::PL_DELTA_0_HALF_R6));
}

TEST_CASE("PL data stays exact") {
  const SmoothedMetric m(demos::pl_demo(), freegroup::WeightParams::default_params(), 6);
  std::vector<Point> pts{Point(Rational(0)), Point(Rational(1, 3)), Point(Rational(5, 7))};
  for (const auto& p : pts) {
    for (const auto& q : pts) CHECK(m.shells(m.orbit(p), m.orbit(q)).all_exact());
  }
  const auto mat = m.matrix(pts);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(mat[i][i].lo() == 0.0);
    for (std::size_t j = 0; j < 3; ++j) CHECK(mat[i][j].lo() == mat[j][i].lo());
  }
}

TEST_CASE("truncations increase with R and stay within the tail") {
  const auto params = freegroup::WeightParams::default_params();
  const SmoothedMetric m(demos::power_demo(), params, 4, OrbitMode::exact, 6);
  const auto s = m.shells(m.orbit(Point(Rational(1, 5))), m.orbit(Point(Rational(3, 4))));
  for (std::uint32_t r = 0; r < 10; ++r) {
    const Interval a = s.weighted(m.ball(), r), b = s.weighted(m.ball(), r + 1);
    CHECK(a.lo() <= b.hi());
    CHECK(b.lo() <= a.hi() + m.tail(r).hi());
  }
}

TEST_CASE("Lipschitz bound") {
  const auto params = freegroup::WeightParams::default_params();
  CHECK(lipschitz_bound(params, freegroup::InfWord()).is_point());
  CHECK(lipschitz_bound(params, freegroup::InfWord()).lo() == 1.0);
  CHECK(testing::encloses(lipschitz_bound(params, freegroup::InfWord::generator(0)), oracle::EXP_1_2));
  CHECK(testing::encloses(lipschitz_bound(params, freegroup::InfWord::generator(1)), oracle::EXP_3_6));
}

TEST_CASE("smoothed measure") {
  const auto params = freegroup::WeightParams::default_params();
  const SmoothedMeasure nu(demos::pl_demo(), params, 6);
  const SmoothedMetric m(demos::pl_demo(), params, 6);
  // On monotone interval actions the measure of [0,p] is the metric distance.
  for (long k = 0; k <= 10; ++k) {
    const Point p(Rational(k, 10));
    CHECK(nu.mass(Point(Rational(0)), p).lo() == m.truncated(Point(Rational(0)), p).lo());
  }
  // Additivity.
  const Interval a = nu.mass(Point(Rational(0)), Point(Rational(1, 3)));
  const Interval b = nu.mass(Point(Rational(1, 3)), Point(Rational(1)));
  CHECK((a + b).overlaps(nu.total_mass()));
  // Circle: a rotation leaves Lebesgue measure invariant, so nu is S_R times it.
  const action::ActionSpec rot(Space::circle, {action::GenMap::rotation(Rational(1, 5))});
  const SmoothedMeasure nr(rot, params, 6);
  const Interval arc = nr.mass(Point(Rational(9, 10)), Point(Rational(1, 10)));
  CHECK(arc.overlaps(nr.ball().partial_sum(6) * Interval(0.2)));
  CHECK_THROWS(SmoothedMeasure(action::ActionSpec(Space::interval, {action::GenMap::pl({{Rational(0), Rational(1)},
                                                                                         {Rational(1), Rational(0)}})}),
                               params, 2));
}

TEST_CASE("ball cap") {
  CHECK_THROWS_AS(WeightedBall(2u, 30, freegroup::WeightParams::default_params()), std::length_error);
}
