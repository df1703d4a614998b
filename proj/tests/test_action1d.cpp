#include <random>

#include "bilip/action1d.hpp"
#include "bilip/demos.hpp"
#include "helpers.hpp"

using namespace bilip;
using namespace bilip::action;
using freegroup::InfWord;

TEST_CASE("generator examples") {
  const auto mob = GenMap::mobius(Rational(3));
  CHECK(mob.apply(Point(Rational(1, 2)), Space::interval) == Point(Rational(3, 4)));
  const auto sq = GenMap::power(Rational(2));
  CHECK(sq.apply(Point(Rational(0)), Space::interval) == Point(Rational(0)));
  CHECK(sq.apply(Point(Rational(1)), Space::interval) == Point(Rational(1)));
  const auto id = GenMap::identity();
  CHECK(id.apply(Point(Rational(2, 7)), Space::interval) == Point(Rational(2, 7)));
}

TEST_CASE("word evaluation examples") {
  const ActionSpec sq(Space::interval, {GenMap::power(Rational(2))});
  CHECK(eval_word(sq, InfWord(), Point(Rational(1, 3))) == Point(Rational(1, 3)));
  const Point r = eval_word(sq, InfWord::generator(0, -1), Point(Rational(1, 2)));
  const Interval e = r.enclosure();
  CHECK(e.contains(std::sqrt(0.5)));
  CHECK(sqr(e).contains(0.5));
  CHECK(e.width() < 1e-15);
  const ActionSpec mob(Space::interval, {GenMap::mobius(Rational(3))});
  CHECK(eval_word(mob, InfWord::generator(0, 2), Point(Rational(1, 2))) == Point(Rational(9, 10)));
  CHECK(GenMap::mobius(Rational(3)).compose_same_family(GenMap::mobius(Rational(3)))->describe() ==
        GenMap::mobius(Rational(9)).describe());
}

TEST_CASE("base metric") {
  CHECK(base_metric(Space::interval, Point(Rational(0)), Point(Rational(1))) == Point(Rational(1)));
  CHECK(base_metric(Space::circle, Point(Rational(1, 10)), Point(Rational(9, 10))) == Point(Rational(1, 5)));
  CHECK(base_metric(Space::circle, Point(Rational(3, 10)), Point(Rational(3, 10))) == Point(Rational(0)));
  CHECK(base_metric(Space::circle, Point(Rational(0)), Point(Rational(1, 2))) == Point(Rational(1, 2)));
}

TEST_CASE("inverse round trip and homomorphism") {
  std::mt19937_64 rng(21);
  const std::vector<ActionSpec> actions{demos::pl_demo(), demos::power_demo(), demos::mobius_demo(),
                                        demos::circle_demo()};
  for (const auto& a : actions) {
    for (int i = 0; i < 200; ++i) {
      std::vector<freegroup::Syllable> syl;
      for (std::size_t k = 0, n = 1 + rng() % 4; k < n; ++k) {
        syl.push_back({static_cast<std::uint32_t>(rng() % a.generator_count()), rng() % 2 ? 1 : -1});
      }
      const InfWord w = InfWord::from_syllables(syl);
      const Rational p = make_rational(static_cast<long>(rng() % 64), 64);
      const Point q = eval_word(a, w, Point(p));
      const Point back = eval_word(a, w.inverse(), q);
      // Exact on rational data; otherwise the enclosure must contain p.
      if (back.is_exact()) {
        CHECK(back.exact() == p);
      } else {
        const Interval e = back.enclosure();
        const double pd = p.get_d();
        CHECK((e.contains(pd) || (a.space() == Space::circle && (e.contains(pd + 1) || e.contains(pd - 1)))));
        CHECK(e.width() < 1e-9);
      }
    }
  }
}

TEST_CASE("PL composition stays PL and exact") {
  const auto a = demos::pl_demo();
  const auto& f = a.generator(0);
  const auto& g = a.generator(1);
  const auto fg = f.compose_same_family(g);
  REQUIRE(fg.has_value());
  for (long k = 0; k <= 48; ++k) {
    const Point p(Rational(k, 48));
    CHECK(fg->apply(p, Space::interval) == f.apply(g.apply(p, Space::interval), Space::interval));
  }
  const auto inv = f.inverse();
  for (long k = 0; k <= 48; ++k) {
    const Point p(Rational(k, 48));
    CHECK(inv.apply(f.apply(p, Space::interval), Space::interval) == p);
  }
}

TEST_CASE("generators are increasing on the interval") {
  for (const auto& a : {demos::pl_demo(), demos::power_demo(), demos::mobius_demo()}) {
    for (std::uint32_t i = 0; i < a.generator_count(); ++i) {
      Interval prev(-1.0);
      for (long k = 0; k <= 100; ++k) {
        const Interval v = a.step(i, 1, Point(Rational(k, 100))).enclosure();
        CHECK(prev.hi() < v.lo());
        prev = v;
      }
    }
  }
}

TEST_CASE("circle maps") {
  const auto a = demos::circle_demo();
  CHECK(a.step(0, 1, Point(Rational(9, 10))) == Point(Rational(1, 10)));
  // The hyperbolic flow fixes 0 and 1/2.
  CHECK(a.step(1, 1, Point(Rational(0))) == Point(Rational(0)));
  CHECK(a.step(1, 1, Point(Rational(1, 2))) == Point(Rational(1, 2)));
  const Interval q = a.step(1, 1, Point(Rational(1, 4))).enclosure();
  CHECK(q.contains(std::atan(std::exp(0.5)) / M_PI));
}

TEST_CASE("validation") {
  CHECK_THROWS(GenMap::pl({{Rational(0), Rational(0)}, {Rational(1, 2), Rational(1, 2)}}));
  CHECK_THROWS(GenMap::power(Rational(-1)));
  CHECK_THROWS(GenMap::mobius(Rational(0)));
  CHECK_THROWS(ActionSpec(Space::interval, {GenMap::rotation(Rational(1, 5))}));
  CHECK_NOTHROW(ActionSpec(Space::circle, {GenMap::power(Rational(2))}));
  CHECK_THROWS(canonical_point(Space::interval, Point(Rational(3, 2))));
  CHECK(canonical_point(Space::circle, Point(Rational(3, 2))) == Point(Rational(1, 2)));
}
