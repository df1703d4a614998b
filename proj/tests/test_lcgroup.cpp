#include "bilip/demos.hpp"
#include "bilip/lcgroup.hpp"
#include "helpers.hpp"

using namespace bilip;
using namespace bilip::lcgroup;

TEST_CASE("one-dimensional net") {
  const auto net = build_net(1, Rational(10), Rational(1, 4));
  CHECK(net_invariants_check(net).passed());
  CHECK(net.bfs_distance()[net.origin()] == 0);
  CHECK(net.vertices()[net.origin()] == Vec{Rational(0), Rational(0)});
  // The vertex nearest 9 is reached within 9 steps.
  std::size_t best = 0;
  for (std::size_t i = 0; i < net.vertices().size(); ++i) {
    if (abs(net.vertices()[i][0] - 9) < abs(net.vertices()[best][0] - 9)) best = i;
  }
  CHECK(net.bfs_distance()[best] <= 9);
  CHECK(growth_profile(net)[0] == 1);
}

TEST_CASE("two-dimensional net at small size") {
  const auto net = build_net(2, Rational(8), Rational(1, 4));
  const auto r = net_invariants_check(net);
  CHECK(r.passed());
  std::size_t max_degree = 0;
  for (const auto& adj : net.adjacency()) max_degree = std::max(max_degree, adj.size());
  CHECK(max_degree <= packing_bound(2));
  // Symmetric under g -> -g.
  for (const auto& v : net.vertices()) {
    const Vec neg{Rational(-v[0]), Rational(-v[1])};
    CHECK(net.within(neg, Rational(0)).size() == 1);
  }
}

TEST_CASE("covering repair fills gaps in a sparse vertex set") {
  // A square lattice of spacing 3/2 leaves cell centers at distance > 1.
  std::vector<Vec> sparse{Vec{Rational(0), Rational(0)}};
  for (long i = -4; i <= 4; ++i) {
    for (long j = -4; j <= 4; ++j) {
      if (i != 0 || j != 0) sparse.push_back(Vec{Rational(3 * i, 2), Rational(3 * j, 2)});
    }
  }
  const auto net = net_from_vertices(2, Rational(6), Rational(1, 4), sparse);
  CHECK(net.repair_points() > 0);
  CHECK(net.vertices().size() == sparse.size() + net.repair_points());
  CHECK(net_invariants_check(net).passed());
  // Scanned nets need no repair at these sizes.
  CHECK(build_net(2, Rational(6), Rational(1, 4)).repair_points() == 0);
  CHECK_THROWS(net_from_vertices(2, Rational(6), Rational(1, 4), {Vec{Rational(0), Rational(0)}, Vec{Rational(1), Rational(0)}}));
  CHECK_THROWS(net_from_vertices(2, Rational(6), Rational(1, 4), {Vec{Rational(2), Rational(0)}}));
}

TEST_CASE("norm") {
  const auto net = build_net(1, Rational(12), Rational(1, 8));
  CHECK(lc_norm(net, Vec{Rational(0), Rational(0)}) == 0);
  CHECK(lc_norm(net, Vec{Rational(1, 2), Rational(0)}) == 0);
  CHECK(lc_norm(net, Vec{Rational(1), Rational(0)}) == 0);
  // g = 4: brute-force minimum over vertices within distance 1.
  const Vec g{Rational(4), Rational(0)};
  std::int64_t best = -1;
  for (std::size_t i = 0; i < net.vertices().size(); ++i) {
    if (squared_distance(net.vertices()[i], g) <= 1 && (best < 0 || net.bfs_distance()[i] < best)) {
      best = net.bfs_distance()[i];
    }
  }
  CHECK(lc_norm(net, g) == best);
  CHECK_THROWS_AS(lc_norm(net, Vec{Rational(9), Rational(0)}), std::out_of_range);
  const auto bound = certified_linear_bound(net);
  CHECK(bound.a == Rational(1, 3));
  CHECK(bound.b == Rational(1, 3));
}

TEST_CASE("norm on the closed subgroup R x {0} of R^2") {
  const auto net = build_net(2, Rational(12), Rational(1, 4));
  for (long k = -32; k <= 32; ++k) {
    const Vec g{Rational(k, 4), Rational(0)};
    const auto n = lc_norm(net, g);
    CHECK(Rational(n) >= Rational(abs(g[0]) / 3) - Rational(1, 3));
    CHECK(lc_norm(net, Vec{Rational(-g[0]), Rational(0)}) == n);
  }
}

TEST_CASE("quasi-subadditivity") {
  const auto net = build_net(2, Rational(10), Rational(1, 4));
  std::vector<std::pair<Vec, Vec>> samples{{Vec{Rational(3), Rational(1)}, Vec{Rational(0), Rational(0)}},
                                           {Vec{Rational(0), Rational(0)}, Vec{Rational(-2), Rational(5, 2)}}};
  demos::Rng rng(3);
  for (const auto& s : demos::random_group_pairs(rng, net, 200)) samples.push_back(s);
  const auto r = quasi_subadditivity_check(net, samples);
  CHECK(r.passed());
  CHECK(r.records()[0].values["norm_gh"] == r.records()[0].values["norm_g"]);
}

TEST_CASE("flows") {
  for (auto k : {FlowKind::mobius, FlowKind::circle_mobius, FlowKind::rotation}) {
    const Interval p(0.3);
    const Interval a = flow_apply(k, Interval(0.7), flow_apply(k, Interval(-0.2), p));
    const Interval b = flow_apply(k, Interval(0.5), p);
    CHECK(a.overlaps(b));
    CHECK(flow_apply(k, Interval(0.0), p).contains(0.3));
    CHECK(parse_flow(to_string(k)) == k);
  }
  CHECK(flow_space(FlowKind::mobius) == action::Space::interval);
  CHECK(flow_space(FlowKind::rotation) == action::Space::circle);
}

TEST_CASE("smoothed distance along flows") {
  const auto net = build_net(1, Rational(32), Rational(1, 8));
  LCParams params;
  const auto d = lc_smoothed_distance(params, FlowKind::mobius, net, Interval(0.25), Interval(0.5));
  CHECK(d.enclosure.width() < 0.05);
  CHECK(d.enclosure.contains(d.midpoint));
  // Refinement: halving the step stays inside the reported error.
  LCParams fine = params;
  fine.step /= 2;
  const auto d2 = lc_smoothed_distance(fine, FlowKind::mobius, net, Interval(0.25), Interval(0.5));
  CHECK(std::abs(d2.midpoint - d.midpoint) <= d.quad_error);
  CHECK(d.enclosure.overlaps(d2.enclosure));
  // Equal points.
  const auto z = lc_smoothed_distance(params, FlowKind::mobius, net, Interval(0.4), Interval(0.4));
  CHECK(z.enclosure.lo() == 0.0);
  // Rotation: the integrand is constant, delta = c * arc distance.
  const auto r1 = lc_smoothed_distance(params, FlowKind::rotation, net, Interval(0.1), Interval(0.3));
  const auto r2 = lc_smoothed_distance(params, FlowKind::rotation, net, Interval(0.6), Interval(0.8));
  CHECK(r1.enclosure.overlaps(r2.enclosure));
  // Window beyond the guarded box.
  LCParams wide = params;
  wide.window = 40;
  CHECK_THROWS(lc_smoothed_distance(wide, FlowKind::mobius, net, Interval(0.1), Interval(0.2)));
}

TEST_CASE("flow Lipschitz check") {
  const auto net = build_net(1, Rational(32), Rational(1, 8));
  LCParams params;
  const auto r = lc_lipschitz_check(params, FlowKind::mobius, net, {Rational(0), Rational(1, 2), Rational(-1)},
                                    {{Rational(1, 8), Rational(3, 4)}, {Rational(1, 2), Rational(5, 8)}});
  CHECK(r.passed());
  const auto rot = lc_lipschitz_check(params, FlowKind::rotation, net, {Rational(1)}, {{Rational(1, 8), Rational(1, 2)}});
  CHECK(rot.passed());
}

TEST_CASE("argument validation") {
  CHECK_THROWS(build_net(3, Rational(10), Rational(1, 4)));
  CHECK_THROWS(build_net(1, Rational(4), Rational(1, 4)));
  CHECK_THROWS(build_net(1, Rational(10), Rational(1, 2)));
  CHECK_THROWS(parse_flow("spiral"));
}
