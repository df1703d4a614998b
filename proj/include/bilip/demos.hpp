#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "bilip/action1d.hpp"
#include "bilip/lcgroup.hpp"

namespace bilip::demos {

// x0 = PL (0,0) (1/2,1/4) (1,1), x1 = PL (0,0) (1/3,1/2) (1,1) on [0,1].
action::ActionSpec pl_demo();
// Z-action generated by p -> sqrt(p).
action::ActionSpec power_demo();
// x0 = Mobius{lambda = 3}.
action::ActionSpec mobius_demo();
// Rotation by 1/5 and the circle Mobius map at time 1/2.
action::ActionSpec circle_demo();
// m identity generators on the given space.
action::ActionSpec trivial_action(std::uint32_t m = 1, action::Space space = action::Space::interval);

// k / (n - 1) for k = 0..n-1 (k / n for k = 0..n-1 on the circle).
std::vector<Rational> uniform_points(std::size_t n, action::Space space = action::Space::interval);

// Seeded sampling. The generator is consumed with `% n`, which is
// reproducible across platforms.
using Rng = std::mt19937_64;
std::vector<std::pair<Rational, Rational>> random_pairs(Rng& rng, const std::vector<Rational>& pool, std::size_t count);
std::vector<std::array<Rational, 3>> random_triples(Rng& rng, const std::vector<Rational>& pool, std::size_t count);
// Pairs (g, h) on the 1/8 lattice with g, h and g + h in the guarded box.
std::vector<std::pair<lcgroup::Vec, lcgroup::Vec>> random_group_pairs(Rng& rng, const lcgroup::NetGraph& net,
                                                                       std::size_t count);

}  // namespace bilip::demos
