#include "bilip/demos.hpp"

#include <stdexcept>

namespace bilip::demos {

using action::ActionSpec;
using action::GenMap;
using action::Space;

ActionSpec pl_demo() {
  return ActionSpec(Space::interval,
                    {GenMap::pl({{Rational(0), Rational(0)}, {Rational(1, 2), Rational(1, 4)}, {Rational(1), Rational(1)}}),
                     GenMap::pl({{Rational(0), Rational(0)}, {Rational(1, 3), Rational(1, 2)}, {Rational(1), Rational(1)}})});
}

ActionSpec power_demo() { return ActionSpec(Space::interval, {GenMap::power(Rational(1, 2))}); }

ActionSpec mobius_demo() { return ActionSpec(Space::interval, {GenMap::mobius(Rational(3))}); }

ActionSpec circle_demo() {
  return ActionSpec(Space::circle, {GenMap::rotation(Rational(1, 5)), GenMap::circle_mobius(Rational(1, 2))});
}

ActionSpec trivial_action(std::uint32_t m, Space space) {
  if (m == 0) throw std::invalid_argument("trivial action needs m >= 1");
  return ActionSpec(space, std::vector<GenMap>(m, GenMap::identity()));
}

std::vector<Rational> uniform_points(std::size_t n, Space space) {
  if (n < 2) throw std::invalid_argument("need at least two points");
  std::vector<Rational> out;
  const long den = static_cast<long>(space == Space::interval ? n - 1 : n);
  for (std::size_t k = 0; k < n; ++k) out.push_back(make_rational(static_cast<long>(k), den));
  return out;
}

std::vector<std::pair<Rational, Rational>> random_pairs(Rng& rng, const std::vector<Rational>& pool, std::size_t count) {
  if (pool.size() < 2) throw std::invalid_argument("pool too small");
  std::vector<std::pair<Rational, Rational>> out;
  while (out.size() < count) {
    const std::size_t i = rng() % pool.size(), j = rng() % pool.size();
    if (i == j) continue;
    out.emplace_back(pool[std::min(i, j)], pool[std::max(i, j)]);
  }
  return out;
}

std::vector<std::array<Rational, 3>> random_triples(Rng& rng, const std::vector<Rational>& pool, std::size_t count) {
  std::vector<std::array<Rational, 3>> out;
  while (out.size() < count) {
    out.push_back({pool[rng() % pool.size()], pool[rng() % pool.size()], pool[rng() % pool.size()]});
  }
  return out;
}

std::vector<std::pair<lcgroup::Vec, lcgroup::Vec>> random_group_pairs(Rng& rng, const lcgroup::NetGraph& net,
                                                                       std::size_t count) {
  const Rational m = net.half_width() - 4;
  if (!(m > 0)) throw std::invalid_argument("net too small for a guarded domain");
  const long span = static_cast<long>(mpz_class(m * 8).get_si());
  auto coord = [&] { return Rational(static_cast<long>(rng() % static_cast<std::uint64_t>(2 * span + 1)) - span, 8); };
  auto vec = [&] { return lcgroup::Vec{coord(), net.dim() == 2 ? coord() : Rational(0)}; };
  std::vector<std::pair<lcgroup::Vec, lcgroup::Vec>> out;
  while (out.size() < count) {
    const lcgroup::Vec g = vec(), h = vec();
    const lcgroup::Vec gh{Rational(g[0] + h[0]), Rational(g[1] + h[1])};
    if (lcgroup::in_guarded_domain(net, g) && lcgroup::in_guarded_domain(net, h) && lcgroup::in_guarded_domain(net, gh)) {
      out.emplace_back(g, h);
    }
  }
  return out;
}

}  // namespace bilip::demos
