#include "bilip/lcgroup.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <stdexcept>

namespace bilip::lcgroup {

namespace {

constexpr double kFilter = 1e-9;

Rational sq(const Rational& x) { return Rational(x * x); }

bool less_vec(const Vec& a, const Vec& b) {
  if (a[0] != b[0]) return a[0] < b[0];
  return a[1] < b[1];
}

Vec neg(const Vec& v) { return {Rational(-v[0]), Rational(-v[1])}; }


}  // namespace

Rational squared_distance(const Vec& a, const Vec& b) { return Rational(sq(a[0] - b[0]) + sq(a[1] - b[1])); }

Vec make_vec(double x, double y) { return {exact_rational(x), exact_rational(y)}; }

unsigned packing_bound(unsigned d) { return d == 1 ? 6 : 48; }

void NetGraph::add_vertex(const Vec& v) {
  const auto idx = static_cast<std::uint32_t>(vertices_.size());
  vertices_.push_back(v);
  coords_.push_back({v[0].get_d(), v[1].get_d()});
  const auto cx = static_cast<std::int64_t>(std::floor(coords_.back()[0]));
  const auto cy = static_cast<std::int64_t>(std::floor(coords_.back()[1]));
  cells_[cell_key(cx, cy)].push_back(idx);
}

std::vector<std::uint32_t> NetGraph::within(const Vec& x, const Rational& radius_sq) const {
  const double r2 = radius_sq.get_d();
  const double xd = x[0].get_d(), yd = x[1].get_d();
  const auto reach = static_cast<std::int64_t>(std::ceil(std::sqrt(r2))) + 1;
  const auto cx = static_cast<std::int64_t>(std::floor(xd));
  const auto cy = static_cast<std::int64_t>(std::floor(yd));
  std::vector<std::uint32_t> out;
  for (std::int64_t i = cx - reach; i <= cx + reach; ++i) {
    for (std::int64_t j = cy - reach; j <= cy + reach; ++j) {
      const auto it = cells_.find(cell_key(i, j));
      if (it == cells_.end()) continue;
      for (std::uint32_t v : it->second) {
        const double dx = coords_[v][0] - xd, dy = coords_[v][1] - yd;
        const double d2 = dx * dx + dy * dy;
        if (d2 < r2 * (1 - kFilter) - kFilter) {
          out.push_back(v);
        } else if (d2 <= r2 * (1 + kFilter) + kFilter && squared_distance(vertices_[v], x) <= radius_sq) {
          out.push_back(v);
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

bool covered(const NetGraph& net, const Vec& x) { return !net.within(x, Rational(1)).empty(); }

bool in_box(const Vec& x, const Rational& L) {
  return abs(x[0]) <= L && abs(x[1]) <= L;
}

std::optional<Vec> circumcenter(const Vec& a, const Vec& b, const Vec& c) {
  const Rational d = 2 * (a[0] * (b[1] - c[1]) + b[0] * (c[1] - a[1]) + c[0] * (a[1] - b[1]));
  if (d == 0) return std::nullopt;
  const Rational na = sq(a[0]) + sq(a[1]);
  const Rational nb = sq(b[0]) + sq(b[1]);
  const Rational nc = sq(c[0]) + sq(c[1]);
  Vec u{Rational((na * (b[1] - c[1]) + nb * (c[1] - a[1]) + nc * (a[1] - b[1])) / d),
        Rational((na * (c[0] - b[0]) + nb * (a[0] - c[0]) + nc * (b[0] - a[0])) / d)};
  return u;
}

// Double-precision circumcenter, for prefiltering.
bool circumcenter_d(const std::array<double, 2>& a, const std::array<double, 2>& b, const std::array<double, 2>& c,
                    std::array<double, 2>& out) {
  const double d = 2 * (a[0] * (b[1] - c[1]) + b[0] * (c[1] - a[1]) + c[0] * (a[1] - b[1]));
  if (std::fabs(d) < 1e-12) return false;
  const double na = a[0] * a[0] + a[1] * a[1], nb = b[0] * b[0] + b[1] * b[1], nc = c[0] * c[0] + c[1] * c[1];
  out = {(na * (b[1] - c[1]) + nb * (c[1] - a[1]) + nc * (a[1] - b[1])) / d,
         (na * (c[0] - b[0]) + nb * (a[0] - c[0]) + nc * (b[0] - a[0])) / d};
  return true;
}

// Squared distance to the nearest vertex in doubles (inf if none nearby).
double nearest_d2(const NetGraph& net, const std::array<double, 2>& x) {
  const auto& cs = net.coords();
  double best = std::numeric_limits<double>::infinity();
  for (std::uint32_t v : net.within(make_vec(x[0], x[1]), Rational(4))) {
    const double dx = cs[v][0] - x[0], dy = cs[v][1] - x[1];
    best = std::min(best, dx * dx + dy * dy);
  }
  return best;
}

// Points where the distance to the vertex set can attain its maximum over
// the box that are farther than 1 from every vertex. `examined` counts the
// candidates looked at.
std::vector<Vec> uncovered_candidates(const NetGraph& net, std::size_t& examined) {
  const Rational& L = net.half_width();
  const auto& vs = net.vertices();
  const auto& cs = net.coords();
  std::vector<Vec> out;
  examined = 0;
  auto consider = [&](const Vec& c) {
    ++examined;
    if (!in_box(c, L)) return;
    if (!covered(net, c)) out.push_back(c);
  };
  auto consider_d = [&](const std::array<double, 2>& cd, auto&& exact) {
    ++examined;
    const double Ld = L.get_d();
    if (std::fabs(cd[0]) > Ld + 1e-6 || std::fabs(cd[1]) > Ld + 1e-6) return;
    if (nearest_d2(net, cd) < 1 - 1e-7) return;
    --examined;
    consider(exact());
  };

  if (net.dim() == 1) {
    std::vector<std::uint32_t> order(vs.size());
    for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return vs[a][0] < vs[b][0]; });
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
      consider({Rational((vs[order[i]][0] + vs[order[i + 1]][0]) / 2), Rational(0)});
    }
    consider({L, Rational(0)});
    consider({Rational(-L), Rational(0)});
  } else {
    // Any uncovered local maximum is at most gap + step/sqrt2 from its nearest
    // vertices, so the defining vertices are at most twice that apart.
    const double reach = 2 * (net.lattice_gap() + net.scan_step().get_d() / std::sqrt(2.0)) + 0.01;
    const Rational reach_sq = exact_rational(reach * reach);
    std::vector<std::vector<std::uint32_t>> near(vs.size());
    for (std::uint32_t u = 0; u < vs.size(); ++u) {
      for (std::uint32_t v : net.within(vs[u], reach_sq)) {
        if (v > u) near[u].push_back(v);
      }
    }
    for (std::uint32_t u = 0; u < vs.size(); ++u) {
      const auto& nu = near[u];
      for (std::size_t i = 0; i < nu.size(); ++i) {
        for (std::size_t j = i + 1; j < nu.size(); ++j) {
          const std::uint32_t v = nu[i], w = nu[j];
          if (!std::binary_search(near[v].begin(), near[v].end(), w)) continue;
          std::array<double, 2> cd{};
          if (!circumcenter_d(cs[u], cs[v], cs[w], cd)) {
            // Nearly collinear triples: decide exactly.
            if (auto c = circumcenter(vs[u], vs[v], vs[w])) consider(*c);
            continue;
          }
          consider_d(cd, [&] { return *circumcenter(vs[u], vs[v], vs[w]); });
        }
      }
      // Boundary points equidistant from u and a neighbor.
      for (std::uint32_t v : nu) {
        for (int axis = 0; axis < 2; ++axis) {
          const int other = 1 - axis;
          if (vs[u][other] == vs[v][other]) continue;
          for (int sign : {1, -1}) {
            const Rational side = sign * L;
            const Rational t = (sq(vs[v][other]) - sq(vs[u][other]) + sq(side - vs[v][axis]) - sq(side - vs[u][axis])) /
                               (2 * (vs[v][other] - vs[u][other]));
            Vec c;
            c[axis] = side;
            c[other] = t;
            consider_d({c[0].get_d(), c[1].get_d()}, [&] { return c; });
          }
        }
      }
    }
    for (int sx : {1, -1}) {
      for (int sy : {1, -1}) consider({Rational(sx * L), Rational(sy * L)});
    }
  }
  std::sort(out.begin(), out.end(), less_vec);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

NetGraph build_net(unsigned d, const Rational& L, const Rational& scan_step) {
  if (d != 1 && d != 2) throw std::invalid_argument("net dimension must be 1 or 2");
  if (L < 5) throw std::invalid_argument("net half-width L must be >= 5");
  if (!(scan_step > 0) || scan_step > Rational(1, 4)) throw std::invalid_argument("scan_step must lie in (0, 1/4]");
  const Rational ratio = L / scan_step;
  if (ratio.get_den() != 1) throw std::invalid_argument("L must be an integer multiple of scan_step");
  if (ratio > 100000) throw std::invalid_argument("lattice too large");
  const long n = ratio.get_num().get_si();
  const mpz_class p = scan_step.get_num(), q = scan_step.get_den();
  // Lattice points k, l are 1-separated iff |k - l|^2 p^2 > q^2.
  const long q2 = mpz_class(q * q).get_si();
  const long p2 = mpz_class(p * p).get_si();

  struct LatticePoint {
    long i, j;
  };
  std::vector<LatticePoint> lattice;
  const long jmax = d == 2 ? n : 0;
  for (long i = -n; i <= n; ++i) {
    for (long j = -jmax; j <= jmax; ++j) lattice.push_back({i, j});
  }
  auto canonical = [](const LatticePoint& k) {
    const bool positive = k.i > 0 || (k.i == 0 && k.j >= 0);
    return positive ? k : LatticePoint{-k.i, -k.j};
  };
  std::sort(lattice.begin(), lattice.end(), [&](const LatticePoint& a, const LatticePoint& b) {
    const long na = a.i * a.i + a.j * a.j, nb = b.i * b.i + b.j * b.j;
    if (na != nb) return na < nb;
    const LatticePoint ca = canonical(a), cb = canonical(b);
    if (ca.i != cb.i) return ca.i < cb.i;
    if (ca.j != cb.j) return ca.j < cb.j;
    // The canonical representative comes first, then its negative.
    return (ca.i == a.i && ca.j == a.j) && !(cb.i == b.i && cb.j == b.j);
  });

  const long cell = static_cast<long>(std::ceil(std::sqrt(static_cast<double>(q2) / static_cast<double>(p2)))) + 1;
  std::map<std::pair<long, long>, std::vector<LatticePoint>> buckets;
  auto bucket_of = [&](long x) { return x >= 0 ? x / cell : -((-x + cell - 1) / cell); };
  NetGraph net;
  net.dim_ = d;
  net.L_ = L;
  net.step_ = scan_step;
  for (const LatticePoint& k : lattice) {
    const long bx = bucket_of(k.i), by = bucket_of(k.j);
    bool separated = true;
    for (long a = bx - 1; a <= bx + 1 && separated; ++a) {
      for (long b = by - 1; b <= by + 1 && separated; ++b) {
        const auto it = buckets.find({a, b});
        if (it == buckets.end()) continue;
        for (const LatticePoint& v : it->second) {
          const long di = k.i - v.i, dj = k.j - v.j;
          if ((di * di + dj * dj) * p2 <= q2) {
            separated = false;
            break;
          }
        }
      }
    }
    if (!separated) continue;
    buckets[{bx, by}].push_back(k);
    net.add_vertex({Rational(scan_step * k.i), Rational(scan_step * k.j)});
  }

  net.finalize();
  return net;
}

NetGraph net_from_vertices(unsigned d, const Rational& L, const Rational& scan_step, const std::vector<Vec>& vertices) {
  if (d != 1 && d != 2) throw std::invalid_argument("net dimension must be 1 or 2");
  if (L < 5) throw std::invalid_argument("net half-width L must be >= 5");
  if (vertices.empty() || vertices[0] != Vec{Rational(0), Rational(0)}) {
    throw std::invalid_argument("the first vertex must be the origin");
  }
  if (!(scan_step > 0) || scan_step > Rational(1, 4)) throw std::invalid_argument("scan_step must lie in (0, 1/4]");
  if (Rational(L / scan_step).get_den() != 1) throw std::invalid_argument("L must be an integer multiple of scan_step");
  NetGraph net;
  net.dim_ = d;
  net.L_ = L;
  net.step_ = scan_step;
  for (Vec v : vertices) {
    v[0].canonicalize();
    v[1].canonicalize();
    if (!in_box(v, L) || (d == 1 && v[1] != 0)) throw std::invalid_argument("vertex outside the domain");
    if (covered(net, v)) throw std::invalid_argument("vertices are not 1-separated");
    net.add_vertex(v);
  }
  // Measure how far the scan lattice is from the given vertices.
  const long n = Rational(L / scan_step).get_num().get_si();
  const double h = scan_step.get_d();
  double gap = 1.0;
  for (long i = -n; i <= n; ++i) {
    for (long j = (d == 1 ? 0 : -n); j <= (d == 1 ? 0 : n); ++j) {
      const std::array<double, 2> x{i * h, j * h};
      double best = std::numeric_limits<double>::infinity();
      for (double r = 2; !std::isfinite(best); r *= 2) {
        for (std::uint32_t v : net.within(make_vec(x[0], x[1]), exact_rational(r * r))) {
          const double dx = net.coords_[v][0] - x[0], dy = net.coords_[v][1] - x[1];
          best = std::min(best, std::sqrt(dx * dx + dy * dy));
        }
      }
      gap = std::max(gap, best * (1 + 1e-12));
    }
  }
  net.lattice_gap_ = gap;
  net.finalize();
  return net;
}

void NetGraph::finalize() {
  // Covering repair: lattice points are covered by maximality, the continuum
  // in between may not be.
  for (;;) {
    std::size_t examined = 0;
    const auto candidates = uncovered_candidates(*this, examined);
    covering_candidates_ = examined;
    std::size_t added = 0;
    for (const Vec& c : candidates) {
      for (const Vec& x : {c, neg(c)}) {
        if (!covered(*this, x)) {
          add_vertex(x);
          ++added;
        }
      }
    }
    repair_points_ += added;
    if (added == 0) break;
  }

  const std::size_t nv = vertices_.size();
  adjacency_.assign(nv, {});
  for (std::uint32_t v = 0; v < nv; ++v) {
    for (std::uint32_t u : within(vertices_[v], Rational(9))) {
      if (u != v) adjacency_[v].push_back(u);
    }
  }
  origin_ = 0;  // the origin is always the first vertex
  bfs_.assign(nv, -1);
  std::deque<std::uint32_t> queue{origin_};
  bfs_[origin_] = 0;
  while (!queue.empty()) {
    const std::uint32_t v = queue.front();
    queue.pop_front();
    for (std::uint32_t u : adjacency_[v]) {
      if (bfs_[u] < 0) {
        bfs_[u] = bfs_[v] + 1;
        queue.push_back(u);
      }
    }
  }
}

VerificationReport net_invariants_check(const NetGraph& net) {
  VerificationReport report("net_invariants", 0);
  const auto& vs = net.vertices();
  const auto& cs = net.coords();
  const std::size_t nv = vs.size();

  {
    std::size_t bad = 0;
    for (std::uint32_t v = 0; v < nv; ++v) {
      if (net.within(vs[v], Rational(1)).size() != 1) ++bad;
    }
    CheckRecord r;
    r.check = "separation";
    r.inputs["vertices"] = nv;
    r.values["violations"] = bad;
    r.verdict = bad == 0 ? Verdict::pass : Verdict::fail;
    report.add(std::move(r));
  }
  {
    std::size_t examined = 0;
    const auto gaps = uncovered_candidates(net, examined);
    CheckRecord r;
    r.check = "covering";
    r.inputs["candidates_examined"] = examined;
    r.values["uncovered"] = gaps.size();
    r.values["repair_points"] = net.repair_points();
    r.verdict = gaps.empty() ? Verdict::pass : Verdict::fail;
    r.note = "maxima of the distance to the vertex set lie at circumcenters, boundary bisector points or corners";
    report.add(std::move(r));
  }
  {
    // Brute force over all pairs against the adjacency lists.
    std::size_t bad = 0, edges = 0;
    const Rational nine(9);
    for (std::uint32_t u = 0; u < nv; ++u) {
      const auto& adj = net.adjacency()[u];
      for (std::uint32_t v = u + 1; v < nv; ++v) {
        const double dx = cs[u][0] - cs[v][0], dy = cs[u][1] - cs[v][1];
        const double d2 = dx * dx + dy * dy;
        bool edge;
        if (d2 < 9 - 1e-7) {
          edge = true;
        } else if (d2 > 9 + 1e-7) {
          edge = false;
        } else {
          edge = squared_distance(vs[u], vs[v]) <= nine;
        }
        edges += edge;
        if (edge != std::binary_search(adj.begin(), adj.end(), v)) ++bad;
      }
    }
    CheckRecord r;
    r.check = "edge_rule";
    r.values["edges"] = edges;
    r.values["violations"] = bad;
    r.verdict = bad == 0 ? Verdict::pass : Verdict::fail;
    report.add(std::move(r));
  }
  {
    std::size_t unreachable = 0;
    for (auto b : net.bfs_distance()) unreachable += b < 0;
    CheckRecord r;
    r.check = "connectivity";
    r.values["unreachable"] = unreachable;
    r.verdict = unreachable == 0 ? Verdict::pass : Verdict::fail;
    report.add(std::move(r));
  }
  {
    std::size_t max_degree = 0;
    for (const auto& adj : net.adjacency()) max_degree = std::max(max_degree, adj.size());
    CheckRecord r;
    r.check = "degree_bound";
    r.values["max_degree"] = max_degree;
    r.values["bound"] = packing_bound(net.dim());
    r.verdict = max_degree <= packing_bound(net.dim()) ? Verdict::pass : Verdict::fail;
    r.margin = static_cast<double>(packing_bound(net.dim())) - static_cast<double>(max_degree);
    report.add(std::move(r));
  }
  {
    // The scan order makes the net symmetric under g -> -g.
    std::size_t bad = 0;
    for (std::uint32_t v = 0; v < nv; ++v) {
      const auto m = net.within(neg(vs[v]), Rational(0));
      if (m.size() != 1 || net.bfs_distance()[m[0]] != net.bfs_distance()[v]) ++bad;
    }
    CheckRecord r;
    r.check = "symmetry";
    r.values["violations"] = bad;
    r.verdict = bad == 0 ? Verdict::pass : Verdict::fail;
    report.add(std::move(r));
  }
  return report;
}

bool in_guarded_domain(const NetGraph& net, const Vec& g) {
  const Rational guard = net.half_width() - 4;
  if (net.dim() == 1 && g[1] != 0) return false;
  return abs(g[0]) <= guard && abs(g[1]) <= guard;
}

std::uint32_t lc_norm(const NetGraph& net, const Vec& g) {
  if (!in_guarded_domain(net, g)) {
    throw std::out_of_range("lc_norm: point outside the guarded domain |g| <= L - 4");
  }
  std::int64_t best = -1;
  for (std::uint32_t v : net.within(g, Rational(1))) {
    const std::int64_t b = net.bfs_distance()[v];
    if (b >= 0 && (best < 0 || b < best)) best = b;
  }
  if (best < 0) throw std::logic_error("lc_norm: point not covered by a reachable vertex");
  return static_cast<std::uint32_t>(best);
}

VerificationReport quasi_subadditivity_check(const NetGraph& net, const std::vector<std::pair<Vec, Vec>>& samples) {
  VerificationReport report("quasi_subadditivity", 0);
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& [g, h] : samples) {
    const Vec gh{Rational(g[0] + h[0]), Rational(g[1] + h[1])};
    const long ng = lc_norm(net, g), nh = lc_norm(net, h), ngh = lc_norm(net, gh);
    const long lhs = std::labs(ngh - ng);
    const long rhs = 3 * nh + 1;
    const double ratio = static_cast<double>(lhs - 1) / std::max(1.0, 3.0 * static_cast<double>(nh));
    worst = std::max(worst, ratio);
    CheckRecord r;
    r.check = "quasi_subadditivity";
    r.inputs["g"] = Json::array({g[0].get_str(), g[1].get_str()});
    r.inputs["h"] = Json::array({h[0].get_str(), h[1].get_str()});
    r.values["norm_g"] = ng;
    r.values["norm_h"] = nh;
    r.values["norm_gh"] = ngh;
    r.verdict = lhs <= rhs ? Verdict::pass : Verdict::fail;
    r.margin = static_cast<double>(rhs - lhs);
    report.add(std::move(r));
  }
  report.extra()["max_ratio"] = format_double(samples.empty() ? 0.0 : worst);
  return report;
}

std::vector<std::uint64_t> growth_profile(const NetGraph& net) {
  std::int64_t radius = 0;
  for (auto b : net.bfs_distance()) radius = std::max(radius, b);
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(radius) + 1, 0);
  for (auto b : net.bfs_distance()) {
    if (b >= 0) ++counts[static_cast<std::size_t>(b)];
  }
  for (std::size_t r = 1; r < counts.size(); ++r) counts[r] += counts[r - 1];
  return counts;
}

LinearNormBound certified_linear_bound(const NetGraph& net) {
  const auto& vs = net.vertices();
  for (std::uint32_t v = 0; v < vs.size(); ++v) {
    const std::int64_t b = net.bfs_distance()[v];
    if (b < 0) continue;
    if (sq(vs[v][0]) + sq(vs[v][1]) > Rational(9 * b * b)) {
      throw std::logic_error("vertex farther than 3 per graph step from the origin");
    }
  }
  return {Rational(1, 3), Rational(1, 3)};
}

// --- Flows and the integral metric ----------------------------------------

std::string to_string(FlowKind k) {
  switch (k) {
    case FlowKind::mobius: return "mobius";
    case FlowKind::circle_mobius: return "circle_mobius";
    case FlowKind::rotation: return "rotation";
  }
  return "?";
}

FlowKind parse_flow(const std::string& text) {
  if (text == "mobius") return FlowKind::mobius;
  if (text == "circle_mobius") return FlowKind::circle_mobius;
  if (text == "rotation") return FlowKind::rotation;
  throw std::invalid_argument("unknown flow '" + text + "' (expected mobius, circle_mobius or rotation)");
}

action::Space flow_space(FlowKind k) { return k == FlowKind::mobius ? action::Space::interval : action::Space::circle; }

namespace {

// `stretch` is exp(time), precomputed by callers that reuse it.
Interval flow_apply_stretch(FlowKind k, const Interval& time, const Interval& stretch, const Interval& p) {
  switch (k) {
    case FlowKind::mobius: {
      const Interval a = action::mobius_unit(std::clamp(p.lo(), 0.0, 1.0), stretch);
      const Interval b = action::mobius_unit(std::clamp(p.hi(), 0.0, 1.0), stretch);
      return clamp(Interval::hull(a, b), 0.0, 1.0);
    }
    case FlowKind::rotation: return p + time;
    case FlowKind::circle_mobius: {
      auto lift = [&](double x) {
        const double kf = std::floor(x);
        return Interval(kf) + action::circle_mobius_unit(Interval(x - kf), stretch);
      };
      const Interval a = lift(p.lo()), b = lift(p.hi());
      return {a.lo(), std::max(a.hi(), b.hi())};
    }
  }
  throw std::logic_error("unknown flow");
}

struct QuadCell {
  Interval time;     // -[t0, t1]: the flow runs backwards in the integrand
  Interval stretch;  // exp(time)
  Interval mid_time;
  Interval mid_stretch;
  Interval factor;  // exp(-2 s0 ||t||) * length / 2
};

std::vector<QuadCell> quadrature_cells(const LCParams& params, const NetGraph& net, double step) {
  if (net.dim() != 1) throw std::invalid_argument("flow integral needs the one-dimensional net");
  const Rational window = exact_rational(params.window);
  if (!(window > 0) || window > net.half_width() - 4) {
    throw std::invalid_argument("quadrature window must lie inside the guarded domain L - 4");
  }
  if (!(step > 0)) throw std::invalid_argument("quadrature step must be positive");
  // ||t|| is constant between consecutive points v +- 1.
  std::vector<Rational> cuts{Rational(-window), window};
  for (const Vec& v : net.vertices()) {
    for (int s : {1, -1}) {
      const Rational c = v[0] + s;
      if (abs(c) < window) cuts.push_back(c);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  const Rational step_q = exact_rational(step);
  std::vector<QuadCell> cells;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const Rational a = cuts[i], b = cuts[i + 1];
    const std::uint32_t norm = lc_norm(net, {Rational((a + b) / 2), Rational(0)});
    const Interval weight = exp(Interval(-2.0) * params.s0 * Interval(static_cast<double>(norm)));
    mpz_class parts;
    const Rational ratio = (b - a) / step_q;
    mpz_cdiv_q(parts.get_mpz_t(), ratio.get_num_mpz_t(), ratio.get_den_mpz_t());
    const long n = std::max(1L, parts.get_si());
    for (long k = 0; k < n; ++k) {
      const Rational t0 = a + (b - a) * k / n, t1 = a + (b - a) * (k + 1) / n;
      QuadCell c;
      c.time = Interval(-enclose(t1).hi(), -enclose(t0).lo());
      c.stretch = exp(c.time);
      c.mid_time = -enclose(Rational((t0 + t1) / 2));
      c.mid_stretch = exp(c.mid_time);
      c.factor = weight * enclose(Rational(t1 - t0)) / Interval(2.0);
      cells.push_back(c);
    }
  }
  return cells;
}

LCDistance integrate(const LCParams& params, FlowKind flow, const std::vector<QuadCell>& cells, const Interval& p,
                     const Interval& q, const Interval& tail) {
  const action::Space space = flow_space(flow);
  Interval sum(0.0);
  double mid = 0, err = 0, mag = 0;
  // Rotations preserve arc length, so their integrand is constant.
  const Interval invariant = action::base_metric(space, Real(p), Real(q)).enclosure();
  for (const QuadCell& c : cells) {
    if (flow == FlowKind::rotation) {
      sum += c.factor * invariant;
      mid += c.factor.mid() * invariant.mid();
      mag += std::fabs(c.factor.mid() * invariant.mid());
      err += c.factor.hi() * invariant.width();
      continue;
    }
    const Interval fp = flow_apply_stretch(flow, c.time, c.stretch, p);
    const Interval fq = flow_apply_stretch(flow, c.time, c.stretch, q);
    const Interval range = action::base_metric(space, Real(fp), Real(fq)).enclosure();
    const Interval mp = flow_apply_stretch(flow, c.mid_time, c.mid_stretch, p);
    const Interval mq = flow_apply_stretch(flow, c.mid_time, c.mid_stretch, q);
    const double m = std::clamp(action::base_metric(space, Real(mp), Real(mq)).enclosure().mid(), range.lo(), range.hi());
    sum += c.factor * range;
    mid += c.factor.mid() * m;
    mag += std::fabs(c.factor.mid() * m);
    err += c.factor.hi() * std::max(range.hi() - m, m - range.lo());
  }
  (void)params;
  // Recursive summation error of the midpoint sum.
  err += 2.0 * static_cast<double>(cells.size() + 1) * std::numeric_limits<double>::epsilon() * mag;
  LCDistance d;
  d.enclosure = {sum.lo(), rounding::add_up(sum.hi(), tail.hi())};
  d.midpoint = mid;
  d.quad_error = err;
  d.tail = tail.hi();
  d.cells = cells.size();
  return d;
}

Interval integral_tail(const LCParams& params, const NetGraph& net) {
  const LinearNormBound nb = certified_linear_bound(net);
  const Interval a = enclose(nb.a), b = enclose(nb.b);
  const Interval two_s0 = Interval(2.0) * params.s0;
  // int_{|t| > T} exp(-2 s0 (a|t| - b)) dt / 2, with the base metric <= 1.
  return exp(two_s0 * b) * exp(-two_s0 * a * Interval(params.window)) / (two_s0 * a);
}

}  // namespace

Interval flow_apply(FlowKind k, const Interval& time, const Interval& point) {
  return flow_apply_stretch(k, time, exp(time), point);
}

LCDistance lc_smoothed_distance(const LCParams& params, FlowKind flow, const NetGraph& net, const Interval& p,
                                const Interval& q) {
  if (!(params.s0.lo() > 0)) throw std::invalid_argument("s0 must be positive");
  const auto cells = quadrature_cells(params, net, params.step);
  return integrate(params, flow, cells, p, q, integral_tail(params, net));
}

VerificationReport lc_lipschitz_check(const LCParams& params, FlowKind flow, const NetGraph& net,
                                      const std::vector<Rational>& times,
                                      const std::vector<std::pair<Rational, Rational>>& pairs) {
  VerificationReport report("lc_lipschitz", 0);
  if (!(params.s0.lo() > 0)) throw std::invalid_argument("s0 must be positive");
  const auto cells = quadrature_cells(params, net, params.step);
  const auto fine = quadrature_cells(params, net, params.step / 2);
  const Interval tail = integral_tail(params, net);
  report.extra()["tail"] = format_double(tail.hi());
  report.extra()["cells"] = cells.size();

  std::vector<LCDistance> base;
  for (const auto& [p, q] : pairs) {
    const LCDistance coarse = integrate(params, flow, cells, enclose(p), enclose(q), tail);
    const LCDistance refined = integrate(params, flow, fine, enclose(p), enclose(q), tail);
    const double shift = std::fabs(coarse.midpoint - refined.midpoint);
    CheckRecord r;
    r.check = "quadrature_refinement";
    r.inputs["p"] = p.get_str();
    r.inputs["q"] = q.get_str();
    r.values["midpoint"] = format_double(coarse.midpoint);
    r.values["midpoint_half_step"] = format_double(refined.midpoint);
    r.values["quad_error"] = format_double(coarse.quad_error);
    r.values["quad_error_half_step"] = format_double(refined.quad_error);
    r.verdict = shift < coarse.quad_error ? Verdict::pass : Verdict::fail;
    r.margin = coarse.quad_error - shift;
    report.add(std::move(r));
    base.push_back(coarse);
  }
  for (const Rational& t : times) {
    const std::uint32_t norm = lc_norm(net, {t, Rational(0)});
    const Interval c = exp(Interval(2.0) * params.s0 + Interval(6.0) * params.s0 * Interval(static_cast<double>(norm)));
    const Interval ti = enclose(t);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const Interval fp = flow_apply(flow, ti, enclose(pairs[k].first));
      const Interval fq = flow_apply(flow, ti, enclose(pairs[k].second));
      const LCDistance moved = integrate(params, flow, cells, fp, fq, tail);
      const Interval& x = moved.enclosure;
      const Interval& y = base[k].enclosure;
      CheckRecord r;
      r.check = "flow_lipschitz";
      r.inputs["t"] = t.get_str();
      r.inputs["p"] = pairs[k].first.get_str();
      r.inputs["q"] = pairs[k].second.get_str();
      r.values["norm_t"] = norm;
      r.values["bound"] = interval_json(c);
      r.values["delta_pq"] = interval_json(y);
      r.values["delta_moved"] = interval_json(x);
      r.verdict = combine(certify_le(x, c * y), certify_le(y, c * x));
      r.margin = std::min((c * y).lo() - x.hi(), (c * x).lo() - y.hi());
      report.add(std::move(r));
    }
  }
  return report;
}

}  // namespace bilip::lcgroup
