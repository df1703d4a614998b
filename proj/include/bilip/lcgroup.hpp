#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "bilip/action1d.hpp"
#include "bilip/real.hpp"
#include "bilip/report.hpp"

namespace bilip::lcgroup {

// Point of R^d, d in {1, 2}; the second coordinate is 0 when d = 1.
using Vec = std::array<Rational, 2>;

// Maximal 1-separated net in the box [-L, L]^d with K the closed unit ball.
class NetGraph {
 public:
  unsigned dim() const { return dim_; }
  const Rational& half_width() const { return L_; }
  double lattice_gap() const { return lattice_gap_; }
  const Rational& scan_step() const { return step_; }
  const std::vector<Vec>& vertices() const { return vertices_; }
  const std::vector<std::array<double, 2>>& coords() const { return coords_; }
  const std::vector<std::vector<std::uint32_t>>& adjacency() const { return adjacency_; }
  // Graph distance from the origin, -1 when unreachable.
  const std::vector<std::int64_t>& bfs_distance() const { return bfs_; }
  std::uint32_t origin() const { return origin_; }
  std::size_t repair_points() const { return repair_points_; }
  // Covering certificate candidates checked in the final repair pass.
  std::size_t covering_candidates() const { return covering_candidates_; }

  // Vertices within Euclidean distance `radius` of x (double prefilter,
  // exact decision).
  std::vector<std::uint32_t> within(const Vec& x, const Rational& radius_sq) const;

 private:
  friend NetGraph build_net(unsigned d, const Rational& L, const Rational& scan_step);
// Starts from a given 1-separated vertex set (origin first) and runs the same
// covering repair; repair points are added in +-pairs.
NetGraph net_from_vertices(unsigned d, const Rational& L, const Rational& scan_step, const std::vector<Vec>& vertices);
  friend NetGraph net_from_vertices(unsigned d, const Rational& L, const Rational& scan_step,
                                    const std::vector<Vec>& vertices);
  void add_vertex(const Vec& v);
  // Covering repair, edges and BFS.
  void finalize();
  static std::int64_t cell_key(std::int64_t cx, std::int64_t cy) { return cx * 1000003 + cy; }

  unsigned dim_ = 1;
  Rational L_;
  Rational step_;
  std::vector<Vec> vertices_;
  std::vector<std::array<double, 2>> coords_;
  std::vector<std::vector<std::uint32_t>> adjacency_;
  std::vector<std::int64_t> bfs_;
  std::uint32_t origin_ = 0;
  std::size_t repair_points_ = 0;
  // Largest distance from a scan lattice point to the vertex set (1 for
  // scanned nets, by maximality).
  double lattice_gap_ = 1.0;
  std::size_t covering_candidates_ = 0;
  std::unordered_map<std::int64_t, std::vector<std::uint32_t>> cells_;
};

// Greedy selection over the lattice scan_step * Z^d in order of distance from
// the origin (each point followed by its negative), then covering repair.
// Requires L >= 5, scan_step <= 1/4 and L an integer multiple of scan_step.
NetGraph build_net(unsigned d, const Rational& L, const Rational& scan_step);
// Starts from a given 1-separated vertex set (origin first) and runs the same
// covering repair; repair points are added in +-pairs.
NetGraph net_from_vertices(unsigned d, const Rational& L, const Rational& scan_step, const std::vector<Vec>& vertices);

Rational squared_distance(const Vec& a, const Vec& b);
Vec make_vec(double x, double y = 0.0);

// Maximum vertex degree for the packing of radius-1/2 balls around the
// neighbors of a vertex: 6 for d = 1, 48 for d = 2.
unsigned packing_bound(unsigned d);

// Separation, covering, edge rule, connectivity and degree, checked
// exhaustively.
VerificationReport net_invariants_check(const NetGraph& net);

// min BFS distance over vertices v with |g - v| <= 1. Throws
// std::out_of_range outside the guarded box max|g_i| <= L - 4.
std::uint32_t lc_norm(const NetGraph& net, const Vec& g);
bool in_guarded_domain(const NetGraph& net, const Vec& g);

VerificationReport quasi_subadditivity_check(const NetGraph& net, const std::vector<std::pair<Vec, Vec>>& samples);

// counts[r] = #{v : d(1, v) <= r}
std::vector<std::uint64_t> growth_profile(const NetGraph& net);

// ||g|| >= a|g| - b on the whole net domain. Any net with K^3 edges has
// |v| <= 3 d(1,v) and |g - v| <= 1, giving a = b = 1/3; the vertices are
// scanned to confirm it.
struct LinearNormBound {
  Rational a;
  Rational b;
};
LinearNormBound certified_linear_bound(const NetGraph& net);

// One-parameter flows f_t, f_t o f_u = f_{t+u}.
enum class FlowKind {
  mobius,         // [0,1]: f_t(p) = e^t p / (1 + (e^t - 1) p)
  circle_mobius,  // circle: tan(pi f_t(p)) = e^t tan(pi p)
  rotation        // circle: f_t(p) = p + t
};
std::string to_string(FlowKind k);
FlowKind parse_flow(const std::string& text);
action::Space flow_space(FlowKind k);

// Encloses {f_t(p) : t in time, p in point}.
Interval flow_apply(FlowKind k, const Interval& time, const Interval& point);

struct LCParams {
  Interval s0 = Interval(1.0);
  double window = 20.0;  // quadrature over [-window, window]
  double step = 1.0 / 32;
};

struct LCDistance {
  Interval enclosure;   // contains delta(p, q)
  double midpoint = 0;  // composite midpoint estimate of the window integral
  double quad_error = 0;
  double tail = 0;
  std::size_t cells = 0;
};

// delta(p,q) = int exp(-2 s0 ||t||) base(f_{-t} p, f_{-t} q) dmu(t) with
// dmu = dt/2 (so mu(K) = 1).
LCDistance lc_smoothed_distance(const LCParams& params, FlowKind flow, const NetGraph& net, const Interval& p,
                                const Interval& q);

VerificationReport lc_lipschitz_check(const LCParams& params, FlowKind flow, const NetGraph& net,
                                      const std::vector<Rational>& times,
                                      const std::vector<std::pair<Rational, Rational>>& pairs);

}  // namespace bilip::lcgroup
