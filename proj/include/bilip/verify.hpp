#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "bilip/conjugacy.hpp"
#include "bilip/report.hpp"
#include "bilip/smoothing.hpp"

namespace bilip::verify {

using action::Point;
using smoothing::SmoothedMetric;

// Pinned tolerance for triangle inequalities on non-rational data.
inline constexpr double kTriangleSlack = 1e-12;

// Symmetry, positivity (delta_R >= base metric), the triangle inequality and
// boundedness (delta_R + T <= weight_total) on `points`. Triangles are all
// ordered triples unless `triples` is given. With rational orbit data the
// triangle inequality is decided exactly, shell by shell.
VerificationReport metric_axioms_check(const SmoothedMetric& m, const std::vector<Point>& points,
                                       const std::vector<std::array<std::size_t, 3>>& triples = {},
                                       double slack = kTriangleSlack);

struct BallInclusionOptions {
  std::size_t max_ball = 2'000'000;
  unsigned max_halvings = 60;
  std::size_t witness_points = 16;
};

struct BallInclusionResult {
  Verdict verdict = Verdict::inconclusive;
  Rational r_prime;          // radius of the base-metric ball found
  std::uint32_t radius_A = 0;  // truncation with T(R_A) < r/2
  Interval tail;
  std::vector<std::pair<Rational, Interval>> witness;  // y and the enclosure of delta(x, y)
  std::string note;
};

// Finds r' with {y : base(x,y) < r'} inside {y : delta(x,y) < r}: pick R_A with
// T(R_A) < r/2, then halve r' from 1 until delta_{R_A}(x,y) + T(R_A) < r at
// the witness points. On the interval every term is monotone in y on each
// side of x, so the two endpoints x +- r' bound the whole ball; on the circle
// the witnesses are a sample.
BallInclusionResult ball_inclusion_search(const SmoothedMetric& m, const Point& x, const Rational& r,
                                          const BallInclusionOptions& opts = {});
CheckRecord to_record(const BallInclusionResult& res, const Point& x, const Rational& r);

// For each word, over all pairs: the tail-slack comparison
//   lo(delta(wp,wq)) <= e^{s||w||} hi(delta(p,q))  (and mirrored)
// and the shifted-radius comparison
//   delta_R(wp,wq) <= e^{s||w||} delta_{R+||w||}(p,q)  (and mirrored).
// The metric's ball must reach R + max ||w||.
VerificationReport lipschitz_ratio_report(const SmoothedMetric& m, const std::vector<freegroup::InfWord>& words,
                                          const std::vector<std::pair<Rational, Rational>>& pairs);

// Raw difference quotients of rho(w) against those of h o rho(w) o h^{-1}
// on the image pairs (h(p), h(q)). Each conjugated quotient must stay below
// e^{s||w||}(1 + slack) with slack = (delta_{R+||w||} - delta_R)/delta_R at
// (p,q), the certified truncation allowance.
VerificationReport smoothing_effectiveness_report(const SmoothedMetric& m, const conjugacy::ConjugacyMap& h,
                                                  const freegroup::InfWord& w,
                                                  const std::vector<std::pair<Rational, Rational>>& pairs);

// delta_{R+2}(p,q) in [delta_R(p,q), delta_R(p,q) + T(R)].
VerificationReport tail_honesty_check(const action::ActionSpec& a, const freegroup::WeightParams& params,
                                      std::uint32_t radius, const std::vector<std::pair<Rational, Rational>>& pairs);

// Independent brute-force oracles at pinned sizes.
VerificationReport sphere_count_oracle(unsigned max_radius = 8);
VerificationReport embedding_oracle(unsigned max_syllables = 4, unsigned max_index = 3, int max_exponent = 2);
VerificationReport oracle_pack(std::uint64_t seed);

// Reduction by repeated scanning for adjacent inverse pairs.
std::string naive_reduce(const std::string& word);

}  // namespace bilip::verify
