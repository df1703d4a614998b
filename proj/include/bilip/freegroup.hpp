#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bilip/interval.hpp"

namespace bilip::freegroup {

// ---------------------------------------------------------------------------
// F2 = <x, t>
// ---------------------------------------------------------------------------

enum class Symbol : std::uint8_t { x, t };

struct Letter {
  Symbol symbol;
  std::int8_t exponent;  // +1 or -1

  Letter inverse() const { return {symbol, static_cast<std::int8_t>(-exponent)}; }
  friend bool operator==(const Letter&, const Letter&) = default;
};

// Freely reduced word in F2. Serialized over {x, X, t, T}, uppercase being
// the inverse letter.
class ReducedWord {
 public:
  ReducedWord() = default;

  static ReducedWord reduce(std::span<const Letter> letters);
  // Parses and reduces; throws std::invalid_argument on other characters.
  static ReducedWord parse(std::string_view text);

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool is_identity() const { return letters_.empty(); }

  ReducedWord inverse() const;
  std::string to_string() const;

  friend ReducedWord operator*(const ReducedWord& u, const ReducedWord& v);
  friend bool operator==(const ReducedWord&, const ReducedWord&) = default;
  friend auto operator<=>(const ReducedWord& a, const ReducedWord& b) {
    return a.to_string() <=> b.to_string();
  }

 private:
  std::vector<Letter> letters_;
};

inline ReducedWord multiply(const ReducedWord& u, const ReducedWord& v) { return u * v; }
inline ReducedWord invert(const ReducedWord& u) { return u.inverse(); }
inline std::size_t word_length(const ReducedWord& u) { return u.length(); }

// Number of elements of F2 of word length exactly r: 1 for r = 0, else 4*3^(r-1).
std::uint64_t sphere_count_f2(unsigned r);

// ---------------------------------------------------------------------------
// F_inf = <x0, x1, ...>
// ---------------------------------------------------------------------------

struct Syllable {
  std::uint32_t index;
  std::int32_t exponent;  // nonzero

  friend bool operator==(const Syllable&, const Syllable&) = default;
  friend auto operator<=>(const Syllable&, const Syllable&) = default;
};

// Freely reduced word in F_inf stored as syllables x_i^e with adjacent
// syllables of distinct index.
class InfWord {
 public:
  InfWord() = default;

  // Merges equal adjacent indices and drops zero exponents.
  static InfWord from_syllables(std::span<const Syllable> syllables);
  static InfWord generator(std::uint32_t index, std::int32_t exponent = 1);

  const std::vector<Syllable>& syllables() const { return syllables_; }
  bool is_identity() const { return syllables_.empty(); }
  // Number of x-letters after expanding syllables.
  std::uint64_t letter_count() const;
  std::uint32_t max_index() const;

  InfWord inverse() const;
  friend InfWord operator*(const InfWord& u, const InfWord& v);

  // e.g. "x0^2 x1^-1"; the identity is "1".
  std::string to_string() const;
  static InfWord parse(std::string_view text);

  friend bool operator==(const InfWord&, const InfWord&) = default;
  friend auto operator<=>(const InfWord&, const InfWord&) = default;

 private:
  std::vector<Syllable> syllables_;
};

// Image under x_i -> t^i x t^-i.
ReducedWord higman_embed(const InfWord& w);

// Closed-form word length of higman_embed(w): with the syllable-expanded
// letters x_{i_1}^{e_1}...x_{i_k}^{e_k},
//   i_1 + i_k + sum_j |i_j - i_{j-1}| + k.
std::uint64_t embedded_length(const InfWord& w);

struct BallEntry {
  InfWord word;
  std::uint32_t length;  // embedded length
};

// Generator count; std::nullopt means all of F_inf (indices then bounded by
// the radius: 2i + 1 <= R).
using GeneratorCount = std::optional<std::uint32_t>;
inline constexpr GeneratorCount kAllGenerators = std::nullopt;

// Visits every freely reduced word over x_0..x_{m-1} of embedded length
// <= radius exactly once, identity included, in length-lexicographic order.
void for_each_in_ball(GeneratorCount m, std::uint32_t radius,
                      const std::function<void(const BallEntry&)>& visit);
std::vector<BallEntry> enumerate_ball(GeneratorCount m, std::uint32_t radius);

// Length-lexicographic order used by enumerate_ball.
bool ball_order(const BallEntry& a, const BallEntry& b);

// ---------------------------------------------------------------------------
// Weights exp(-s ||g||)
// ---------------------------------------------------------------------------

class WeightParams {
 public:
  // Throws std::invalid_argument unless s > log 3 is certified.
  explicit WeightParams(Interval s, std::string label);
  // Accepts a decimal or p/q literal, or "log(q)" for the natural log of a
  // rational q.
  static WeightParams parse(const std::string& text);
  static WeightParams default_params() { return parse("1.2"); }

  const Interval& s() const { return s_; }
  const std::string& label() const { return label_; }
  // exp(-s)
  const Interval& decay() const { return decay_; }
  // exp(-s * n)
  Interval weight(std::uint64_t n) const;

 private:
  Interval s_;
  Interval decay_;
  std::string label_;
};

// Upper bound for sum_{g in F_inf} exp(-s||g||) via the F2 count:
// 1 + 4e^{-s} / (1 - 3e^{-s}).
Interval weight_total(const WeightParams& p);
// diam * sum_{r > R} 4*3^{r-1} e^{-sr} = diam * (4/3)(3e^{-s})^{R+1} / (1 - 3e^{-s}).
Interval weight_tail(const WeightParams& p, std::uint32_t radius, const Interval& diam = Interval(1.0));

}  // namespace bilip::freegroup
