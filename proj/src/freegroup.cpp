#include "bilip/freegroup.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <map>
#include <sstream>
#include <stdexcept>

#include "bilip/real.hpp"

namespace bilip::freegroup {

ReducedWord ReducedWord::reduce(std::span<const Letter> letters) {
  ReducedWord out;
  out.letters_.reserve(letters.size());
  for (const Letter& l : letters) {
    if (l.exponent != 1 && l.exponent != -1) throw std::invalid_argument("letter exponent must be +-1");
    if (!out.letters_.empty() && out.letters_.back() == l.inverse()) {
      out.letters_.pop_back();
    } else {
      out.letters_.push_back(l);
    }
  }
  return out;
}

ReducedWord ReducedWord::parse(std::string_view text) {
  std::vector<Letter> letters;
  letters.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case 'x': letters.push_back({Symbol::x, 1}); break;
      case 'X': letters.push_back({Symbol::x, -1}); break;
      case 't': letters.push_back({Symbol::t, 1}); break;
      case 'T': letters.push_back({Symbol::t, -1}); break;
      case '1':
      case ' ': break;
      default: throw std::invalid_argument(std::string("invalid letter in F2 word: ") + c);
    }
  }
  return reduce(letters);
}

ReducedWord ReducedWord::inverse() const {
  ReducedWord out;
  out.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.letters_.push_back(it->inverse());
  return out;
}

std::string ReducedWord::to_string() const {
  if (letters_.empty()) return "1";
  std::string s;
  s.reserve(letters_.size());
  for (const Letter& l : letters_) {
    const bool inv = l.exponent < 0;
    s += l.symbol == Symbol::x ? (inv ? 'X' : 'x') : (inv ? 'T' : 't');
  }
  return s;
}

ReducedWord operator*(const ReducedWord& u, const ReducedWord& v) {
  // Cancel at the junction only; both halves are already reduced.
  std::size_t cut = 0;
  const std::size_t n = u.letters_.size();
  while (cut < n && cut < v.letters_.size() && u.letters_[n - 1 - cut] == v.letters_[cut].inverse()) ++cut;
  ReducedWord out;
  out.letters_.reserve(n + v.letters_.size() - 2 * cut);
  out.letters_.insert(out.letters_.end(), u.letters_.begin(), u.letters_.end() - static_cast<std::ptrdiff_t>(cut));
  out.letters_.insert(out.letters_.end(), v.letters_.begin() + static_cast<std::ptrdiff_t>(cut), v.letters_.end());
  return out;
}

std::uint64_t sphere_count_f2(unsigned r) {
  if (r == 0) return 1;
  if (r > 40) throw std::overflow_error("sphere_count_f2: radius too large for 64-bit count");
  std::uint64_t c = 4;
  for (unsigned i = 1; i < r; ++i) c *= 3;
  return c;
}

// --- InfWord ---------------------------------------------------------------

InfWord InfWord::from_syllables(std::span<const Syllable> syllables) {
  InfWord out;
  for (const Syllable& s : syllables) {
    if (s.exponent == 0) continue;
    if (!out.syllables_.empty() && out.syllables_.back().index == s.index) {
      out.syllables_.back().exponent += s.exponent;
      if (out.syllables_.back().exponent == 0) out.syllables_.pop_back();
    } else {
      out.syllables_.push_back(s);
    }
  }
  return out;
}

InfWord InfWord::generator(std::uint32_t index, std::int32_t exponent) {
  const Syllable s{index, exponent};
  return from_syllables(std::span<const Syllable>(&s, 1));
}

std::uint64_t InfWord::letter_count() const {
  std::uint64_t k = 0;
  for (const Syllable& s : syllables_) k += static_cast<std::uint64_t>(std::abs(s.exponent));
  return k;
}

std::uint32_t InfWord::max_index() const {
  std::uint32_t m = 0;
  for (const Syllable& s : syllables_) m = std::max(m, s.index);
  return m;
}

InfWord InfWord::inverse() const {
  InfWord out;
  out.syllables_.reserve(syllables_.size());
  for (auto it = syllables_.rbegin(); it != syllables_.rend(); ++it) out.syllables_.push_back({it->index, -it->exponent});
  return out;
}

InfWord operator*(const InfWord& u, const InfWord& v) {
  std::vector<Syllable> all = u.syllables_;
  all.insert(all.end(), v.syllables_.begin(), v.syllables_.end());
  // from_syllables merges at the junction; cancellation cascades through
  // the stack-like merge.
  return InfWord::from_syllables(all);
}

std::string InfWord::to_string() const {
  if (syllables_.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < syllables_.size(); ++i) {
    if (i) os << ' ';
    os << 'x' << syllables_[i].index;
    if (syllables_[i].exponent != 1) os << '^' << syllables_[i].exponent;
  }
  return os.str();
}

InfWord InfWord::parse(std::string_view text) {
  std::vector<Syllable> syl;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto read_int = [&](auto& out) {
    const auto res = std::from_chars(text.data() + i, text.data() + text.size(), out);
    if (res.ec != std::errc()) throw std::invalid_argument("malformed InfWord: " + std::string(text));
    i = static_cast<std::size_t>(res.ptr - text.data());
  };
  skip();
  if (text.substr(i) == "1") return {};
  while (i < text.size()) {
    if (text[i] != 'x') throw std::invalid_argument("malformed InfWord: " + std::string(text));
    ++i;
    std::uint32_t index = 0;
    read_int(index);
    std::int32_t e = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      read_int(e);
    }
    syl.push_back({index, e});
    skip();
  }
  return from_syllables(syl);
}

ReducedWord higman_embed(const InfWord& w) {
  std::vector<Letter> letters;
  for (const Syllable& s : w.syllables()) {
    for (std::uint32_t k = 0; k < s.index; ++k) letters.push_back({Symbol::t, 1});
    const std::int8_t e = s.exponent > 0 ? 1 : -1;
    for (std::int32_t k = 0; k < std::abs(s.exponent); ++k) letters.push_back({Symbol::x, e});
    for (std::uint32_t k = 0; k < s.index; ++k) letters.push_back({Symbol::t, -1});
  }
  return ReducedWord::reduce(letters);
}

std::uint64_t embedded_length(const InfWord& w) {
  const auto& s = w.syllables();
  if (s.empty()) return 0;
  std::uint64_t len = s.front().index + s.back().index + w.letter_count();
  for (std::size_t j = 1; j < s.size(); ++j) {
    len += s[j].index > s[j - 1].index ? s[j].index - s[j - 1].index : s[j - 1].index - s[j].index;
  }
  return len;
}

// --- Ball enumeration -------------------------------------------------------

bool ball_order(const BallEntry& a, const BallEntry& b) {
  if (a.length != b.length) return a.length < b.length;
  return a.word < b.word;
}

namespace {

// Depth-first extension by whole syllables. `open_cost` is the embedded
// length excluding the closing t^{-i_last}.
void extend(std::vector<Syllable>& stack, std::uint64_t open_cost, std::uint32_t index_bound,
            std::uint32_t radius, std::vector<BallEntry>& out) {
  const bool has_last = !stack.empty();
  const std::uint32_t last = has_last ? stack.back().index : 0;
  for (std::uint32_t j = 0; j < index_bound; ++j) {
    if (has_last && j == last) continue;
    const std::uint64_t move = has_last ? (j > last ? j - last : last - j) : j;
    // Cheapest completion uses |e| = 1 and closes with t^{-j}.
    if (open_cost + move + 1 + j > radius) continue;
    for (std::int32_t mag = 1;; ++mag) {
      const std::uint64_t cost = open_cost + move + static_cast<std::uint64_t>(mag);
      if (cost + j > radius) break;
      for (std::int32_t sign : {1, -1}) {
        stack.push_back({j, sign * mag});
        out.push_back({InfWord::from_syllables(stack), static_cast<std::uint32_t>(cost + j)});
        extend(stack, cost, index_bound, radius, out);
        stack.pop_back();
      }
    }
  }
}

}  // namespace

std::vector<BallEntry> enumerate_ball(GeneratorCount m, std::uint32_t radius) {
  if (m && *m == 0) throw std::invalid_argument("enumerate_ball: generator count must be >= 1");
  // x_i alone costs 2i + 1, so larger indices never fit.
  const std::uint32_t reach = radius >= 1 ? (radius - 1) / 2 + 1 : 0;
  const std::uint32_t index_bound = m ? std::min(*m, reach) : reach;
  std::vector<BallEntry> out;
  out.push_back({InfWord{}, 0});
  std::vector<Syllable> stack;
  extend(stack, 0, index_bound, radius, out);
  std::sort(out.begin(), out.end(), ball_order);
  return out;
}

void for_each_in_ball(GeneratorCount m, std::uint32_t radius, const std::function<void(const BallEntry&)>& visit) {
  for (const BallEntry& e : enumerate_ball(m, radius)) visit(e);
}

// --- Weights ----------------------------------------------------------------

WeightParams::WeightParams(Interval s, std::string label) : s_(s), label_(std::move(label)) {
  if (!(s_.lo() > log3().hi())) {
    throw std::invalid_argument("weight parameter s = " + label_ + " must satisfy s > log 3 (series diverges)");
  }
  decay_ = exp(-s_);
}

WeightParams WeightParams::parse(const std::string& text) {
  std::string t;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  }
  if (t.rfind("log(", 0) == 0 && t.size() > 5 && t.back() == ')') {
    const Rational arg = parse_rational(t.substr(4, t.size() - 5));
    if (arg <= 0) throw std::invalid_argument("log argument must be positive: " + text);
    return WeightParams(log(enclose(arg)), t);
  }
  return WeightParams(enclose(parse_rational(t)), t);
}

Interval WeightParams::weight(std::uint64_t n) const {
  if (n == 0) return Interval(1.0);
  return exp(-s_ * Interval(static_cast<double>(n)));
}

namespace {
// f(x) = 1 + 4x / (1 - 3x) is increasing on [0, 1/3).
Interval total_at(double x) {
  const Interval xi(x);
  return Interval(1.0) + Interval(4.0) * xi / (Interval(1.0) - Interval(3.0) * xi);
}
Interval tail_at(double x, std::uint32_t radius) {
  const Interval q = Interval(3.0) * Interval(x);
  Interval qp(1.0);
  for (std::uint32_t i = 0; i <= radius; ++i) qp *= q;
  return Interval(4.0) / Interval(3.0) * qp / (Interval(1.0) - q);
}
}  // namespace

Interval weight_total(const WeightParams& p) {
  return {total_at(p.decay().lo()).lo(), total_at(p.decay().hi()).hi()};
}

Interval weight_tail(const WeightParams& p, std::uint32_t radius, const Interval& diam) {
  if (diam.lo() < 0) throw std::invalid_argument("weight_tail: negative diameter");
  const Interval t(tail_at(p.decay().lo(), radius).lo(), tail_at(p.decay().hi(), radius).hi());
  return t * diam;
}

}  // namespace bilip::freegroup
