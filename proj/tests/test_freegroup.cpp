#include <random>
#include <set>

#include "bilip/freegroup.hpp"
#include "bilip/smoothing.hpp"
#include "bilip/verify.hpp"
#include "helpers.hpp"
#include "oracle_values.hpp"

using namespace bilip::freegroup;
using bilip::verify::naive_reduce;

namespace {
std::string random_letters(std::mt19937_64& rng, std::size_t n) {
  const char letters[4] = {'x', 'X', 't', 'T'};
  std::string s;
  for (std::size_t i = 0; i < n; ++i) s += letters[rng() % 4];
  return s;
}
std::string shown(const ReducedWord& w) { return w.is_identity() ? "" : w.to_string(); }
}  // namespace

TEST_CASE("reduction examples") {
  CHECK(ReducedWord::parse("xtTX").is_identity());
  CHECK(ReducedWord::parse("xx").length() == 2);
  CHECK(ReducedWord::parse("txXt") == ReducedWord::parse("tt"));
  CHECK((ReducedWord::parse("x") * ReducedWord::parse("X")).is_identity());
  CHECK(ReducedWord::parse("ttx").inverse() == ReducedWord::parse("XTT"));
  CHECK(word_length(ReducedWord::parse("ttxTT")) == 5);
  CHECK_THROWS(ReducedWord::parse("xy"));
}

TEST_CASE("reduction agrees with the naive scanner") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 3000; ++i) {
    const std::string s = random_letters(rng, rng() % 24);
    CHECK(shown(ReducedWord::parse(s)) == naive_reduce(s));
  }
}

TEST_CASE("group laws on random words") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 500; ++i) {
    const auto u = ReducedWord::parse(random_letters(rng, rng() % 10));
    const auto v = ReducedWord::parse(random_letters(rng, rng() % 10));
    const auto w = ReducedWord::parse(random_letters(rng, rng() % 10));
    CHECK((u * v) * w == u * (v * w));
    CHECK((u * u.inverse()).is_identity());
    CHECK((u * v).inverse() == v.inverse() * u.inverse());
    CHECK((u * v).length() <= u.length() + v.length());
  }
}

TEST_CASE("sphere counts") {
  CHECK(sphere_count_f2(0) == 1);
  CHECK(sphere_count_f2(1) == 4);
  CHECK(sphere_count_f2(2) == 12);
  CHECK(sphere_count_f2(8) == 4 * 2187);
}

TEST_CASE("embedding examples") {
  CHECK(higman_embed(InfWord::generator(2)).to_string() == "ttxTT");
  CHECK(embedded_length(InfWord::generator(2)) == 5);
  const InfWord x0x1 = InfWord::generator(0) * InfWord::generator(1);
  CHECK(higman_embed(x0x1).to_string() == "xtxT");
  CHECK(embedded_length(x0x1) == 4);
  const InfWord x1x1 = InfWord::generator(1) * InfWord::generator(1);
  CHECK(x1x1 == InfWord::generator(1, 2));
  CHECK(higman_embed(x1x1).to_string() == "txxT");
  CHECK(embedded_length(x1x1) == 4);
}

TEST_CASE("embedding is a homomorphism and preserves inverses") {
  std::mt19937_64 rng(13);
  auto random_word = [&] {
    std::vector<Syllable> s;
    for (std::size_t i = 0, n = rng() % 5; i < n; ++i) {
      s.push_back({static_cast<std::uint32_t>(rng() % 4), static_cast<std::int32_t>(rng() % 5) - 2});
    }
    return InfWord::from_syllables(s);
  };
  for (int i = 0; i < 400; ++i) {
    const InfWord u = random_word(), v = random_word();
    CHECK(higman_embed(u * v) == higman_embed(u) * higman_embed(v));
    CHECK(higman_embed(u.inverse()) == higman_embed(u).inverse());
    CHECK(embedded_length(u) == embedded_length(u.inverse()));
    CHECK(embedded_length(u) == higman_embed(u).length());
    CHECK(InfWord::parse(u.to_string()) == u);
  }
}

TEST_CASE("ball enumeration") {
  CHECK(enumerate_ball(1u, 0).size() == 1);
  CHECK(enumerate_ball(1u, 3).size() == oracle::BALL_M1_R3);
  CHECK(enumerate_ball(2u, 3).size() == oracle::BALL_M2_R3);
  CHECK(enumerate_ball(2u, 6).size() == oracle::BALL_M2_R6);
  CHECK(enumerate_ball(2u, 8).size() == oracle::BALL_M2_R8);
  const auto ball4 = enumerate_ball(2u, 4);
  CHECK(ball4.size() == oracle::BALL_M2_R4);
  std::set<InfWord> words;
  for (const auto& e : ball4) {
    words.insert(e.word);
    CHECK(e.length == embedded_length(e.word));
  }
  CHECK(words.count(InfWord::generator(0) * InfWord::generator(1)) == 1);
  CHECK(words.count(InfWord::generator(1) * InfWord::generator(0)) == 1);
  CHECK(words.count(InfWord::generator(1, 3)) == 0);
  CHECK(std::is_sorted(ball4.begin(), ball4.end(), ball_order));
  for (std::uint32_t r = 0; r <= 12; ++r) {
    CHECK(bilip::smoothing::ball_size(2u, r) == enumerate_ball(2u, r).size());
    CHECK(bilip::smoothing::ball_size(kAllGenerators, r) == enumerate_ball(kAllGenerators, r).size());
  }
}

TEST_CASE("weights") {
  const auto log4 = WeightParams::parse("log(4)");
  CHECK(testing::encloses(weight_total(log4), oracle::WEIGHT_TOTAL_LOG4));
  CHECK(testing::encloses(weight_tail(log4, 0), oracle::TAIL_LOG4_R0));
  CHECK(testing::encloses(weight_tail(log4, 6), oracle::TAIL_LOG4_R6));
  const auto p = WeightParams::default_params();
  CHECK(testing::encloses(weight_total(p), oracle::WEIGHT_TOTAL_1_2));
  CHECK(testing::encloses(weight_tail(p, 6), oracle::TAIL_1_2_R6));
  double prev = weight_tail(p, 0).hi();
  for (std::uint32_t r = 1; r < 200; ++r) {
    CHECK(weight_tail(p, r).hi() < prev);
    prev = weight_tail(p, r).hi();
  }
  CHECK(prev < 1e-6);
  CHECK_THROWS(WeightParams::parse("1.0"));
  CHECK_THROWS(WeightParams::parse("log(3)"));
}

TEST_CASE("partial sums of the F2 ball approach the closed form") {
  const auto log4 = WeightParams::parse("log(4)");
  // Over F2 the shell sizes are exactly the sphere counts.
  for (std::uint32_t r = 0; r <= 10; ++r) {
    bilip::Interval s(0.0);
    for (std::uint32_t n = 0; n <= r; ++n) s += bilip::Interval(double(sphere_count_f2(n))) * log4.weight(n);
    CHECK(testing::encloses(s + weight_tail(log4, r), oracle::WEIGHT_TOTAL_LOG4, 1e-14));
  }
}
