#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "bilip/action1d.hpp"
#include "bilip/conjugacy.hpp"
#include "bilip/freegroup.hpp"
#include "bilip/report.hpp"

namespace bilip::cli {

inline constexpr const char* kVersion = "bilip 1.0.0";

// Malformed configuration; `field` is a JSON-pointer-like path.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct ConjugacySettings {
  conjugacy::Route route = conjugacy::Route::metric;
  std::size_t grid_points = 257;
  std::uint32_t extra = 1;
};

struct VerifySettings {
  std::vector<std::string> suites;  // empty: every suite applicable to the action
  std::size_t axiom_points = 20;
  std::size_t triples = 0;  // 0: all ordered triples of the axiom points
  std::size_t pair_pool = 65;
  std::size_t lipschitz_pairs = 1000;
  std::uint32_t lipschitz_max_length = 3;
  std::size_t tail_pairs = 50;
  std::size_t arcs = 20;
  std::uint32_t quasi_max_length = 2;
  std::vector<Rational> ball_centers{Rational(0), Rational(1, 2)};
  Rational ball_radius{1, 4};
  std::string ball_s;  // weight parameter for ball inclusion; empty: use s
  std::string effectiveness_word = "x0";
  std::size_t effectiveness_pairs = 100;
  Rational effectiveness_spacing{1, 10000};
};

struct LCSettings {
  unsigned d = 2;
  Rational L{30};
  Rational step{1, 4};
  std::size_t subadditivity_pairs = 1000;
  std::string flow = "mobius";
  Rational flow_L{32};
  Rational flow_step{1, 8};
  std::string s0 = "1";
  double window = 20;
  double quad_step = 1.0 / 32;
  std::vector<Rational> times{Rational(-2), Rational(-1), Rational(-1, 2), Rational(1, 2), Rational(1), Rational(2)};
  std::size_t flow_pairs = 100;
};

struct RunConfig {
  action::Space space = action::Space::interval;
  std::vector<action::GenMap> generators;
  std::string s = "1.2";
  std::uint32_t R = 6;
  std::size_t points = 17;
  std::uint64_t seed = 0;
  ConjugacySettings conjugacy;
  VerifySettings verify;
  LCSettings lcgroup;
  Json canonical;    // parsed document, used for hashing
  std::string hash;  // FNV-1a 64 of canonical.dump(), hex

  action::ActionSpec action() const { return action::ActionSpec(space, generators); }
  freegroup::WeightParams params() const { return freegroup::WeightParams::parse(s); }
};

// Throws ConfigError naming the offending field.
RunConfig parse_config(const Json& doc);
RunConfig load_config(const std::filesystem::path& path);

// [num, den] pair, an integer, or a string "p/q".
Rational rational_field(const Json& value, const std::string& field);

std::string fnv1a_hex(const std::string& bytes);

}  // namespace bilip::cli
