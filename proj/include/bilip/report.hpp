#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bilip/interval.hpp"
#include "json.hpp"

namespace bilip {

using Json = nlohmann::ordered_json;

// Outcome of a certified comparison. Overlapping enclosures give
// `inconclusive`, which never counts as a pass.
enum class Verdict { pass, fail, inconclusive };

std::string to_string(Verdict v);

// a <= b for every element of both enclosures.
Verdict certify_le(const Interval& a, const Interval& b);
// a < b for every element.
Verdict certify_lt(const Interval& a, const Interval& b);
// All pass -> pass; any fail -> fail; otherwise inconclusive.
Verdict combine(Verdict a, Verdict b);

struct CheckRecord {
  std::string check;
  Json inputs = Json::object();
  Json values = Json::object();
  Verdict verdict = Verdict::inconclusive;
  double margin = 0.0;  // bound minus attained value, when meaningful
  std::string note;
};

class VerificationReport {
 public:
  VerificationReport() = default;
  VerificationReport(std::string suite, std::uint64_t seed) : suite_(std::move(suite)), seed_(seed) {}

  const std::string& suite() const { return suite_; }
  std::uint64_t seed() const { return seed_; }
  const std::vector<CheckRecord>& records() const { return records_; }

  void add(CheckRecord r) { records_.push_back(std::move(r)); }
  void append(const VerificationReport& other);
  // Extra summary fields shown alongside the counts.
  Json& extra() { return extra_; }
  const Json& extra() const { return extra_; }

  std::size_t count(Verdict v) const;
  bool passed() const { return count(Verdict::fail) == 0 && count(Verdict::inconclusive) == 0; }
  double worst_margin() const;

  Json to_json() const;

 private:
  std::string suite_;
  std::uint64_t seed_ = 0;
  std::vector<CheckRecord> records_;
  Json extra_ = Json::object();
};

// Shortest round-trip decimal for a double.
std::string format_double(double x);
Json interval_json(const Interval& x);

}  // namespace bilip
