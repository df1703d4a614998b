#include "bilip/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

namespace bilip {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

Verdict certify_le(const Interval& a, const Interval& b) {
  if (a.hi() <= b.lo()) return Verdict::pass;
  if (a.lo() > b.hi()) return Verdict::fail;
  return Verdict::inconclusive;
}

Verdict certify_lt(const Interval& a, const Interval& b) {
  if (a.hi() < b.lo()) return Verdict::pass;
  if (a.lo() >= b.hi()) return Verdict::fail;
  return Verdict::inconclusive;
}

Verdict combine(Verdict a, Verdict b) {
  if (a == Verdict::fail || b == Verdict::fail) return Verdict::fail;
  if (a == Verdict::inconclusive || b == Verdict::inconclusive) return Verdict::inconclusive;
  return Verdict::pass;
}

void VerificationReport::append(const VerificationReport& other) {
  records_.insert(records_.end(), other.records_.begin(), other.records_.end());
}

std::size_t VerificationReport::count(Verdict v) const {
  return static_cast<std::size_t>(
      std::count_if(records_.begin(), records_.end(), [v](const CheckRecord& r) { return r.verdict == v; }));
}

double VerificationReport::worst_margin() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& r : records_) m = std::min(m, r.margin);
  return records_.empty() ? 0.0 : m;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

Json interval_json(const Interval& x) { return Json::array({format_double(x.lo()), format_double(x.hi())}); }

Json VerificationReport::to_json() const {
  Json j;
  j["suite"] = suite_;
  j["seed"] = seed_;
  Json summary;
  summary["records"] = records_.size();
  summary["pass"] = count(Verdict::pass);
  summary["fail"] = count(Verdict::fail);
  summary["inconclusive"] = count(Verdict::inconclusive);
  summary["worst_margin"] = format_double(worst_margin());
  summary["passed"] = passed();
  for (auto it = extra_.begin(); it != extra_.end(); ++it) summary[it.key()] = it.value();
  j["summary"] = summary;
  Json recs = Json::array();
  for (const auto& r : records_) {
    Json e;
    e["check"] = r.check;
    e["inputs"] = r.inputs;
    e["values"] = r.values;
    e["verdict"] = to_string(r.verdict);
    e["margin"] = format_double(r.margin);
    if (!r.note.empty()) e["note"] = r.note;
    recs.push_back(std::move(e));
  }
  j["records"] = std::move(recs);
  return j;
}

}  // namespace bilip
