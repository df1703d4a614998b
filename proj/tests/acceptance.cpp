// One line per acceptance criterion. Exit status 0 iff every criterion passes.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "bilip/commands.hpp"
#include "bilip/conjugacy.hpp"
#include "bilip/demos.hpp"
#include "bilip/lcgroup.hpp"
#include "bilip/smoothing.hpp"
#include "bilip/verify.hpp"

using namespace bilip;
using action::Point;
using freegroup::InfWord;
using smoothing::SmoothedMetric;

namespace {

// Pinned settings.
constexpr std::uint64_t kSeed = 20240611;
constexpr std::uint32_t kR = 6;
constexpr double kSphereSeconds = 10;
constexpr double kEffectivenessSeconds = 60;
constexpr double kNetSeconds = 30;
constexpr double kRawQuotientMin = 40;
constexpr double kConjugatedCap = 3.4;

struct Outcome {
  bool pass = false;
  std::string detail;
};

demos::Rng rng_for(const std::string& name) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : name) h = (h ^ c) * 1099511628211ULL;
  return demos::Rng(kSeed ^ h);
}

std::string summary(const VerificationReport& r) {
  std::ostringstream os;
  os << r.records().size() << " records, " << r.count(Verdict::fail) << " fail, " << r.count(Verdict::inconclusive)
     << " inconclusive";
  return os.str();
}

const freegroup::WeightParams& default_s() {
  static const auto p = freegroup::WeightParams::default_params();
  return p;
}

std::vector<InfWord> words_upto(std::uint32_t m, std::uint32_t k) {
  std::vector<InfWord> out;
  for (const auto& e : freegroup::enumerate_ball(m, k)) out.push_back(e.word);
  return out;
}

Outcome sphere_counts() {
  const auto r = verify::sphere_count_oracle(8);
  return {r.passed(), summary(r)};
}

Outcome embedding() {
  const auto r = verify::embedding_oracle(4, 3, 2);
  std::string distinct;
  for (const auto& rec : r.records()) {
    if (rec.check == "embedding_injective") distinct = ", distinct images " + rec.values["distinct_images"].dump();
  }
  return {r.passed(), summary(r) + distinct};
}

Outcome metric_axioms() {
  std::vector<Point> pts;
  for (long k = 0; k < 20; ++k) pts.emplace_back(make_rational(k, 19));
  const auto pl = verify::metric_axioms_check(SmoothedMetric(demos::pl_demo(), default_s(), kR), pts, {}, 0.0);
  bool exact = true;
  for (const auto& rec : pl.records()) {
    if (rec.check == "triangle") exact = rec.values["decided_exactly"] == 20 * 20 * 20;
  }
  auto rng = rng_for("metric_axioms");
  std::vector<Point> pool;
  for (const Rational& q : demos::uniform_points(65)) pool.emplace_back(q);
  std::vector<std::array<std::size_t, 3>> triples;
  for (int t = 0; t < 200; ++t) triples.push_back({rng() % pool.size(), rng() % pool.size(), rng() % pool.size()});
  const auto pw = verify::metric_axioms_check(SmoothedMetric(demos::power_demo(), default_s(), kR), pool, triples,
                                              verify::kTriangleSlack);
  return {pl.passed() && exact && pw.passed(),
          "PL " + summary(pl) + (exact ? " (exact)" : " (NOT exact)") + "; power " + summary(pw)};
}

Outcome lipschitz() {
  auto rng = rng_for("lipschitz");
  const auto pool = demos::uniform_points(65);
  const auto pairs = demos::random_pairs(rng, pool, 1000);
  bool ok = true;
  std::string detail;
  for (const auto& [name, a] : {std::pair{"PL", demos::pl_demo()}, std::pair{"power", demos::power_demo()}}) {
    const SmoothedMetric m(a, default_s(), kR, smoothing::OrbitMode::enclosure, 3);
    const auto words = words_upto(a.generator_count(), 3);
    const auto r = verify::lipschitz_ratio_report(m, words, pairs);
    ok = ok && r.passed();
    detail += std::string(detail.empty() ? "" : "; ") + name + " " + std::to_string(words.size()) + " words, " +
              summary(r);
  }
  return {ok, detail};
}

Outcome tail_honesty() {
  auto rng = rng_for("tail_honesty");
  const auto pairs = demos::random_pairs(rng, demos::uniform_points(65), 50);
  const auto pl = verify::tail_honesty_check(demos::pl_demo(), default_s(), kR, pairs);
  const auto pw = verify::tail_honesty_check(demos::power_demo(), default_s(), kR, pairs);
  return {pl.passed() && pw.passed(), "PL " + summary(pl) + "; power " + summary(pw)};
}

Outcome trivial_closed_form() {
  constexpr std::uint32_t R = 10, extra = 4;
  const auto log4 = freegroup::WeightParams::parse("log(4)");
  const SmoothedMetric m(demos::trivial_action(2), log4, R, smoothing::OrbitMode::exact, extra);
  const Point p(Rational(0)), q(Rational(1));
  const auto d = m.distance(p, q);
  const Interval total = freegroup::weight_total(log4);
  bool ok = d.hi() <= 5.0 && total.contains(5.0);
  for (std::uint32_t r = 0; r <= R + extra; ++r) {
    const Interval s = m.truncated(p, q, r);
    // Partial sums up to R sit at or below the lower end; all sit below the upper end.
    if (r <= R && s.lo() > d.lo()) ok = false;
    if (s.hi() > d.hi()) ok = false;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "delta(0,1) in [%.17g, %.17g], weight_total 5", d.lo(), d.hi());
  return {ok, buf};
}

Outcome effectiveness() {
  auto m = std::make_shared<const SmoothedMetric>(demos::power_demo(), default_s(), kR, smoothing::OrbitMode::exact, 1);
  const auto h = conjugacy::conj_metric_interval(m);
  std::vector<std::pair<Rational, Rational>> pairs;
  for (long k = 0; k < 100; ++k) pairs.emplace_back(make_rational(k, 10000), make_rational(k + 1, 10000));
  const auto r = verify::smoothing_effectiveness_report(*m, h, InfWord::generator(0), pairs);
  const double raw = std::stod(r.extra()["raw_sup_lower"].get<std::string>());
  const double conj = std::stod(r.extra()["conjugated_sup_upper"].get<std::string>());
  char buf[200];
  std::snprintf(buf, sizeof buf, "raw sup >= %.6g, conjugated sup <= %.6g; ", raw, conj);
  return {r.passed() && raw >= kRawQuotientMin && conj <= kConjugatedCap, buf + summary(r)};
}

Outcome quasi_invariance() {
  auto rng = rng_for("quasi_invariance");
  std::vector<conjugacy::Arc> arcs;
  for (const auto& [p, q] : demos::random_pairs(rng, demos::uniform_points(65), 20)) arcs.push_back({p, q});
  bool ok = true;
  std::string detail;
  for (const auto& [name, a] : {std::pair{"PL", demos::pl_demo()}, std::pair{"power", demos::power_demo()}}) {
    const smoothing::SmoothedMeasure nu(a, default_s(), kR, smoothing::OrbitMode::exact, 2);
    VerificationReport r("quasi_invariance", kSeed);
    for (const InfWord& w : words_upto(a.generator_count(), 2)) {
      r.append(conjugacy::measure_quasi_invariance_check(nu, w, arcs));
    }
    ok = ok && r.passed();
    detail += std::string(detail.empty() ? "" : "; ") + name + " " + summary(r);
  }
  return {ok, detail};
}

Outcome lc_net() {
  auto rng = rng_for("lc_net");
  const auto net = lcgroup::build_net(2, Rational(30), Rational(1, 4));
  const auto inv = lcgroup::net_invariants_check(net);
  const auto sub = lcgroup::quasi_subadditivity_check(net, demos::random_group_pairs(rng, net, 1000));
  std::string degree;
  for (const auto& rec : inv.records()) {
    if (rec.check == "degree_bound") degree = ", max degree " + rec.values["max_degree"].dump() + " <= 48";
  }
  return {inv.passed() && sub.passed() && lcgroup::packing_bound(2) == 48,
          std::to_string(net.vertices().size()) + " vertices" + degree + "; invariants " + summary(inv) +
              "; subadditivity " + summary(sub)};
}

Outcome lc_flow() {
  auto rng = rng_for("lc_flow");
  const auto net = lcgroup::build_net(1, Rational(32), Rational(1, 8));
  lcgroup::LCParams params;
  params.s0 = Interval(1.0);
  const std::vector<Rational> times{Rational(-2), Rational(-1), make_rational(-1, 2),
                                    make_rational(1, 2), Rational(1), Rational(2)};
  const auto r = lcgroup::lc_lipschitz_check(params, lcgroup::FlowKind::mobius, net, times,
                                             demos::random_pairs(rng, demos::uniform_points(65), 100));
  return {r.passed(), summary(r)};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  const auto cfg = cli::load_config(std::filesystem::path(BILIP_SOURCE_DIR) / "configs" / "demo_power.json");
  const auto base = std::filesystem::temp_directory_path() / "bilip_acceptance";
  std::filesystem::remove_all(base);
  const int a = cli::cmd_verify(cfg, base / "a");
  const int b = cli::cmd_verify(cfg, base / "b");
  const bool same = slurp(base / "a" / "verify.json") == slurp(base / "b" / "verify.json") &&
                    slurp(base / "a" / "verify.csv") == slurp(base / "b" / "verify.csv");
  const bool nonempty = !slurp(base / "a" / "verify.json").empty();
  return {same && nonempty, std::string(same ? "byte-identical" : "reports differ") + ", exit codes " +
                                std::to_string(a) + "/" + std::to_string(b)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
    double time_limit;  // seconds, 0 = none
  };
  const std::vector<Criterion> criteria{
      {"sphere counts", sphere_counts, kSphereSeconds},
      {"embedding oracle", embedding, 0},
      {"metric axioms", metric_axioms, 0},
      {"Lipschitz certification", lipschitz, 0},
      {"tail honesty", tail_honesty, 0},
      {"trivial-action closed form", trivial_closed_form, 0},
      {"smoothing effectiveness", effectiveness, kEffectivenessSeconds},
      {"measure quasi-invariance", quasi_invariance, 0},
      {"LC net invariants", lc_net, kNetSeconds},
      {"LC flow Lipschitz", lc_flow, 0},
      {"determinism", determinism, 0},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (criteria[i].time_limit > 0 && secs >= criteria[i].time_limit) {
      o.pass = false;
      o.detail += "; over the time limit";
    }
    std::printf("[%s] %2zu %-28s %7.2fs  %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, secs,
                o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
