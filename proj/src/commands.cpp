#include "bilip/commands.hpp"

#include <algorithm>
#include <fstream>
#include <memory>

#include "bilip/conjugacy.hpp"
#include "bilip/demos.hpp"
#include "bilip/lcgroup.hpp"
#include "bilip/smoothing.hpp"
#include "bilip/verify.hpp"

namespace bilip::cli {

namespace fs = std::filesystem;
using action::Point;
using freegroup::InfWord;

namespace {

void write_text(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

void write_json(const fs::path& path, const Json& doc) { write_text(path, doc.dump(2) + "\n"); }

// Independent stream per suite so selecting suites does not shift samples.
demos::Rng suite_rng(const RunConfig& cfg, const std::string& suite) {
  return demos::Rng(cfg.seed ^ std::stoull(fnv1a_hex(suite), nullptr, 16));
}

std::vector<InfWord> words_upto(std::uint32_t m, std::uint32_t length, bool identity) {
  std::vector<InfWord> out;
  for (const auto& e : freegroup::enumerate_ball(m, length)) {
    if (identity || !e.word.is_identity()) out.push_back(e.word);
  }
  return out;
}

bool orientation_preserving(const action::ActionSpec& a) {
  for (std::uint32_t i = 0; i < a.generator_count(); ++i) {
    if (!a.generator(i).orientation_preserving()) return false;
  }
  return true;
}

bool applicable(const RunConfig& cfg, const std::string& suite) {
  if (suite == "effectiveness") return cfg.space == action::Space::interval;
  if (suite == "quasi_invariance") return orientation_preserving(cfg.action());
  return true;
}

VerificationReport suite_metric_axioms(const RunConfig& cfg) {
  auto rng = suite_rng(cfg, "metric_axioms");
  const smoothing::SmoothedMetric m(cfg.action(), cfg.params(), cfg.R);
  std::vector<Point> pts;
  for (const Rational& p : demos::uniform_points(cfg.verify.axiom_points, cfg.space)) pts.emplace_back(p);
  std::vector<std::array<std::size_t, 3>> triples;
  for (std::size_t t = 0; t < cfg.verify.triples; ++t) {
    triples.push_back({rng() % pts.size(), rng() % pts.size(), rng() % pts.size()});
  }
  auto r = verify::metric_axioms_check(m, pts, triples);
  return r;
}

VerificationReport suite_lipschitz(const RunConfig& cfg) {
  auto rng = suite_rng(cfg, "lipschitz");
  const auto a = cfg.action();
  const std::uint32_t k = cfg.verify.lipschitz_max_length;
  const smoothing::SmoothedMetric m(a, cfg.params(), cfg.R, smoothing::OrbitMode::enclosure, k);
  const auto pool = demos::uniform_points(cfg.verify.pair_pool, cfg.space);
  return verify::lipschitz_ratio_report(m, words_upto(a.generator_count(), k, true),
                                        demos::random_pairs(rng, pool, cfg.verify.lipschitz_pairs));
}

VerificationReport suite_tail_honesty(const RunConfig& cfg) {
  auto rng = suite_rng(cfg, "tail_honesty");
  const auto pool = demos::uniform_points(cfg.verify.pair_pool, cfg.space);
  return verify::tail_honesty_check(cfg.action(), cfg.params(), cfg.R,
                                    demos::random_pairs(rng, pool, cfg.verify.tail_pairs));
}

VerificationReport suite_ball_inclusion(const RunConfig& cfg) {
  const auto params = cfg.verify.ball_s.empty() ? cfg.params() : freegroup::WeightParams::parse(cfg.verify.ball_s);
  const smoothing::SmoothedMetric m(cfg.action(), params, 0, smoothing::OrbitMode::enclosure);
  VerificationReport report("ball_inclusion", cfg.seed);
  for (const Rational& x : cfg.verify.ball_centers) {
    const auto res = verify::ball_inclusion_search(m, Point(x), cfg.verify.ball_radius);
    report.add(verify::to_record(res, Point(x), cfg.verify.ball_radius));
  }
  report.extra()["s"] = params.label();
  return report;
}

InfWord effectiveness_word(const RunConfig& cfg) {
  InfWord w;
  try {
    w = InfWord::parse(cfg.verify.effectiveness_word);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("/verify/effectiveness_word", e.what());
  }
  if (!w.is_identity() && w.max_index() >= cfg.generators.size()) {
    throw ConfigError("/verify/effectiveness_word", "uses a generator the action does not define");
  }
  return w;
}

VerificationReport suite_effectiveness(const RunConfig& cfg) {
  const InfWord w = effectiveness_word(cfg);
  const auto k = static_cast<std::uint32_t>(freegroup::embedded_length(w));
  auto m = std::make_shared<const smoothing::SmoothedMetric>(cfg.action(), cfg.params(), cfg.R,
                                                             smoothing::OrbitMode::exact, std::max(k, cfg.conjugacy.extra));
  conjugacy::ConjugacyOptions opts;
  opts.grid_points = cfg.conjugacy.grid_points;
  const auto h = conjugacy::conj_metric_interval(m, opts);
  std::vector<std::pair<Rational, Rational>> pairs;
  for (std::size_t i = 0; i < cfg.verify.effectiveness_pairs; ++i) {
    const Rational p = cfg.verify.effectiveness_spacing * static_cast<long>(i);
    const Rational q = cfg.verify.effectiveness_spacing * static_cast<long>(i + 1);
    if (q > 1) throw ConfigError("/verify/effectiveness_pairs", "grid leaves [0, 1]");
    pairs.emplace_back(p, q);
  }
  return verify::smoothing_effectiveness_report(*m, h, w, pairs);
}

VerificationReport suite_quasi_invariance(const RunConfig& cfg) {
  auto rng = suite_rng(cfg, "quasi_invariance");
  const auto a = cfg.action();
  const std::uint32_t k = cfg.verify.quasi_max_length;
  const smoothing::SmoothedMeasure nu(a, cfg.params(), cfg.R, smoothing::OrbitMode::exact, k);
  const auto pool = demos::uniform_points(cfg.verify.pair_pool, cfg.space);
  std::vector<conjugacy::Arc> arcs;
  for (const auto& [p, q] : demos::random_pairs(rng, pool, cfg.verify.arcs)) arcs.push_back({p, q});
  VerificationReport report("quasi_invariance", cfg.seed);
  for (const InfWord& w : words_upto(a.generator_count(), k, false)) {
    report.append(conjugacy::measure_quasi_invariance_check(nu, w, arcs));
  }
  return report;
}

VerificationReport suite_lc_net(const RunConfig& cfg) {
  auto rng = suite_rng(cfg, "lc_net");
  const auto& s = cfg.lcgroup;
  const auto net = lcgroup::build_net(s.d, s.L, s.step);
  VerificationReport report("lc_net", cfg.seed);
  report.append(lcgroup::net_invariants_check(net));
  const auto sub = lcgroup::quasi_subadditivity_check(net, demos::random_group_pairs(rng, net, s.subadditivity_pairs));
  report.append(sub);
  const auto bound = lcgroup::certified_linear_bound(net);
  report.extra()["vertices"] = net.vertices().size();
  report.extra()["max_ratio"] = sub.extra()["max_ratio"];
  report.extra()["linear_bound"] = Json{{"a", bound.a.get_str()}, {"b", bound.b.get_str()}};
  return report;
}

VerificationReport suite_lc_flow(const RunConfig& cfg) {
  auto rng = suite_rng(cfg, "lc_flow");
  const auto& s = cfg.lcgroup;
  const auto flow = lcgroup::parse_flow(s.flow);
  const auto net = lcgroup::build_net(1, s.flow_L, s.flow_step);
  lcgroup::LCParams params;
  params.s0 = enclose(parse_rational(s.s0));
  params.window = s.window;
  params.step = s.quad_step;
  const auto pool = demos::uniform_points(65, lcgroup::flow_space(flow));
  auto r = lcgroup::lc_lipschitz_check(params, flow, net, s.times, demos::random_pairs(rng, pool, s.flow_pairs));
  r.extra()["flow"] = lcgroup::to_string(flow);
  return r;
}

VerificationReport run_suite(const RunConfig& cfg, const std::string& name) {
  VerificationReport r;
  if (name == "oracles") {
    r = verify::oracle_pack(cfg.seed);
  } else if (name == "metric_axioms") {
    r = suite_metric_axioms(cfg);
  } else if (name == "lipschitz") {
    r = suite_lipschitz(cfg);
  } else if (name == "tail_honesty") {
    r = suite_tail_honesty(cfg);
  } else if (name == "ball_inclusion") {
    r = suite_ball_inclusion(cfg);
  } else if (name == "effectiveness") {
    r = suite_effectiveness(cfg);
  } else if (name == "quasi_invariance") {
    r = suite_quasi_invariance(cfg);
  } else if (name == "lc_net") {
    r = suite_lc_net(cfg);
  } else if (name == "lc_flow") {
    r = suite_lc_flow(cfg);
  } else {
    throw ConfigError("/verify/suites", "unknown suite '" + name + "'");
  }
  // Relabel so every report carries its suite name and the run seed.
  VerificationReport out(name, cfg.seed);
  out.append(r);
  out.extra() = r.extra();
  return out;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

Json summary_of(const std::vector<VerificationReport>& reports) {
  std::size_t pass = 0, fail = 0, inconclusive = 0;
  for (const auto& r : reports) {
    pass += r.count(Verdict::pass);
    fail += r.count(Verdict::fail);
    inconclusive += r.count(Verdict::inconclusive);
  }
  return Json{{"records", pass + fail + inconclusive},
              {"pass", pass},
              {"fail", fail},
              {"inconclusive", inconclusive},
              {"passed", fail == 0 && inconclusive == 0}};
}

std::string verify_csv(const std::vector<VerificationReport>& reports) {
  std::string csv = "suite,index,check,verdict,margin\n";
  for (const auto& r : reports) {
    for (std::size_t i = 0; i < r.records().size(); ++i) {
      const auto& rec = r.records()[i];
      csv += r.suite() + "," + std::to_string(i) + "," + csv_escape(rec.check) + "," + to_string(rec.verdict) + "," +
             format_double(rec.margin) + "\n";
    }
  }
  return csv;
}

Json write_verify(const RunConfig& cfg, const fs::path& out, const std::vector<VerificationReport>& reports) {
  Json doc = provenance(cfg);
  doc["summary"] = summary_of(reports);
  doc["suites"] = Json::array();
  for (const auto& r : reports) doc["suites"].push_back(r.to_json());
  write_json(out / "verify.json", doc);
  write_text(out / "verify.csv", verify_csv(reports));
  return doc["summary"];
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"oracles",          "metric_axioms",  "lipschitz",
                                              "tail_honesty",     "ball_inclusion", "effectiveness",
                                              "quasi_invariance", "lc_net",         "lc_flow"};
  return names;
}

Json provenance(const RunConfig& cfg) {
  return Json{{"version", kVersion}, {"config_hash", cfg.hash}, {"seed", cfg.seed}};
}

std::vector<VerificationReport> run_verify_suites(const RunConfig& cfg) {
  std::vector<std::string> selected = cfg.verify.suites;
  if (selected.empty()) {
    for (const auto& n : suite_names()) {
      if (applicable(cfg, n)) selected.push_back(n);
    }
  }
  for (const auto& n : selected) {
    if (std::find(suite_names().begin(), suite_names().end(), n) == suite_names().end()) {
      throw ConfigError("/verify/suites", "unknown suite '" + n + "'");
    }
  }
  std::vector<VerificationReport> reports;
  for (const auto& n : suite_names()) {
    if (std::find(selected.begin(), selected.end(), n) != selected.end()) reports.push_back(run_suite(cfg, n));
  }
  return reports;
}

int cmd_smooth(const RunConfig& cfg, const fs::path& out) {
  const smoothing::SmoothedMetric m(cfg.action(), cfg.params(), cfg.R);
  const auto pts = demos::uniform_points(cfg.points, cfg.space);
  std::vector<smoothing::Orbit> orbits;
  for (const Rational& p : pts) orbits.push_back(m.orbit(Point(p)));
  std::string csv = "i,j,p,q,truncated_lo,truncated_hi,lo,hi\n";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = 0; j < pts.size(); ++j) {
      const auto s = m.shells(orbits[i], orbits[j]);
      const Interval d = s.weighted(m.ball(), cfg.R);
      const Interval full = m.distance_from_shells(s);
      csv += std::to_string(i) + "," + std::to_string(j) + "," + pts[i].get_str() + "," + pts[j].get_str() + "," +
             format_double(d.lo()) + "," + format_double(d.hi()) + "," + format_double(full.lo()) + "," +
             format_double(full.hi()) + "\n";
    }
  }
  write_text(out / "metric.csv", csv);
  Json doc = provenance(cfg);
  doc["action"] = cfg.action().describe();
  doc["s"] = cfg.s;
  doc["R"] = cfg.R;
  doc["ball_words"] = m.ball().size();
  doc["points"] = pts.size();
  doc["tail"] = interval_json(m.tail());
  doc["weight_total"] = interval_json(freegroup::weight_total(cfg.params()));
  doc["partial_sum"] = interval_json(m.ball().partial_sum(cfg.R));
  write_json(out / "smooth.json", doc);
  return 0;
}

int cmd_conjugate(const RunConfig& cfg, const fs::path& out) {
  conjugacy::ConjugacyOptions opts;
  opts.grid_points = cfg.conjugacy.grid_points;
  const auto a = cfg.action();
  std::shared_ptr<const smoothing::SmoothedMetric> metric;
  std::optional<conjugacy::ConjugacyMap> h;
  if (cfg.conjugacy.route == conjugacy::Route::metric) {
    if (cfg.space != action::Space::interval) {
      throw ConfigError("/conjugacy/route", "the metric route needs the interval; use measure on the circle");
    }
    metric = std::make_shared<const smoothing::SmoothedMetric>(a, cfg.params(), cfg.R, smoothing::OrbitMode::exact,
                                                               cfg.conjugacy.extra);
    h = conjugacy::conj_metric_interval(metric, opts);
  } else {
    auto nu = std::make_shared<const smoothing::SmoothedMeasure>(a, cfg.params(), cfg.R, smoothing::OrbitMode::exact,
                                                                 cfg.conjugacy.extra);
    h = conjugacy::conj_measure(nu, opts);
  }
  std::string csv = metric ? "p,h_lo,h_hi,untruncated_lo,untruncated_hi\n" : "p,h_lo,h_hi\n";
  for (std::size_t i = 0; i < h->grid().size(); ++i) {
    const Rational& p = h->grid()[i];
    const Interval& v = h->values()[i];
    csv += p.get_str() + "," + format_double(v.lo()) + "," + format_double(v.hi());
    if (metric) {
      const Interval u = conjugacy::untruncated_enclosure(*metric, Point(p));
      csv += "," + format_double(u.lo()) + "," + format_double(u.hi());
    }
    csv += "\n";
  }
  write_text(out / "conjugacy.csv", csv);
  Json doc = provenance(cfg);
  doc["action"] = a.describe();
  doc["route"] = conjugacy::to_string(h->route());
  doc["s"] = cfg.s;
  doc["R"] = cfg.R;
  doc["grid"] = h->grid().size();
  doc["epsilon"] = interval_json(h->epsilon());
  write_json(out / "conjugacy.json", doc);
  return 0;
}

int cmd_verify(const RunConfig& cfg, const fs::path& out) {
  const auto reports = run_verify_suites(cfg);
  const Json summary = write_verify(cfg, out, reports);
  return summary["passed"].get<bool>() ? 0 : 1;
}

int cmd_lcnet(const RunConfig& cfg, const fs::path& out) {
  const auto& s = cfg.lcgroup;
  const auto net = lcgroup::build_net(s.d, s.L, s.step);
  std::string vcsv = "index,x,y,bfs\n";
  std::string ecsv = "u,v\n";
  for (std::size_t i = 0; i < net.vertices().size(); ++i) {
    const auto& v = net.vertices()[i];
    vcsv += std::to_string(i) + "," + v[0].get_str() + "," + v[1].get_str() + "," +
            std::to_string(net.bfs_distance()[i]) + "\n";
    for (auto j : net.adjacency()[i]) {
      if (i < j) ecsv += std::to_string(i) + "," + std::to_string(j) + "\n";
    }
  }
  write_text(out / "net_vertices.csv", vcsv);
  write_text(out / "net_edges.csv", ecsv);
  const auto checks = suite_lc_net(cfg);
  Json doc = provenance(cfg);
  doc["d"] = s.d;
  doc["L"] = s.L.get_str();
  doc["scan_step"] = s.step.get_str();
  doc["repair_points"] = net.repair_points();
  doc["growth"] = lcgroup::growth_profile(net);
  doc["checks"] = checks.to_json();
  write_json(out / "lcnet.json", doc);
  return checks.passed() ? 0 : 1;
}

int cmd_report(const RunConfig& cfg, const fs::path& out) {
  cmd_smooth(cfg, out);
  cmd_conjugate(cfg, out);
  const auto reports = run_verify_suites(cfg);
  const Json summary = write_verify(cfg, out, reports);
  Json doc = provenance(cfg);
  doc["action"] = cfg.action().describe();
  doc["files"] = Json::array({"smooth.json", "metric.csv", "conjugacy.json", "conjugacy.csv", "verify.json", "verify.csv"});
  doc["summary"] = summary;
  doc["suites"] = Json::array();
  std::string csv = "suite,records,pass,fail,inconclusive,worst_margin\n";
  for (const auto& r : reports) {
    const Json j = r.to_json();
    doc["suites"].push_back(Json{{"suite", r.suite()}, {"summary", j["summary"]}});
    csv += r.suite() + "," + std::to_string(r.records().size()) + "," + std::to_string(r.count(Verdict::pass)) + "," +
           std::to_string(r.count(Verdict::fail)) + "," + std::to_string(r.count(Verdict::inconclusive)) + "," +
           format_double(r.worst_margin()) + "\n";
  }
  write_json(out / "report.json", doc);
  write_text(out / "summary.csv", csv);
  return summary["passed"].get<bool>() ? 0 : 1;
}

}  // namespace bilip::cli
