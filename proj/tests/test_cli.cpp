#include <filesystem>
#include <fstream>
#include <sstream>

#include "bilip/commands.hpp"
#include "bilip/smoothing.hpp"
#include "helpers.hpp"

using namespace bilip;
using namespace bilip::cli;
namespace fs = std::filesystem;

namespace {
Json trivial_doc() {
  return Json::parse(R"j({"space": "interval", "generators": [{"type": "identity"}], "s": "log(4)", "R": 4,
                         "points": 5, "seed": 2})j");
}
std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}
fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("bilip_test_" + name);
  fs::remove_all(p);
  return p;
}
std::string error_field(const Json& doc) {
  try {
    parse_config(doc);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "";
}
}  // namespace

TEST_CASE("config parsing") {
  const auto cfg = parse_config(trivial_doc());
  CHECK(cfg.R == 4);
  CHECK(cfg.generators.size() == 1);
  CHECK(cfg.hash.size() == 16);
  CHECK(rational_field(Json::array({6, 8}), "/x") == Rational(3, 4));
  CHECK(rational_field(Json("2/5"), "/x") == Rational(2, 5));
  CHECK(rational_field(Json(3), "/x") == Rational(3));
}

TEST_CASE("config diagnostics name the field") {
  Json d = trivial_doc();
  d["s"] = "1.0";
  CHECK(error_field(d) == "/s");
  d = trivial_doc();
  d["generators"][0] = Json{{"type", "mobius"}, {"lambda", Json::array({1, 0})}};
  CHECK(error_field(d) == "/generators/0/lambda");
  d = trivial_doc();
  d["generators"][0] = Json{{"type", "spiral"}};
  CHECK(error_field(d) == "/generators/0/type");
  d = trivial_doc();
  d["generators"][0] = Json{{"type", "rotation"}, {"theta", Json::array({1, 5})}};
  CHECK(error_field(d) == "/generators");
  d = trivial_doc();
  d["R"] = -1;
  CHECK(error_field(d) == "/R");
  d = trivial_doc();
  d["colour"] = 1;
  CHECK(error_field(d) == "/colour");
  d = trivial_doc();
  d.erase("space");
  CHECK(error_field(d) == "/space");
  d = trivial_doc();
  d["verify"] = Json{{"ball_radius", Json::array({0, 1})}};
  CHECK(error_field(d) == "/verify/ball_radius");
  d = trivial_doc();
  d["lcgroup"] = Json{{"flow", "spiral"}};
  CHECK(error_field(d) == "/lcgroup");
}

TEST_CASE("hash ignores key order and tracks content") {
  const auto a = parse_config(Json::parse(R"j({"space": "interval", "generators": [{"type": "identity"}], "R": 3})j"));
  const auto b = parse_config(Json::parse(R"j({"R": 3, "generators": [{"type": "identity"}], "space": "interval"})j"));
  const auto c = parse_config(Json::parse(R"j({"R": 4, "generators": [{"type": "identity"}], "space": "interval"})j"));
  CHECK(a.hash == b.hash);
  CHECK(a.hash != c.hash);
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
}

TEST_CASE("smooth: trivial action gives S_R times the base metric") {
  const auto cfg = parse_config(trivial_doc());
  const auto out = scratch("smooth");
  CHECK(cmd_smooth(cfg, out) == 0);
  const Json meta = Json::parse(slurp(out / "smooth.json"));
  CHECK(meta["version"] == kVersion);
  CHECK(meta["config_hash"] == cfg.hash);
  const double s_lo = std::stod(meta["partial_sum"][0].get<std::string>());
  const double s_hi = std::stod(meta["partial_sum"][1].get<std::string>());
  std::istringstream csv(slurp(out / "metric.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "i,j,p,q,truncated_lo,truncated_hi,lo,hi");
  std::size_t rows = 0;
  while (std::getline(csv, line)) {
    std::vector<std::string> f;
    std::stringstream ls(line);
    for (std::string x; std::getline(ls, x, ',');) f.push_back(x);
    const double base = std::abs(parse_rational(f[3]).get_d() - parse_rational(f[2]).get_d());
    CHECK(std::stod(f[4]) <= s_hi * base * (1 + 1e-15));
    CHECK(std::stod(f[5]) >= s_lo * base * (1 - 1e-15));
    ++rows;
  }
  CHECK(rows == 25);
}

TEST_CASE("conjugate: trivial action gives the identity") {
  const auto cfg = parse_config(trivial_doc());
  const auto out = scratch("conjugate");
  CHECK(cmd_conjugate(cfg, out) == 0);
  std::istringstream csv(slurp(out / "conjugacy.csv"));
  std::string line;
  std::getline(csv, line);
  while (std::getline(csv, line)) {
    std::vector<std::string> f;
    std::stringstream ls(line);
    for (std::string x; std::getline(ls, x, ',');) f.push_back(x);
    const double p = parse_rational(f[0]).get_d();
    CHECK(std::stod(f[1]) <= p);
    CHECK(p <= std::stod(f[2]));
  }
}

TEST_CASE("verify is deterministic and reports failures through the exit status") {
  Json d = trivial_doc();
  d["verify"] = Json{{"suites", Json::array({"metric_axioms", "tail_honesty", "lipschitz"})},
                     {"lipschitz_pairs", 50},
                     {"axiom_points", 6}};
  const auto cfg = parse_config(d);
  const auto a = scratch("verify_a"), b = scratch("verify_b");
  CHECK(cmd_verify(cfg, a) == 0);
  CHECK(cmd_verify(cfg, b) == 0);
  CHECK(slurp(a / "verify.json") == slurp(b / "verify.json"));
  CHECK(slurp(a / "verify.csv") == slurp(b / "verify.csv"));
  const Json doc = Json::parse(slurp(a / "verify.json"));
  CHECK(doc["suites"].size() == 3);
  CHECK(doc["config_hash"] == cfg.hash);
  // An impossible ball inclusion (A too large) is inconclusive -> exit 1.
  Json bad = Json::parse(R"j({"space": "interval", "s": "1.2", "R": 2,
      "generators": [{"type": "mobius", "lambda": [3, 1]}, {"type": "mobius", "lambda": [2, 1]}],
      "verify": {"suites": ["ball_inclusion"], "ball_radius": [1, 100]}})j");
  CHECK(cmd_verify(parse_config(bad), scratch("verify_bad")) == 1);
  d["verify"]["suites"] = Json::array({"nonsense"});
  CHECK_THROWS_AS(cmd_verify(parse_config(d), scratch("verify_x")), ConfigError);
}

TEST_CASE("lcnet writes the graph") {
  Json d = trivial_doc();
  d["lcgroup"] = Json{{"d", 1}, {"L", 10}, {"step", Json::array({1, 4})}, {"subadditivity_pairs", 20}};
  const auto out = scratch("lcnet");
  CHECK(cmd_lcnet(parse_config(d), out) == 0);
  CHECK(slurp(out / "net_vertices.csv").rfind("index,x,y,bfs\n0,0,0,0\n", 0) == 0);
  const Json doc = Json::parse(slurp(out / "lcnet.json"));
  CHECK(doc["checks"]["summary"]["passed"] == true);
  CHECK(doc["growth"][0] == 1);
}
