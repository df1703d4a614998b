#include "bilip/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "bilip/lcgroup.hpp"

namespace bilip::cli {

namespace {

const Json& require(const Json& obj, const std::string& key, const std::string& path) {
  if (!obj.contains(key)) throw ConfigError(path + "/" + key, "missing");
  return obj.at(key);
}

template <class T>
T integer_field(const Json& v, const std::string& field, T lo, T hi) {
  if (!v.is_number_integer()) throw ConfigError(field, "expected an integer");
  const auto x = v.get<std::int64_t>();
  if (x < static_cast<std::int64_t>(lo) || (hi != T{} && x > static_cast<std::int64_t>(hi))) {
    throw ConfigError(field, "out of range");
  }
  return static_cast<T>(x);
}

std::string string_field(const Json& v, const std::string& field) {
  if (!v.is_string()) throw ConfigError(field, "expected a string");
  return v.get<std::string>();
}

double number_field(const Json& v, const std::string& field) {
  if (!v.is_number()) throw ConfigError(field, "expected a number");
  return v.get<double>();
}

void check_keys(const Json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(path.empty() ? "/" : path, "expected an object");
  for (const auto& [k, v] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) throw ConfigError(path + "/" + k, "unknown key");
  }
}

action::GenMap generator(const Json& g, const std::string& path) {
  const std::string type = string_field(require(g, "type", path), path + "/type");
  try {
    if (type == "pl") {
      check_keys(g, path, {"type", "points"});
      const Json& pts = require(g, "points", path);
      if (!pts.is_array()) throw ConfigError(path + "/points", "expected an array of [x, y]");
      std::vector<std::pair<Rational, Rational>> bp;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        const std::string f = path + "/points/" + std::to_string(i);
        if (!pts[i].is_array() || pts[i].size() != 2) throw ConfigError(f, "expected [x, y]");
        bp.emplace_back(rational_field(pts[i][0], f + "/0"), rational_field(pts[i][1], f + "/1"));
      }
      return action::GenMap::pl(std::move(bp));
    }
    auto single = [&](const char* key) {
      check_keys(g, path, {"type", key});
      return rational_field(require(g, key, path), path + "/" + key);
    };
    if (type == "power") return action::GenMap::power(single("alpha"));
    if (type == "mobius") return action::GenMap::mobius(single("lambda"));
    if (type == "rotation") return action::GenMap::rotation(single("theta"));
    if (type == "circle_mobius") return action::GenMap::circle_mobius(single("t"));
    if (type == "identity") {
      check_keys(g, path, {"type"});
      return action::GenMap::identity();
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path, e.what());
  }
  throw ConfigError(path + "/type", "unknown generator type '" + type + "'");
}

std::vector<Rational> rational_list(const Json& v, const std::string& field) {
  if (!v.is_array()) throw ConfigError(field, "expected an array");
  std::vector<Rational> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(rational_field(v[i], field + "/" + std::to_string(i)));
  return out;
}

void parse_verify(const Json& v, VerifySettings& out) {
  const std::string p = "/verify";
  check_keys(v, p,
             {"suites", "axiom_points", "triples", "pair_pool", "lipschitz_pairs", "lipschitz_max_length", "tail_pairs",
              "arcs", "quasi_max_length", "ball_centers", "ball_radius", "ball_s", "effectiveness_word",
              "effectiveness_pairs", "effectiveness_spacing"});
  if (v.contains("suites")) {
    if (!v["suites"].is_array()) throw ConfigError(p + "/suites", "expected an array of names");
    for (std::size_t i = 0; i < v["suites"].size(); ++i) {
      out.suites.push_back(string_field(v["suites"][i], p + "/suites/" + std::to_string(i)));
    }
  }
  auto sz = [&](const char* k, std::size_t& dst, std::size_t lo) {
    if (v.contains(k)) dst = integer_field<std::size_t>(v[k], p + "/" + k, lo, 0);
  };
  sz("axiom_points", out.axiom_points, 2);
  sz("triples", out.triples, 0);
  sz("pair_pool", out.pair_pool, 2);
  sz("lipschitz_pairs", out.lipschitz_pairs, 1);
  sz("tail_pairs", out.tail_pairs, 1);
  sz("arcs", out.arcs, 1);
  sz("effectiveness_pairs", out.effectiveness_pairs, 1);
  if (v.contains("lipschitz_max_length"))
    out.lipschitz_max_length = integer_field<std::uint32_t>(v["lipschitz_max_length"], p + "/lipschitz_max_length", 0, 8);
  if (v.contains("quasi_max_length"))
    out.quasi_max_length = integer_field<std::uint32_t>(v["quasi_max_length"], p + "/quasi_max_length", 0, 8);
  if (v.contains("ball_centers")) out.ball_centers = rational_list(v["ball_centers"], p + "/ball_centers");
  if (v.contains("ball_radius")) {
    out.ball_radius = rational_field(v["ball_radius"], p + "/ball_radius");
    if (!(out.ball_radius > 0)) throw ConfigError(p + "/ball_radius", "must be positive");
  }
  if (v.contains("ball_s")) out.ball_s = string_field(v["ball_s"], p + "/ball_s");
  if (v.contains("effectiveness_word")) out.effectiveness_word = string_field(v["effectiveness_word"], p + "/effectiveness_word");
  if (v.contains("effectiveness_spacing")) {
    out.effectiveness_spacing = rational_field(v["effectiveness_spacing"], p + "/effectiveness_spacing");
    if (!(out.effectiveness_spacing > 0)) throw ConfigError(p + "/effectiveness_spacing", "must be positive");
  }
}

void parse_lcgroup(const Json& v, LCSettings& out) {
  const std::string p = "/lcgroup";
  check_keys(v, p,
             {"d", "L", "step", "subadditivity_pairs", "flow", "flow_L", "flow_step", "s0", "window", "quad_step", "times",
              "flow_pairs"});
  if (v.contains("d")) out.d = integer_field<unsigned>(v["d"], p + "/d", 1, 2);
  if (v.contains("L")) out.L = rational_field(v["L"], p + "/L");
  if (v.contains("step")) out.step = rational_field(v["step"], p + "/step");
  if (v.contains("subadditivity_pairs"))
    out.subadditivity_pairs = integer_field<std::size_t>(v["subadditivity_pairs"], p + "/subadditivity_pairs", 1, 0);
  if (v.contains("flow")) out.flow = string_field(v["flow"], p + "/flow");
  if (v.contains("flow_L")) out.flow_L = rational_field(v["flow_L"], p + "/flow_L");
  if (v.contains("flow_step")) out.flow_step = rational_field(v["flow_step"], p + "/flow_step");
  if (v.contains("s0")) out.s0 = string_field(v["s0"], p + "/s0");
  if (v.contains("window")) out.window = number_field(v["window"], p + "/window");
  if (v.contains("quad_step")) out.quad_step = number_field(v["quad_step"], p + "/quad_step");
  if (v.contains("times")) out.times = rational_list(v["times"], p + "/times");
  if (v.contains("flow_pairs")) out.flow_pairs = integer_field<std::size_t>(v["flow_pairs"], p + "/flow_pairs", 1, 0);
  try {
    (void)lcgroup::parse_flow(out.flow);
    if (!(parse_rational(out.s0) > 0)) throw std::invalid_argument("s0 must be positive");
  } catch (const std::invalid_argument& e) {
    throw ConfigError(p, e.what());
  }
  if (out.window <= 0) throw ConfigError(p + "/window", "must be positive");
  if (out.quad_step <= 0) throw ConfigError(p + "/quad_step", "must be positive");
}

}  // namespace

Rational rational_field(const Json& value, const std::string& field) {
  try {
    if (value.is_number_integer()) return Rational(mpz_class(value.dump()));
    if (value.is_string()) return parse_rational(value.get<std::string>());
    if (value.is_array() && value.size() == 2 && value[0].is_number_integer() && value[1].is_number_integer()) {
      if (value[1].get<std::int64_t>() == 0) throw ConfigError(field, "zero denominator");
      Rational q(mpz_class(value[0].dump()), mpz_class(value[1].dump()));
      q.canonicalize();
      return q;
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(field, e.what());
  }
  throw ConfigError(field, "expected a rational as [numerator, denominator]");
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

RunConfig parse_config(const Json& doc) {
  RunConfig cfg;
  check_keys(doc, "", {"space", "generators", "s", "R", "points", "seed", "conjugacy", "verify", "lcgroup"});
  try {
    cfg.space = action::parse_space(string_field(require(doc, "space", ""), "/space"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError("/space", e.what());
  }
  const Json& gens = require(doc, "generators", "");
  if (!gens.is_array() || gens.empty()) throw ConfigError("/generators", "expected a non-empty array");
  for (std::size_t i = 0; i < gens.size(); ++i) {
    cfg.generators.push_back(generator(gens[i], "/generators/" + std::to_string(i)));
  }
  try {
    (void)cfg.action();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("/generators", e.what());
  }
  if (doc.contains("s")) cfg.s = string_field(doc["s"], "/s");
  try {
    (void)cfg.params();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("/s", e.what());
  }
  if (doc.contains("R")) cfg.R = integer_field<std::uint32_t>(doc["R"], "/R", 0, 64);
  if (doc.contains("points")) cfg.points = integer_field<std::size_t>(doc["points"], "/points", 2, 100000);
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned()) throw ConfigError("/seed", "expected a non-negative integer");
    cfg.seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("conjugacy")) {
    const Json& c = doc["conjugacy"];
    check_keys(c, "/conjugacy", {"route", "grid_points", "extra"});
    if (c.contains("route")) {
      const std::string r = string_field(c["route"], "/conjugacy/route");
      if (r == "metric") {
        cfg.conjugacy.route = conjugacy::Route::metric;
      } else if (r == "measure") {
        cfg.conjugacy.route = conjugacy::Route::measure;
      } else {
        throw ConfigError("/conjugacy/route", "expected metric or measure");
      }
    }
    if (c.contains("grid_points"))
      cfg.conjugacy.grid_points = integer_field<std::size_t>(c["grid_points"], "/conjugacy/grid_points", 2, 1 << 20);
    if (c.contains("extra")) cfg.conjugacy.extra = integer_field<std::uint32_t>(c["extra"], "/conjugacy/extra", 0, 16);
  }
  if (doc.contains("verify")) parse_verify(doc["verify"], cfg.verify);
  if (doc.contains("lcgroup")) parse_lcgroup(doc["lcgroup"], cfg.lcgroup);
  // Sorted keys make the hash independent of key order in the file.
  cfg.canonical = doc;
  cfg.hash = fnv1a_hex(nlohmann::json::parse(doc.dump()).dump());
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("/", "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  Json doc;
  try {
    doc = Json::parse(ss.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("/", std::string("not valid JSON: ") + e.what());
  }
  return parse_config(doc);
}

}  // namespace bilip::cli
