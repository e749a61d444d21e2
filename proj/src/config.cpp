#include "qdisk/config.hpp"

#include <charconv>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <memory>
#include <set>

#include "json.hpp"
#include "qdisk/errors.hpp"
#include "qdisk/format.hpp"

namespace qdisk {

using nlohmann::json;

namespace {

[[noreturn]] void config_error(const std::string& message) { throw Error(ErrorCode::ConfigError, message); }

void expect_keys(const json& object, const std::string& where, const std::set<std::string>& allowed) {
  if (!object.is_object()) config_error(where + " must be an object");
  for (const auto& item : object.items()) {
    if (!allowed.count(item.key())) config_error("unknown key '" + item.key() + "' in " + where);
  }
}

double real_of(const json& value, const std::string& where) {
  if (!value.is_string()) config_error(where + " must be a decimal string");
  return parse_decimal(value.get<std::string>());
}

cplx complex_of(const json& value, const std::string& where) {
  if (!value.is_array() || value.size() != 2) config_error(where + " must be a [\"re\", \"im\"] pair");
  return {real_of(value[0], where + "[0]"), real_of(value[1], where + "[1]")};
}

long long integer_of(const json& value, const std::string& where) {
  if (!value.is_number_integer()) config_error(where + " must be an integer");
  return value.get<long long>();
}

const std::map<std::string, std::set<std::string>>& family_params() {
  static const std::map<std::string, std::set<std::string>> table = {
      {"identity", {}},
      {"half_plane_power", {"sigma"}},
      {"disk_power", {"sigma"}},
      {"disk_power_normalized", {"sigma"}},
      {"welded_stretch", {"lambda", "eta"}},
      {"radial_stretch", {"lambda"}},
  };
  return table;
}

MapSpec parse_map(const json& node) {
  expect_keys(node, "map", {"family", "params"});
  if (!node.contains("family") || !node["family"].is_string()) config_error("map.family must be a string");
  MapSpec spec;
  spec.family = node["family"].get<std::string>();
  const auto it = family_params().find(spec.family);
  if (it == family_params().end()) config_error("unknown map family '" + spec.family + "'");
  const json params = node.contains("params") ? node["params"] : json::object();
  expect_keys(params, "map.params", it->second);
  for (const std::string& name : it->second) {
    if (!params.contains(name)) config_error("map.params." + name + " is required for " + spec.family);
    spec.params[name] = complex_of(params[name], "map.params." + name);
  }
  return spec;
}

std::vector<cplx> parse_grid(const json& node) {
  expect_keys(node, "grid", {"t", "modulus", "angles"});
  std::vector<cplx> out;
  if (node.contains("t")) {
    if (node.contains("modulus") || node.contains("angles")) config_error("grid takes either t or modulus/angles");
    if (!node["t"].is_array()) config_error("grid.t must be a list");
    for (std::size_t i = 0; i < node["t"].size(); ++i) {
      out.push_back(complex_of(node["t"][i], "grid.t[" + std::to_string(i) + "]"));
    }
  } else {
    if (!node.contains("modulus") || !node.contains("angles")) config_error("grid needs t or both modulus and angles");
    const double modulus = real_of(node["modulus"], "grid.modulus");
    if (!node["angles"].is_array()) config_error("grid.angles must be a list");
    for (std::size_t i = 0; i < node["angles"].size(); ++i) {
      out.push_back(std::polar(modulus, real_of(node["angles"][i], "grid.angles[" + std::to_string(i) + "]")));
    }
  }
  if (out.empty()) config_error("grid is empty");
  return out;
}

json complex_json(cplx z) { return json::array({format_double(z.real()), format_double(z.imag())}); }

}  // namespace

double parse_decimal(const std::string& text) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto result = std::from_chars(begin, end, value);
  if (text.empty() || result.ec != std::errc() || result.ptr != end || !std::isfinite(value)) {
    config_error("'" + text + "' is not a finite decimal number");
  }
  return value;
}

RunConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    config_error(std::string("malformed JSON: ") + e.what());
  }
  expect_keys(root, "config",
              {"map", "schedule", "grid", "tolerances", "seed", "k", "region_samples", "twist"});

  RunConfig config;
  if (root.contains("map")) config.map = parse_map(root["map"]);
  if (root.contains("schedule")) {
    const json& s = root["schedule"];
    expect_keys(s, "schedule", {"j_min", "j_max", "tail_length"});
    if (s.contains("j_min")) config.schedule.j_min = static_cast<int>(integer_of(s["j_min"], "schedule.j_min"));
    if (s.contains("j_max")) config.schedule.j_max = static_cast<int>(integer_of(s["j_max"], "schedule.j_max"));
    if (s.contains("tail_length")) {
      config.schedule.tail_length = static_cast<int>(integer_of(s["tail_length"], "schedule.tail_length"));
    }
    const ScheduleSpec& sc = config.schedule;
    if (!(2 <= sc.j_min && sc.j_min < sc.j_max && sc.j_max <= 20)) config_error("schedule needs 2 <= j_min < j_max <= 20");
    if (!(1 <= sc.tail_length && sc.tail_length <= sc.j_max - sc.j_min)) {
      config_error("schedule.tail_length must lie in [1, j_max - j_min]");
    }
  }
  if (root.contains("grid")) config.t_grid = parse_grid(root["grid"]);
  if (root.contains("tolerances")) {
    const json& t = root["tolerances"];
    expect_keys(t, "tolerances", {"quadrature"});
    if (t.contains("quadrature")) config.quadrature_tol = real_of(t["quadrature"], "tolerances.quadrature");
    if (!(config.quadrature_tol >= 1e-10)) config_error("tolerances.quadrature must be at least 1e-10");
  }
  if (root.contains("seed")) {
    if (!root["seed"].is_number_unsigned()) config_error("seed must be a nonnegative integer");
    config.seed = root["seed"].get<std::uint64_t>();
  }
  if (root.contains("k")) config.k = real_of(root["k"], "k");
  if (root.contains("region_samples")) {
    const long long n = integer_of(root["region_samples"], "region_samples");
    if (n < 64 || n > (1 << 20)) config_error("region_samples must lie in [64, 2^20]");
    config.region_samples = static_cast<std::size_t>(n);
  }
  if (root.contains("twist")) {
    const json& tw = root["twist"];
    expect_keys(tw, "twist", {"zeta", "j_max"});
    if (tw.contains("zeta")) config.twist_zeta = complex_of(tw["zeta"], "twist.zeta");
    if (tw.contains("j_max")) {
      const long long j = integer_of(tw["j_max"], "twist.j_max");
      if (j < 3 || j > 1000000) config_error("twist.j_max must lie in [3, 10^6]");
      config.twist_j_max = static_cast<int>(j);
    }
  }
  return config;
}

std::string effective_json(const RunConfig& config) {
  json root;
  if (config.map) {
    json params = json::object();
    for (const auto& [name, value] : config.map->params) params[name] = complex_json(value);
    root["map"] = {{"family", config.map->family}, {"params", params}};
  }
  root["schedule"] = {{"j_min", config.schedule.j_min},
                      {"j_max", config.schedule.j_max},
                      {"tail_length", config.schedule.tail_length}};
  if (!config.t_grid.empty()) {
    json ts = json::array();
    for (const cplx t : config.t_grid) ts.push_back(complex_json(t));
    root["grid"] = {{"t", ts}};
  }
  root["tolerances"] = {{"quadrature", format_double(config.quadrature_tol)}};
  root["seed"] = config.seed;
  if (config.k) root["k"] = format_double(*config.k);
  root["region_samples"] = config.region_samples;
  root["twist"] = {{"zeta", complex_json(config.twist_zeta)}, {"j_max", config.twist_j_max}};
  return root.dump();
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char out[17];
  std::snprintf(out, sizeof out, "%016" PRIx64, h);
  return out;
}

bool is_motion_family(const std::string& family) { return family == "welded_stretch" || family == "radial_stretch"; }

MapPtr build_map(const MapSpec& spec) {
  if (spec.family == "identity") return std::make_shared<IdentityMap>();
  if (spec.family == "half_plane_power") return std::make_shared<HalfPlanePowerMap>(spec.params.at("sigma"));
  if (spec.family == "disk_power") return std::make_shared<DiskPowerMap>(spec.params.at("sigma"));
  if (spec.family == "disk_power_normalized") {
    return std::make_shared<NormalizedDiskMap>(std::make_shared<DiskPowerMap>(spec.params.at("sigma")));
  }
  config_error("family '" + spec.family + "' is a motion of the plane, not a conformal map");
}

WeldedStretch build_motion(const MapSpec& spec) {
  if (spec.family == "welded_stretch") return WeldedStretch(spec.params.at("lambda"), spec.params.at("eta"));
  if (spec.family == "radial_stretch") return WeldedStretch(spec.params.at("lambda"), spec.params.at("lambda"));
  config_error("family '" + spec.family + "' is not a motion");
}

}  // namespace qdisk
