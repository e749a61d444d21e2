#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qdisk/maps.hpp"
#include "qdisk/motion.hpp"

namespace qdisk {

struct MapSpec {
  std::string family;
  std::map<std::string, cplx> params;
};

struct ScheduleSpec {
  int j_min = 2;
  int j_max = 14;
  int tail_length = 4;
};

/// Parsed run configuration. Every field carries its default, so the
/// effective configuration can be written back in full.
struct RunConfig {
  std::optional<MapSpec> map;
  ScheduleSpec schedule;
  std::vector<cplx> t_grid;
  double quadrature_tol = 1e-9;
  std::uint64_t seed = 1;
  std::optional<double> k;
  std::size_t region_samples = 256;
  cplx twist_zeta = 1.0;
  int twist_j_max = 4096;
};

/// Strict JSON: unknown keys, wrong types and malformed decimals all throw
/// Error(ConfigError). Complex numbers are ["re", "im"] decimal strings and
/// reals are decimal strings.
RunConfig parse_config(const std::string& text);

/// Canonical one-line JSON of the configuration with all defaults filled in.
std::string effective_json(const RunConfig& config);

/// 64-bit FNV-1a as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

/// Parses a decimal string into a finite double; throws ConfigError otherwise.
double parse_decimal(const std::string& text);

/// Builds the disk or half-plane map described by `spec`. Motion families are
/// rejected with ConfigError; bad parameters throw InvalidArgument.
MapPtr build_map(const MapSpec& spec);

/// Builds a welded_stretch or radial_stretch motion.
WeldedStretch build_motion(const MapSpec& spec);

bool is_motion_family(const std::string& family);

}  // namespace qdisk
