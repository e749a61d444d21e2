#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qdisk/maps.hpp"
#include "qdisk/motion.hpp"

namespace qdisk {

struct InvariantResult {
  std::string module;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  unsigned jobs = 1;
};

/// Named invariants of the map, region, motion and twisting modules, run with
/// seeds derived from options.seed. Results come back in a fixed order.
std::vector<InvariantResult> run_invariant_suite(const VerifyOptions& options);

/// Checks specific to one configured disk map: admissibility, derivative
/// against finite differences and, for normalized maps, both pointwise bounds.
std::vector<InvariantResult> check_disk_map(const ConformalMap& f, std::uint64_t seed);

/// Weld continuity and Beltrami data of one configured motion.
std::vector<InvariantResult> check_motion(const WeldedStretch& m, std::uint64_t seed);

}  // namespace qdisk
