#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "qdisk/branch.hpp"

namespace qdisk {

/// Seeded generator whose output depends only on the seed: the engine is
/// fully specified by the standard and the conversions below are done by hand
/// instead of through the implementation-defined distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  /// Uniform on the disk |z| < radius.
  cplx in_disk(double radius = 1.0) {
    return std::polar(radius * std::sqrt(uniform()), kTwoPi * uniform());
  }

  cplx on_circle(double radius = 1.0) { return std::polar(radius, kTwoPi * uniform()); }

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace qdisk
