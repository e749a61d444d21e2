#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "qdisk/errors.hpp"
#include "qdisk/nevanlinna_pick.hpp"
#include "qdisk/random.hpp"

using namespace qdisk;

TEST_CASE("membership examples") {
  CHECK(contains(1.0, 0.2));
  CHECK(contains(1.0, 0.9));
  CHECK(contains(1.5, 0.5));
  CHECK(contains(2.0, 0.5));
  // 1 + 0.51i is outside disk1 but inside the disk interpolating the two
  // disks at s = 0.1 (center 1 + 1/30, radius 0.5 + 1/60).
  CHECK(contains(cplx(1.0, 0.51), 0.5));
  CHECK(std::abs(cplx(1.0 + 1.0 / 30.0, 0.51) - 1.0 - 1.0 / 30.0) < 0.5 + 1.0 / 60.0);
  CHECK_FALSE(contains(cplx(1.0, 0.58), 0.5));
  CHECK_FALSE(cone_check(cplx(1.0, 0.58), 0.5));
  CHECK_FALSE(contains(2.01, 0.5));
  CHECK_FALSE(contains(0.49, 0.5));
}

TEST_CASE("second disk is the reciprocal disk") {
  const double k = 0.5;
  const RegionWk region(k);
  Rng rng(31);
  int mismatches = 0;
  for (int i = 0; i < 10000; ++i) {
    const cplx w(rng.uniform(0.0, 3.0), rng.uniform(-1.5, 1.5));
    const double by_center = std::abs(w - region.center2()) - region.radius2();
    const double by_reciprocal = std::abs(1.0 / w - 1.0) - k;
    // Skip points within rounding distance of the common boundary.
    if (std::abs(by_center) < 1e-12 || std::abs(by_reciprocal) < 1e-12) continue;
    if ((by_center <= 0.0) != (by_reciprocal <= 0.0)) ++mismatches;
  }
  CHECK(mismatches == 0);
}

TEST_CASE("boundary polyline geometry") {
  const auto samples = boundary_samples(0.5, 256);
  REQUIRE(samples.size() == 256);
  double min_re = 10.0, max_re = -10.0;
  for (const auto& s : samples) {
    min_re = std::min(min_re, s.point.real());
    max_re = std::max(max_re, s.point.real());
  }
  CHECK(min_re == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(max_re == doctest::Approx(2.0).epsilon(1e-14));

  const RegionWk region(0.5);
  for (const auto& s : samples) {
    CHECK(region.hull_gap(s.point) <= 1e-10);
    CHECK_FALSE(region.contains(s.point + 1e-6 * s.outward_normal));
    CHECK(cone_check(s.point, 0.5));
  }
}

TEST_CASE("boundary polyline is counterclockwise and conjugation symmetric") {
  const auto poly = boundary_polyline(0.3, 128);
  double twice_area = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const cplx a = poly[i], b = poly[(i + 1) % poly.size()];
    twice_area += a.real() * b.imag() - b.real() * a.imag();
  }
  CHECK(twice_area > 0.0);
  for (std::size_t i = 1; i < poly.size(); ++i) CHECK(poly[poly.size() - i] == std::conj(poly[i]));
}

TEST_CASE("boundary polyline collapses as k shrinks") {
  double previous = 1e9;
  for (const double k : {0.5, 0.1, 0.01, 0.001}) {
    const auto poly = boundary_polyline(k, 64);
    double diameter = 0.0;
    for (const cplx a : poly)
      for (const cplx b : poly) diameter = std::max(diameter, std::abs(a - b));
    CHECK(diameter < previous);
    CHECK(diameter <= 2.0 * k / (1.0 - k) + 1e-12);
    previous = diameter;
  }
  CHECK_THROWS_AS(boundary_polyline(0.5, 32), Error);
}

TEST_CASE("interpolant values") {
  const InterpolantSpec first(InterpolantKind::First, 1.0);
  CHECK(psi_first(first, 0.0, 0.0) == cplx(1.0));
  CHECK(std::abs(psi_first(first, 0.25, 0.0) - 1.25) < 1e-15);
  const InterpolantSpec first_i(InterpolantKind::First, cplx(0.0, 1.0));
  CHECK(psi_first(first_i, 0.3, cplx(0.0, 0.2)).real() > 0.0);

  const InterpolantSpec second(InterpolantKind::Second, 1.0);
  CHECK(psi_second(second, 0.0, 0.0) == cplx(1.0));
  const cplx w = psi_second(second, cplx(0.0, 0.25), 0.0);
  CHECK(std::abs(w - 0.8) < 1e-15);
  CHECK(std::abs(std::abs(1.0 / w - 1.0) - 0.25) < 1e-15);

  CHECK_THROWS_AS(InterpolantSpec(InterpolantKind::First, 1.2), Error);
  CHECK_THROWS_AS(psi_first(first, 1.0, 0.0), Error);
  CHECK_THROWS_AS(psi_second(first, 0.0, 0.0), Error);
}

TEST_CASE("interpolants take values in the right half-plane") {
  Rng rng(12);
  for (int i = 0; i < 100000; ++i) {
    const InterpolantSpec spec(i % 2 ? InterpolantKind::First : InterpolantKind::Second, rng.in_disk());
    const cplx w = psi(spec, rng.in_disk(), rng.in_disk());
    if (!(w.real() > 0.0)) FAIL("Re psi <= 0");
  }
}

TEST_CASE("verify_interpolant examples") {
  const auto first = verify_interpolant({InterpolantKind::First, 1.0}, 0.5, 100000, 1);
  CHECK(first.passed());
  CHECK(first.samples == 100000);
  const auto second = verify_interpolant({InterpolantKind::Second, cplx(0.0, -1.0)}, 0.5, 20000, 2);
  CHECK(second.passed());
}

TEST_CASE("achievable values stay in the region") {
  Rng rng(77);
  int violations = 0;
  for (int i = 0; i < 100000; ++i) {
    const cplx lambda0 = rng.in_disk(0.999);
    const double k = std::abs(lambda0);
    if (k < 1e-6) continue;
    const InterpolantSpec spec(i % 2 ? InterpolantKind::First : InterpolantKind::Second, rng.in_disk());
    if (!contains(psi(spec, lambda0, 0.0), k)) ++violations;
  }
  CHECK(violations == 0);
}

TEST_CASE("hull coverage") {
  const auto points = achievable_points(0.5, 100000, 5);
  const RegionWk region(0.5);
  for (const cplx p : points) REQUIRE(region.contains(p));
  CHECK(coverage_distance(0.5, points, 0.01) <= 0.02);
}

TEST_CASE("problem depends only on |lambda0|") {
  Rng rng(19);
  for (int i = 0; i < 1000; ++i) {
    const cplx c = rng.in_disk();
    const double theta = rng.uniform(0.0, kTwoPi);
    const cplx lambda = rng.in_disk(), eta = rng.in_disk();
    const cplx rot = std::polar(1.0, theta);
    const cplx lhs = psi_first({InterpolantKind::First, c}, rot * lambda, std::conj(rot) * eta);
    const cplx rhs = psi_first({InterpolantKind::First, c * rot}, lambda, eta);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
  }
}

TEST_CASE("cone check") {
  CHECK(cone_check(1.0, 0.1));
  CHECK_FALSE(cone_check(cplx(0.0, 1.0), 0.5));
  for (const cplx w : boundary_polyline(0.5, 256)) CHECK(cone_check(w, 0.5));
}

TEST_CASE("two point segment") {
  CHECK(two_point_segment(0.5) == std::make_pair(0.75, 1.0));
  CHECK(two_point_segment(0.8).first == doctest::Approx(0.36).epsilon(1e-15));
  CHECK(two_point_segment(1e-9).first == doctest::Approx(1.0));
  const double k = 0.5;
  const RegionWk region(k);
  const double phi = std::asin(k);
  // Points on the upper cone line with Re in [1 - k^2, 1] belong to W_k.
  for (int i = 0; i <= 20; ++i) {
    const double re = 0.75 + 0.25 * i / 20.0;
    CHECK(region.hull_gap(cplx(re, re * std::tan(phi))) <= 1e-12);
  }
  CHECK_FALSE(region.contains(cplx(0.7, 0.7 * std::tan(phi))));
  CHECK_FALSE(region.contains(cplx(1.4, 1.4 * std::tan(phi))));
}

TEST_CASE("tangent support examples") {
  const SupportReport a = tangent_support(4.0, 0.25);
  CHECK(a.polyline_max <= 1.0 + 1e-9);
  CHECK(a.polyline_max == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(std::abs(a.predicted - 0.75) < 1e-15);
  CHECK(a.maximizer_distance < 1e-12);

  const double lam = 1.0 - 1e-3;
  const SupportReport b = tangent_support(1.0 / lam, lam);
  CHECK(b.polyline_max <= 1.0 + 1e-9);

  const SupportReport c = tangent_support(std::polar(2.0, kPi / 3.0), 0.5);
  CHECK(c.polyline_max <= 1.0 + 1e-9);
  CHECK(c.maximizer_distance <= 1e-6);

  CHECK_THROWS_AS(tangent_support(3.0, 0.25), Error);
  CHECK_THROWS_AS(tangent_support(std::polar(4.0, 1.4), 0.25), Error);
}
