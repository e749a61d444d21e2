#include "qdisk/nevanlinna_pick.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "qdisk/errors.hpp"
#include "qdisk/random.hpp"

namespace qdisk {

namespace {

void check_k(double k) {
  if (!(k > 0.0 && k < 1.0)) throw Error(ErrorCode::InvalidArgument, "k must lie in (0, 1)");
}

std::string format_point(cplx w) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << w.real() << ", " << w.imag() << ")";
  return os.str();
}

}  // namespace

RegionWk::RegionWk(double k) : k_(k) {
  check_k(k);
  // The center/radius form of disk2 must agree with |1/w - 1| = k on its rim.
  for (int i = 0; i < 16; ++i) {
    const cplx w = center2() + std::polar(radius2(), kTwoPi * i / 16.0);
    if (std::abs(std::abs(1.0 / w - 1.0) - k) > 1e-12) {
      throw Error(ErrorCode::DomainError, "reciprocal disk mismatch at " + format_point(w));
    }
  }
}

double RegionWk::hull_gap(cplx w) const {
  const cplx c1 = center1();
  const cplx c2 = center2();
  const double r1 = radius1();
  const double r2 = radius2();
  const auto gap = [&](double s) { return std::abs(w - ((1.0 - s) * c1 + s * c2)) - ((1.0 - s) * r1 + s * r2); };

  // The gap is convex in s, so golden-section search finds its minimum.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = 0.0, b = 1.0;
  double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
  double g1 = gap(x1), g2 = gap(x2);
  while (b - a > 1e-14) {
    if (g1 <= g2) {
      b = x2;
      x2 = x1;
      g2 = g1;
      x1 = b - inv_phi * (b - a);
      g1 = gap(x1);
    } else {
      a = x1;
      x1 = x2;
      g1 = g2;
      x2 = a + inv_phi * (b - a);
      g2 = gap(x2);
    }
  }
  return std::min({gap(0.0), gap(1.0), g1, g2});
}

double RegionWk::tangent_angle() const { return 0.5 * kPi + std::asin(k_); }

bool contains(cplx w, double k) { return RegionWk(k).contains(w); }

std::vector<BoundarySample> boundary_samples(double k, std::size_t n) {
  const RegionWk region(k);
  if (n < 64) throw Error(ErrorCode::InvalidArgument, "boundary polyline needs at least 64 vertices");
  if (n % 2 == 1) ++n;

  const double phi = region.tangent_angle();
  const cplx normal = std::polar(1.0, phi);
  const cplx c1 = region.center1(), c2 = region.center2();
  const double r1 = region.radius1(), r2 = region.radius2();
  const cplx seg_start = c2 + r2 * normal;
  const cplx seg_end = c1 + r1 * normal;
  const double len_arc2 = r2 * phi;
  const double len_seg = std::abs(seg_end - seg_start);
  const double len_arc1 = r1 * (kPi - phi);
  const double total = len_arc2 + len_seg + len_arc1;

  const auto upper = [&](double u) -> BoundarySample {
    if (u <= len_arc2) {
      const cplx e = std::polar(1.0, u / r2);
      return {c2 + r2 * e, e};
    }
    u -= len_arc2;
    if (u <= len_seg) return {seg_start + (u / len_seg) * (seg_end - seg_start), normal};
    u -= len_seg;
    const cplx e = std::polar(1.0, phi + u / r1);
    return {c1 + r1 * e, e};
  };

  const std::size_t m = n / 2 - 1;
  std::vector<BoundarySample> out;
  out.reserve(n);
  out.push_back({c2 + r2, 1.0});
  for (std::size_t i = 1; i <= m; ++i) out.push_back(upper(total * static_cast<double>(i) / static_cast<double>(m + 1)));
  out.push_back({c1 - r1, -1.0});
  for (std::size_t i = m; i >= 1; --i) {
    out.push_back({std::conj(out[i].point), std::conj(out[i].outward_normal)});
  }
  return out;
}

std::vector<cplx> boundary_polyline(double k, std::size_t n) {
  std::vector<cplx> out;
  for (const BoundarySample& s : boundary_samples(k, n)) out.push_back(s.point);
  return out;
}

InterpolantSpec::InterpolantSpec(InterpolantKind kind, cplx c) : kind_(kind), c_(c) {
  // Unimodular c computed in floating point can exceed 1 by a few ulps.
  if (!(std::abs(c) <= 1.0 + 1e-14)) {
    throw Error(ErrorCode::InvalidArgument, "interpolant parameter needs |c| <= 1, got |c| = " +
                                                std::to_string(std::abs(c)));
  }
}

namespace {

void check_bidisk(cplx lambda, cplx eta) {
  if (!(std::abs(lambda) < 1.0 && std::abs(eta) < 1.0)) {
    throw Error(ErrorCode::DomainError, "point outside the open bidisk");
  }
}

}  // namespace

cplx psi_first(const InterpolantSpec& spec, cplx lambda, cplx eta) {
  if (spec.kind() != InterpolantKind::First) throw Error(ErrorCode::InvalidArgument, "expected a FIRST interpolant");
  check_bidisk(lambda, eta);
  const cplx c = spec.c();
  const cplx le = lambda * eta;
  return (1.0 + le + c * lambda + std::conj(c) * eta) / (1.0 - le);
}

cplx psi_second(const InterpolantSpec& spec, cplx lambda, cplx eta) {
  if (spec.kind() != InterpolantKind::Second) throw Error(ErrorCode::InvalidArgument, "expected a SECOND interpolant");
  check_bidisk(lambda, eta);
  const cplx c = spec.c();
  const cplx i(0.0, 1.0);
  const cplx le = lambda * eta;
  return (1.0 - le) / (1.0 - i * c * lambda + i * std::conj(c) * eta + le);
}

cplx psi(const InterpolantSpec& spec, cplx lambda, cplx eta) {
  return spec.kind() == InterpolantKind::First ? psi_first(spec, lambda, eta) : psi_second(spec, lambda, eta);
}

InterpolantReport verify_interpolant(const InterpolantSpec& spec, double k, std::size_t samples,
                                     std::uint64_t seed) {
  const RegionWk region(k);
  Rng rng(seed);
  InterpolantReport report;
  report.samples = samples;

  const cplx at_origin = psi(spec, 0.0, 0.0);
  if (at_origin != cplx(1.0)) report.failures.push_back({"normalization", 0.0, 0.0, at_origin});

  for (std::size_t i = 0; i < samples; ++i) {
    const cplx lambda = rng.in_disk();
    const cplx eta = rng.in_disk();
    const cplx w = psi(spec, lambda, eta);
    if (!(w.real() > 0.0)) report.failures.push_back({"right_half_plane", lambda, eta, w});
    const cplx mirrored = std::conj(psi(spec, std::conj(eta), std::conj(lambda)));
    if (std::abs(w - mirrored) > 1e-12 * std::max(1.0, std::abs(w))) {
      report.failures.push_back({"reflection_symmetry", lambda, eta, w});
    }
    const cplx lambda0 = rng.on_circle(k);
    const cplx w0 = psi(spec, lambda0, 0.0);
    if (!region.contains(w0)) report.failures.push_back({"region_membership", lambda0, 0.0, w0});
  }
  return report;
}

bool cone_check(cplx w, double k) { return std::abs(w.imag()) <= k * std::abs(w) + 1e-14; }

std::pair<double, double> two_point_segment(double k) {
  check_k(k);
  return {1.0 - k * k, 1.0};
}

SupportReport tangent_support(cplx t, double lam_abs) {
  const RegionWk region(lam_abs);
  if (std::abs(std::abs(t) * lam_abs - 1.0) > 1e-9) {
    throw Error(ErrorCode::InvalidArgument, "tangent support needs |t| = 1/lam_abs");
  }
  if (t.real() < 1.0 - 1e-12) throw Error(ErrorCode::InvalidArgument, "tangent support needs Re t >= 1");

  SupportReport report{};
  report.t = t;
  report.lam_abs = lam_abs;
  report.polyline_max = -std::numeric_limits<double>::infinity();
  for (const cplx w : boundary_polyline(lam_abs, 4096)) {
    const double value = (t * (1.0 - w)).real();
    if (value > report.polyline_max) {
      report.polyline_max = value;
      report.polyline_argmax = w;
    }
  }

  report.predicted = 1.0 - 1.0 / t;
  report.predicted_gap = region.hull_gap(report.predicted);
  report.predicted_value_error = (t * (1.0 - report.predicted)).real() - 1.0;

  // min Re(t w) over a disk is attained at c - r conj(t)/|t|; over the hull
  // it is attained on whichever disk gives the smaller value, or on the
  // segment joining both support points when they tie.
  const double abs_t = std::abs(t);
  const cplx dir = std::conj(t) / abs_t;
  const cplx p1 = region.center1() - region.radius1() * dir;
  const cplx p2 = region.center2() - region.radius2() * dir;
  const double v1 = (t * region.center1()).real() - region.radius1() * abs_t;
  const double v2 = (t * region.center2()).real() - region.radius2() * abs_t;
  const cplx q = report.predicted;
  if (std::abs(v1 - v2) <= 1e-12 * std::max(1.0, std::abs(v1))) {
    const cplx d = p2 - p1;
    const double s = std::clamp(((q - p1) * std::conj(d)).real() / std::norm(d), 0.0, 1.0);
    report.maximizer_distance = std::abs(q - (p1 + s * d));
  } else {
    report.maximizer_distance = std::abs(q - (v1 < v2 ? p1 : p2));
  }

  std::string failure;
  if (report.polyline_max > 1.0 + 1e-9) {
    failure = "Re(t(1 - w)) = " + std::to_string(report.polyline_max) + " at w = " + format_point(report.polyline_argmax);
  } else if (std::abs(report.predicted_gap) > 1e-9) {
    failure = "1 - 1/t = " + format_point(q) + " is off the boundary by " + std::to_string(report.predicted_gap);
  } else if (std::abs(report.predicted_value_error) > 1e-9) {
    failure = "value at 1 - 1/t differs from 1 by " + std::to_string(report.predicted_value_error);
  } else if (report.maximizer_distance > 1e-6) {
    failure = "1 - 1/t = " + format_point(q) + " is not a maximizer";
  }
  if (!failure.empty()) {
    throw Error(ErrorCode::SupportViolation, failure + " for t = " + format_point(t));
  }
  return report;
}

std::vector<cplx> achievable_points(double k, std::size_t count, std::uint64_t seed) {
  const RegionWk region(k);
  Rng rng(seed);
  const cplx i(0.0, 1.0);
  const auto shrink = [&rng]() { return rng.uniform() < 0.5 ? 1.0 : std::sqrt(rng.uniform()); };

  std::vector<cplx> out;
  out.reserve(count);
  for (std::size_t n = 0; n < count; ++n) {
    const double u = rng.uniform();
    const cplx lambda0 = rng.on_circle(k);
    if (u < 1.0 / 3.0) {
      out.push_back(psi_first({InterpolantKind::First, shrink() * rng.on_circle()}, lambda0, 0.0));
    } else if (u < 2.0 / 3.0) {
      out.push_back(psi_second({InterpolantKind::Second, shrink() * rng.on_circle()}, lambda0, 0.0));
    } else {
      // Pick the parameters so that both values sit on their disks' rims at
      // points with the same outward normal, then pull them in together.
      const cplx normal = rng.on_circle();
      const double rho = shrink();
      const cplx on_rim2 = region.center2() + region.radius2() * normal;
      const cplx c1 = rho * k * normal / lambda0;
      const cplx c2 = rho * (1.0 - 1.0 / on_rim2) / (i * lambda0);
      const cplx a = psi_first({InterpolantKind::First, c1}, lambda0, 0.0);
      const cplx b = psi_second({InterpolantKind::Second, c2}, lambda0, 0.0);
      const double s = rng.uniform();
      out.push_back((1.0 - s) * a + s * b);
    }
  }
  return out;
}

double coverage_distance(double k, const std::vector<cplx>& points, double grid_step) {
  const RegionWk region(k);
  if (!(grid_step > 0.0)) throw Error(ErrorCode::InvalidArgument, "grid step must be positive");
  if (points.empty()) return std::numeric_limits<double>::infinity();

  const double cell = 2.0 * grid_step;
  const auto key = [](std::int64_t ix, std::int64_t iy) { return (ix << 32) ^ (iy & 0xffffffff); };
  std::unordered_map<std::int64_t, std::vector<cplx>> buckets;
  for (const cplx p : points) {
    buckets[key(static_cast<std::int64_t>(std::floor(p.real() / cell)),
                static_cast<std::int64_t>(std::floor(p.imag() / cell)))]
        .push_back(p);
  }

  const double x_lo = 1.0 - k, x_hi = 1.0 / (1.0 - k);
  const double y_hi = region.radius2();
  const auto max_ring = static_cast<std::int64_t>(std::ceil((x_hi - x_lo + 2.0 * y_hi) / cell)) + 2;

  double worst = 0.0;
  for (auto ix = static_cast<std::int64_t>(std::floor(x_lo / grid_step)); ix * grid_step <= x_hi; ++ix) {
    for (auto iy = static_cast<std::int64_t>(std::floor(-y_hi / grid_step)); iy * grid_step <= y_hi; ++iy) {
      const cplx g(ix * grid_step, iy * grid_step);
      if (!region.contains(g)) continue;
      const auto cx = static_cast<std::int64_t>(std::floor(g.real() / cell));
      const auto cy = static_cast<std::int64_t>(std::floor(g.imag() / cell));
      double best = std::numeric_limits<double>::infinity();
      for (std::int64_t ring = 0; ring <= max_ring; ++ring) {
        for (std::int64_t dx = -ring; dx <= ring; ++dx) {
          for (std::int64_t dy = -ring; dy <= ring; ++dy) {
            if (std::max(std::abs(dx), std::abs(dy)) != ring) continue;
            const auto it = buckets.find(key(cx + dx, cy + dy));
            if (it == buckets.end()) continue;
            for (const cplx p : it->second) best = std::min(best, std::abs(p - g));
          }
        }
        // Anything in a later ring is at least ring * cell away.
        if (best <= static_cast<double>(ring) * cell) break;
      }
      worst = std::max(worst, best);
    }
  }
  return worst;
}

}  // namespace qdisk
