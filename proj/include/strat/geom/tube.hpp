#pragma once

#include <cmath>
#include <numbers>

#include "strat/geom/shape.hpp"
#include "strat/util/error.hpp"
#include "strat/util/rng.hpp"

namespace strat {

/// Tube area around a planar segment of length L: the Steiner-type law
/// 2rL + pi r^2. The linear term is the segment's own contribution, the
/// quadratic one comes from the endcaps, one full disk between the two
/// endpoints.
inline double tube_volume_exact(double length, double r) {
  if (length < 0) throw DomainError("invalid-spec", "negative length");
  if (!(r > 0)) throw DomainError("invalid-spec", "radius must be positive");
  return 2.0 * r * length + std::numbers::pi * r * r;
}

struct TubeEstimate {
  double volume = 0.0;
  double standard_error = 0.0;
  std::size_t inside = 0;
  std::size_t samples = 0;
};

/// Monte Carlo area of {x : dist(shape, x) <= r} by rejection sampling in
/// the inflated bounding box. Deterministic given the seed.
inline TubeEstimate tube_volume_mc(const Shape& shape, double r, std::size_t n,
                                   std::uint64_t seed) {
  if (!(r > 0)) throw DomainError("invalid-spec", "radius must be positive");
  if (n == 0) throw DomainError("invalid-spec", "need at least one sample");
  Box b = shape.bounding_box();
  for (Eigen::Index i = 0; i < b.lo.size(); ++i) {
    if (!std::isfinite(b.lo[i]) || !std::isfinite(b.hi[i]))
      throw DomainError("unbounded-shape", "bounding box is not finite");
    b.lo[i] -= r;
    b.hi[i] += r;
  }
  double box_volume = 1.0;
  for (Eigen::Index i = 0; i < b.lo.size(); ++i) box_volume *= b.hi[i] - b.lo[i];

  Rng rng(seed);
  std::size_t inside = 0;
  Eigen::VectorXd x(b.lo.size());
  for (std::size_t k = 0; k < n; ++k) {
    for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = rng.uniform(b.lo[i], b.hi[i]);
    if (shape.dist(x) <= r) ++inside;
  }
  const double p = static_cast<double>(inside) / static_cast<double>(n);
  // Jeffreys-smoothed variance keeps the error bar nonzero when every
  // sample lands on one side; negligible once n is large
  const double ps = (static_cast<double>(inside) + 0.5) / (static_cast<double>(n) + 1.0);
  TubeEstimate est;
  est.volume = box_volume * p;
  est.standard_error = box_volume * std::sqrt(ps * (1 - ps) / static_cast<double>(n));
  est.inside = inside;
  est.samples = n;
  return est;
}

} // namespace strat
