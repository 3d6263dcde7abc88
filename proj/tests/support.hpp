#pragma once

// Test-only oracles and helpers, independent of the library code paths they
// check.

#include "sl2geo/lie_core.hpp"
#include "sl2geo/rng.hpp"

#include <cmath>

namespace sl2geo::testing {

/// Scaling-and-squaring Taylor exponential; the independent oracle for the
/// closed-form exp_traceless/exp_rotation branches.
inline Mat2 expm_taylor(const Mat2& a) {
  int squarings = 0;
  double norm = a.cwiseAbs().maxCoeff();
  Mat2 scaled = a;
  while (norm > 0.25) {
    scaled *= 0.5;
    norm *= 0.5;
    ++squarings;
  }
  Mat2 sum = Mat2::Identity();
  Mat2 term = Mat2::Identity();
  for (int k = 1; k <= 20; ++k) {
    term = term * scaled / static_cast<double>(k);
    sum += term;
  }
  for (int k = 0; k < squarings; ++k) sum = sum * sum;
  return sum;
}

inline Mat2 random_traceless(SplitMix64& rng, double scale) {
  Mat2 x;
  const double d = rng.uniform(-scale, scale);
  x << d, rng.uniform(-scale, scale), rng.uniform(-scale, scale), -d;
  return x;
}

inline MomentumABC random_momentum(SplitMix64& rng, double scale) {
  return {rng.uniform(-scale, scale), rng.uniform(-scale, scale), rng.uniform(-scale, scale)};
}

/// Rescale so the metric speed sqrt(<Omega,Omega>) is 1; same geodesic up to
/// time reparametrization, keeps trajectories bounded over desk-scale horizons.
inline MomentumABC unit_speed(const MomentumABC& m, const MetricParams& metric) {
  const AlgebraVelocity omega = velocity_of(m, metric);
  const double speed = std::sqrt(metric_norm2(omega, metric.k()) * (metric.alpha / 2.0));
  return {m.a / speed, m.b / speed, m.c / speed};
}

}  // namespace sl2geo::testing
