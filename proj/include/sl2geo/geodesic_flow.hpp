#pragma once

// The geodesic flow on SL(2,R) with naturally reductive metrics:
// closed-form solution g(t) = g0 exp(tX) exp(tY), an independent RK4 oracle
// for the Euler-Poincare equations, conserved quantities, frequencies and
// periodicity detection.

#include "sl2geo/lie_core.hpp"

#include <optional>
#include <vector>

namespace sl2geo {

struct GeodesicState {
  GroupElement g;
  AlgebraVelocity omega;
};

/// Right momentum m = g M g^{-1} = alpha ((u, v), (w, -u)); preserved along
/// the flow and the carrier of the third integral.
struct RightMomentum {
  double u = 0.0;
  double v = 0.0;
  double w = 0.0;

  Mat2 matrix(double alpha) const {
    Mat2 m;
    m << u, v, w, -u;
    return alpha * m;
  }
  double casimir() const { return u * u + v * w; }  // equals a^2 + bc at all times
};

RightMomentum right_momentum(const GeodesicState& state, const MetricParams& metric);

struct InvariantsRecord {
  double H = 0.0;        // energy (alpha/4beta)(beta[4a^2+(b+c)^2] - alpha(b-c)^2)
  double Delta = 0.0;    // Casimir a^2 + bc
  CurvatureRatio C;      // (b-c)^2 / (4a^2+(b+c)^2)
  RightMomentum m;
  double kappa = 0.0;    // signed geodesic curvature of the projection; NaN for the fiber case
  double V = 0.0;        // projected speed sqrt(4a^2+(b+c)^2)
};

/// Frequencies of the Delta < 0 Liouville tori: omega1 along the fiber,
/// omega2 along the hyperbolic circle.
struct Frequencies {
  double omega1 = 0.0;  // (beta-alpha)/(2 beta) |b-c|
  double omega2 = 0.0;  // sqrt(-Delta)
};

/// g(t) = g0 exp(tX0) exp(tY0), Omega(t) = exp(-tY0) Omega0 exp(tY0).
GeodesicState closed_form_geodesic(const GroupElement& g0, const AlgebraVelocity& omega0,
                                   const MetricParams& metric, double t);

/// dOmega/dt = (k/2)[Omega^T, Omega]; symmetric, so skew(Omega) is conserved.
AlgebraVelocity euler_poincare_rhs(const AlgebraVelocity& omega, double k);

struct OracleOptions {
  int renorm_every = 100;        // renormalize det g every this many steps
  double overflow_guard = 1e12;  // reject the run when any entry exceeds this
};

struct TrajectorySample {
  double t = 0.0;
  GeodesicState state;
};

/// Classical fixed-step RK4 on (g, Omega) with dg/dt = g Omega and the
/// Euler-Poincare right-hand side; the independent check of the closed form.
/// Returns samples at t = 0, dt, 2dt, ..., t_end.
std::vector<TrajectorySample> integrate_oracle(const GroupElement& g0, const AlgebraVelocity& omega0,
                                               const MetricParams& metric, double t_end, double dt,
                                               const OracleOptions& options = {});

InvariantsRecord invariants(const GeodesicState& state, const MetricParams& metric);

/// Max drift of H, Delta and the right momentum over a trajectory, each
/// relative to max(|initial value|, 1e-3).
struct ConservationDrift {
  double H = 0.0;
  double Delta = 0.0;
  double m = 0.0;
};

ConservationDrift check_conservation(const std::vector<TrajectorySample>& trajectory,
                                     const MetricParams& metric);

/// Requires Delta < 0 (throws std::domain_error otherwise).
Frequencies frequencies(const MomentumABC& m, const MetricParams& metric);

/// Coprime (p, q) with |omega1/omega2 - p/q| <= tol and q <= qmax, found by
/// continued-fraction convergents; nullopt when no convergent qualifies.
std::optional<std::pair<long long, long long>> detect_rational_ratio(const Frequencies& freqs,
                                                                     double tol = 1e-9,
                                                                     long long qmax = 200);

struct PeriodicityCheck {
  double T = 0.0;        // smallest candidate period pi j / omega2 that closes up
  double residual = 0.0; // PSL entrywise residual at T
  long long j = 0;
  bool found = false;
  bool degenerate = false;  // Omega = 0, every T trivially periodic
};

/// Scans T in { pi j / omega2 : j = 1..2q } for closed_form_geodesic(T) = +-g0;
/// in PSL both exponential factors may close at -I, hence the half-period grid.
PeriodicityCheck verify_group_periodicity(const GroupElement& g0, const MomentumABC& m,
                                          const MetricParams& metric, long long p, long long q,
                                          double residual_tol = 1e-9);

}  // namespace sl2geo
