#pragma once

// Projection to the upper half-plane, Moebius action, the circle/line law of
// projected geodesics, geodesic curvature and the magnetic-geodesic residual.

#include "sl2geo/lie_core.hpp"

#include <complex>
#include <vector>

namespace sl2geo {

using Complexd = std::complex<double>;

/// Point z = x + iy of the upper half-plane, y > 0.
struct HPoint {
  double x = 0.0;
  double y = 1.0;

  Complexd value() const { return {x, y}; }
  static HPoint from(Complexd z) { return {z.real(), z.imag()}; }
};

/// Unit tangent point: base z and the argument phi of the unit tangent
/// xi = i / (ci + d)^2 under the identification g -> (z, xi).
struct UnitTangentPoint {
  HPoint z;
  double phi = 0.0;
};

/// Projected curve of a geodesic: a Euclidean circle, a straight line
/// (slope = +inf encodes the vertical line x = intercept) or a single point
/// (the fiber case a = b + c = 0).
struct ProjectedCurve {
  enum class Kind { Circle, Line, Point };
  Kind kind = Kind::Point;
  Complexd center;            // Circle
  double radius = 0.0;        // Circle
  double slope = 0.0;         // Line: y = slope x + intercept
  double intercept = 0.0;
  HPoint point;               // Point
};

enum class CurveClass { Geodesic, Hypercycle, Horocycle, HyperbolicCircle, Fiber };

/// g -> (z, phi) with z = (a i + b)/(c i + d), xi = i/(c i + d)^2.
UnitTangentPoint project(const GroupElement& g);

/// z -> (az + b)/(cz + d); maps the upper half-plane to itself for det g = 1.
HPoint mobius(const GroupElement& g, const HPoint& z);
Complexd mobius(const Mat2& g, Complexd z);

/// d(z1, z2) with cosh d = 1 + |z1 - z2|^2 / (2 y1 y2), evaluated in the
/// cancellation-free form 2 asinh(|z1 - z2| / (2 sqrt(y1 y2))).
double hyperbolic_distance(const HPoint& z1, const HPoint& z2);

/// Circle centred at (2a + (c-b)i)/(2c) of radius sqrt(4a^2+(b+c)^2)/(2|c|)
/// when c != 0; the line y = (2a/b) x + 1 when c = 0; degenerates to a point
/// in the fiber case. Throws std::domain_error when a = b = c = 0.
ProjectedCurve projected_curve_params(const MomentumABC& m);

/// Closed-form projection z(t) of the geodesic through the identity, evaluated
/// directly from the rational expression in E = exp(2 sqrt(Delta) t); for
/// Delta < 0 this is the trigonometric continuation, and |Delta| < 1e-9 uses
/// the third-order series in sqrt(Delta) t.
HPoint explicit_projection(const MomentumABC& m, double t);

/// kappa = (b-c)/sqrt(4a^2+(b+c)^2) and V = sqrt(4a^2+(b+c)^2).
/// Throws std::domain_error for the fiber case V = 0.
std::pair<double, double> geodesic_curvature(const MomentumABC& m);

/// Max norm over interior samples of d2z/dt2 + (i/y)(dz/dt)^2 - i kappa V dz/dt
/// with fourth-order central differences of step h. Needs at least 5 samples
/// and V > 0.
double magnetic_residual(const std::vector<HPoint>& samples, double kappa, double V, double h);

/// Signed geodesic curvature and hyperbolic speed recovered from uniformly
/// sampled points alone (finite-difference Frenet data); one value per
/// interior sample.
struct FrenetSample {
  double kappa = 0.0;
  double speed = 0.0;
};
std::vector<FrenetSample> fd_curvature_speed(const std::vector<HPoint>& samples, double h);

/// C = 0 geodesic, 0 < C < 1 hypercycle, C = 1 horocycle, 1 < C < inf
/// hyperbolic circle, C = inf fiber. Throws std::invalid_argument when C is
/// undefined.
CurveClass classify_curve(const CurvatureRatio& c);

}  // namespace sl2geo
