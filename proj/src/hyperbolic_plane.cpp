#include "sl2geo/hyperbolic_plane.hpp"

#include <algorithm>
#include <cmath>

namespace sl2geo {

UnitTangentPoint project(const GroupElement& g) {
  const double a = g.m(0, 0), b = g.m(0, 1), c = g.m(1, 0), d = g.m(1, 1);
  const double n = c * c + d * d;  // |ci + d|^2, nonzero for real det-1 matrices
  UnitTangentPoint p;
  p.z.x = (a * c + b * d) / n;
  p.z.y = 1.0 / n;  // (ad - bc)/n with det 1
  // xi = i/(ci+d)^2; both arg components are sign-invariant under g -> -g
  p.phi = std::atan2(d * d - c * c, 2.0 * c * d);
  return p;
}

Complexd mobius(const Mat2& g, Complexd z) {
  return (g(0, 0) * z + g(0, 1)) / (g(1, 0) * z + g(1, 1));
}

HPoint mobius(const GroupElement& g, const HPoint& z) {
  if (!(z.y > 0.0)) throw std::domain_error("mobius: point not in the upper half-plane");
  return HPoint::from(mobius(g.m, z.value()));
}

double hyperbolic_distance(const HPoint& z1, const HPoint& z2) {
  if (!(z1.y > 0.0) || !(z2.y > 0.0))
    throw std::domain_error("hyperbolic_distance: points must have y > 0");
  const double dx = z1.x - z2.x;
  const double dy = z1.y - z2.y;
  return 2.0 * std::asinh(std::sqrt(dx * dx + dy * dy) / (2.0 * std::sqrt(z1.y * z2.y)));
}

ProjectedCurve projected_curve_params(const MomentumABC& m) {
  const double v2 = 4.0 * m.a * m.a + (m.b + m.c) * (m.b + m.c);
  ProjectedCurve curve;
  if (m.c != 0.0) {
    if (v2 == 0.0) {  // fiber case: radius-0 circle
      curve.kind = ProjectedCurve::Kind::Point;
      curve.point = HPoint::from(Complexd(2.0 * m.a, m.c - m.b) / (2.0 * m.c));
      return curve;
    }
    curve.kind = ProjectedCurve::Kind::Circle;
    curve.center = Complexd(2.0 * m.a, m.c - m.b) / (2.0 * m.c);
    curve.radius = std::sqrt(v2) / (2.0 * std::abs(m.c));
    return curve;
  }
  if (m.b != 0.0) {
    curve.kind = ProjectedCurve::Kind::Line;
    curve.slope = 2.0 * m.a / m.b;
    curve.intercept = 1.0;
    return curve;
  }
  if (m.a != 0.0) {  // vertical line through i
    curve.kind = ProjectedCurve::Kind::Line;
    curve.slope = std::numeric_limits<double>::infinity();
    curve.intercept = 0.0;
    return curve;
  }
  throw std::domain_error("projected_curve_params: zero momentum");
}

HPoint explicit_projection(const MomentumABC& m, double t) {
  const double delta = casimir(m);
  const Complexd sd = std::sqrt(Complexd(delta, 0.0));  // = i sqrt(-Delta) for Delta < 0
  const Complexd amib(m.a, -m.b);
  const Complexd amic(m.a, -m.c);
  const Complexd i(0.0, 1.0);

  Complexd num, den;
  if (std::abs(delta) < 1e-9) {
    // E = exp(2 sqrt(Delta) t) to third order, the common factor 2 sqrt(Delta)
    // cancelled analytically against the numerator and denominator
    const Complexd u = sd * t;
    const Complexd half_sum = 1.0 + u * (1.0 + u * (1.0 + (2.0 / 3.0) * u));  // (E+1)/2
    const Complexd half_diff = t * (1.0 + u * (1.0 + (2.0 / 3.0) * u));       // (E-1)/(2 sqrt(Delta))
    num = i * (half_sum + amib * half_diff);
    den = half_sum - amic * half_diff;
  } else {
    const Complexd e = std::exp(2.0 * sd * t);
    num = i * (sd * (e + 1.0) + amib * (e - 1.0));
    den = sd * (e + 1.0) - amic * (e - 1.0);
  }
  return HPoint::from(num / den);
}

std::pair<double, double> geodesic_curvature(const MomentumABC& m) {
  const double v2 = 4.0 * m.a * m.a + (m.b + m.c) * (m.b + m.c);
  if (!(v2 > 0.0)) throw std::domain_error("geodesic_curvature: fiber case 4a^2+(b+c)^2 = 0");
  const double v = std::sqrt(v2);
  return {(m.b - m.c) / v, v};
}

namespace {

// fourth-order central first and second derivatives at index i
Complexd d1(const std::vector<HPoint>& z, size_t i, double h) {
  return (-z[i + 2].value() + 8.0 * z[i + 1].value() - 8.0 * z[i - 1].value() + z[i - 2].value()) /
         (12.0 * h);
}

Complexd d2(const std::vector<HPoint>& z, size_t i, double h) {
  return (-z[i + 2].value() + 16.0 * z[i + 1].value() - 30.0 * z[i].value() +
          16.0 * z[i - 1].value() - z[i - 2].value()) /
         (12.0 * h * h);
}

}  // namespace

double magnetic_residual(const std::vector<HPoint>& samples, double kappa, double V, double h) {
  if (samples.size() < 5) throw std::invalid_argument("magnetic_residual: need at least 5 samples");
  if (!(V > 0.0)) throw std::domain_error("magnetic_residual: need V > 0");
  const Complexd i(0.0, 1.0);
  double worst = 0.0;
  for (size_t n = 2; n + 2 < samples.size(); ++n) {
    const Complexd zd = d1(samples, n, h);
    const Complexd zdd = d2(samples, n, h);
    const Complexd lhs = zdd + (i / samples[n].y) * zd * zd;
    worst = std::max(worst, std::abs(lhs - i * kappa * V * zd));
  }
  return worst;
}

std::vector<FrenetSample> fd_curvature_speed(const std::vector<HPoint>& samples, double h) {
  if (samples.size() < 5) throw std::invalid_argument("fd_curvature_speed: need at least 5 samples");
  const Complexd i(0.0, 1.0);
  std::vector<FrenetSample> out;
  out.reserve(samples.size() - 4);
  for (size_t n = 2; n + 2 < samples.size(); ++n) {
    const double y = samples[n].y;
    const Complexd zd = d1(samples, n, h);
    const Complexd zdd = d2(samples, n, h);
    const Complexd cov = zdd + (i / y) * zd * zd;  // covariant acceleration D z'/dt
    const double speed = std::abs(zd) / y;
    // signed curvature <D z', i z'> / |z'|^3 in the hyperbolic metric
    const double kappa =
        (cov * std::conj(i * zd)).real() * y / (std::abs(zd) * std::abs(zd) * std::abs(zd));
    out.push_back({kappa, speed});
  }
  return out;
}

CurveClass classify_curve(const CurvatureRatio& c) {
  if (!c.defined()) throw std::invalid_argument("classify_curve: ratio undefined (zero momentum)");
  if (c.infinite()) return CurveClass::Fiber;
  if (c.num == 0.0) return CurveClass::Geodesic;
  if (c.num < c.den) return CurveClass::Hypercycle;
  if (c.num == c.den) return CurveClass::Horocycle;
  return CurveClass::HyperbolicCircle;
}

}  // namespace sl2geo
