#include "sl2geo/lie_core.hpp"

namespace sl2geo {

std::pair<Mat2, Mat2> sym_skew_split(const Mat2& x) {
  const Mat2 sym = 0.5 * (x + x.transpose());
  const Mat2 skew = 0.5 * (x - x.transpose());
  return {sym, skew};
}

double inner_product(const Mat2& x, const Mat2& y, const MetricParams& metric) {
  const auto [sx, kx] = sym_skew_split(x);
  const auto [sy, ky] = sym_skew_split(y);
  return metric.alpha * (sx * sy).trace() + metric.beta * (kx * ky).trace();
}

double metric_norm2(const AlgebraVelocity& omega, double k) {
  const double d = omega.v - omega.w;
  return 4.0 * (omega.u * omega.u + omega.v * omega.w) + k * d * d;
}

MomentumABC momentum_of(const AlgebraVelocity& omega, const MetricParams& metric) {
  const auto [sym, skew] = sym_skew_split(omega.matrix());
  const Mat2 m = metric.alpha * sym + metric.beta * skew;  // = alpha ((a,b),(c,-a))
  return {m(0, 0) / metric.alpha, m(0, 1) / metric.alpha, m(1, 0) / metric.alpha};
}

AlgebraVelocity velocity_of(const MomentumABC& m, const MetricParams& metric) {
  const Mat2 mm = m.matrix(metric.alpha);
  const Mat2 om = ((metric.alpha + metric.beta) * mm + (metric.beta - metric.alpha) * mm.transpose()) /
                  (2.0 * metric.alpha * metric.beta);
  return AlgebraVelocity::from_matrix(om);
}

AlgebraVelocity velocity_from_abc(const MomentumABC& m, double k) {
  if (!(k > 1.0)) throw std::invalid_argument("velocity_from_abc: need k > 1");
  const double den = 2.0 * (1.0 - k);
  return {m.a, ((2.0 - k) * m.b - k * m.c) / den, ((2.0 - k) * m.c - k * m.b) / den};
}

MomentumABC abc_from_velocity(const AlgebraVelocity& omega, double k) {
  if (!(k > 1.0)) throw std::invalid_argument("abc_from_velocity: need k > 1");
  return {omega.u, 0.5 * ((2.0 - k) * omega.v + k * omega.w),
          0.5 * ((2.0 - k) * omega.w + k * omega.v)};
}

CartanSplit cartan_split(const AlgebraVelocity& omega, double k) {
  const Mat2 om = omega.matrix();
  const Mat2 skew = 0.5 * (om - om.transpose());
  return {om - k * skew, k * skew};
}

GroupElement exp_traceless(const Mat2& x, double t) {
  const double delta = -(x(0, 0) * x(1, 1) - x(0, 1) * x(1, 0));  // X^2 = Delta I
  double ch, sh;  // cosh(sqrt(Delta) t) and sinh(sqrt(Delta) t)/sqrt(Delta)
  if (std::abs(delta) <= kExpBranchTol) {
    // series in Delta t^2, stable through the branch point
    const double dt2 = delta * t * t;
    ch = 1.0 + dt2 * (0.5 + dt2 / 24.0);
    sh = t * (1.0 + dt2 * (1.0 / 6.0 + dt2 / 120.0));
  } else if (delta > 0.0) {
    const double s = std::sqrt(delta);
    ch = std::cosh(s * t);
    sh = std::sinh(s * t) / s;
  } else {
    const double w = std::sqrt(-delta);
    ch = std::cos(w * t);
    sh = std::sin(w * t) / w;
  }
  return GroupElement(ch * Mat2::Identity() + sh * x);
}

GroupElement exp_rotation(const Mat2& y, double t) {
  const double theta = y(1, 0) * t;  // Y = y21 ((0,-1),(1,0)) generates rotation by y21 t
  Mat2 r;
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return GroupElement(r);
}

}  // namespace sl2geo
