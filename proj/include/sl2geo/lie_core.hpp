#pragma once

// Core types and exact kernels for sl(2,R) / SL(2,R): the two-parameter
// family of naturally reductive metrics, momentum maps, Cartan split and
// closed-form 2x2 matrix exponentials.

#include <Eigen/Core>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace sl2geo {

using Mat2 = Eigen::Matrix2d;
using Vec2 = Eigen::Vector2d;

inline constexpr double kDetTol = 1e-12;       // |det g - 1| tolerance
inline constexpr double kExpBranchTol = 1e-9;  // |Delta| below which exp uses the degenerate series

/// Metric weights <X,Y> = alpha (sym X, sym Y) + beta (skew X, skew Y)
/// with (A,B) = Tr(AB). Requires alpha > 0 > beta, so k = 1 - beta/alpha > 1.
struct MetricParams {
  double alpha;
  double beta;

  MetricParams(double alpha_, double beta_) : alpha(alpha_), beta(beta_) {
    if (!(alpha > 0.0) || !(beta < 0.0))
      throw std::invalid_argument("MetricParams: need alpha > 0 > beta");
  }

  /// Normalized presentation alpha = 2 (Gaussian curvature -1 on the quotient),
  /// beta = 2(1-k).
  static MetricParams from_k(double k) {
    if (!(k > 1.0)) throw std::invalid_argument("MetricParams: need k > 1");
    return MetricParams(2.0, 2.0 * (1.0 - k));
  }

  double k() const { return 1.0 - beta / alpha; }
};

/// Left angular velocity Omega = g^{-1} dg/dt = ((u, v), (w, -u)).
struct AlgebraVelocity {
  double u = 0.0;
  double v = 0.0;
  double w = 0.0;

  Mat2 matrix() const {
    Mat2 m;
    m << u, v, w, -u;
    return m;
  }
  static AlgebraVelocity from_matrix(const Mat2& m) { return {m(0, 0), m(0, 1), m(1, 0)}; }
};

/// Left momentum in normalized entries: M = alpha ((a, b), (c, -a)).
struct MomentumABC {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  Mat2 matrix(double alpha) const {
    Mat2 m;
    m << a, b, c, -a;
    return alpha * m;
  }
  Mat2 normalized_matrix() const { return matrix(1.0); }
};

/// Casimir Delta = -det(M)/alpha^2 = a^2 + bc. Its sign separates the
/// integrable (Delta < 0) and chaotic (Delta > 0) regions.
inline double casimir(const MomentumABC& m) { return m.a * m.a + m.b * m.c; }

/// The metric-independent integral C = kappa^2/K^2 = (b-c)^2 / (4a^2 + (b+c)^2),
/// kept as an exact numerator/denominator pair so C = +inf (fiber case,
/// denominator 0) and C undefined (a = b = c = 0) need no floating sentinel.
struct CurvatureRatio {
  double num = 0.0;  // (b-c)^2
  double den = 0.0;  // 4a^2 + (b+c)^2

  bool defined() const { return num > 0.0 || den > 0.0; }
  bool infinite() const { return den == 0.0 && num > 0.0; }
  double value() const {
    if (!defined()) return std::numeric_limits<double>::quiet_NaN();
    if (infinite()) return std::numeric_limits<double>::infinity();
    return num / den;
  }
};

inline CurvatureRatio curvature_ratio(const MomentumABC& m) {
  const double d = m.b - m.c;
  const double s = m.b + m.c;
  return {d * d, 4.0 * m.a * m.a + s * s};
}

/// Element of SL(2,R) (or PSL(2,R) when projective is set, identifying g and -g).
struct GroupElement {
  Mat2 m = Mat2::Identity();
  bool projective = false;

  GroupElement() = default;
  explicit GroupElement(const Mat2& mat, bool projective_ = false) : m(mat), projective(projective_) {}
  GroupElement(double m11, double m12, double m21, double m22, bool projective_ = false)
      : projective(projective_) {
    m << m11, m12, m21, m22;
  }

  double det() const { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }
  bool is_unimodular(double tol = kDetTol) const { return std::abs(det() - 1.0) <= tol; }

  /// g <- g / sqrt(det g); applied after long products to pin det = 1.
  void renormalize() {
    const double d = det();
    if (!(d > 0.0)) throw std::runtime_error("GroupElement::renormalize: det <= 0");
    m /= std::sqrt(d);
  }

  GroupElement inverse() const {
    // adjugate; exact for det = 1
    Mat2 inv;
    inv << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
    return GroupElement(inv / det(), projective);
  }
};

inline GroupElement operator*(const GroupElement& a, const GroupElement& b) {
  return GroupElement(a.m * b.m, a.projective || b.projective);
}

/// Max-abs entry distance minimized over the PSL sign: min(|a-b|, |a+b|)_inf.
inline double psl_distance(const GroupElement& a, const GroupElement& b) {
  const double plus = (a.m - b.m).cwiseAbs().maxCoeff();
  const double minus = (a.m + b.m).cwiseAbs().maxCoeff();
  return std::min(plus, minus);
}

/// Cartan split of the velocity: X = Omega - k skew(Omega) = M/alpha (traceless),
/// Y = k skew(Omega) (skew). X + Y = Omega exactly.
struct CartanSplit {
  Mat2 X;
  Mat2 Y;
};

/// X = sym + skew with sym = (X + X^T)/2, skew = (X - X^T)/2.
std::pair<Mat2, Mat2> sym_skew_split(const Mat2& x);

/// <X,Y> = alpha (sym X, sym Y) + beta (skew X, skew Y), (A,B) = Tr(AB).
double inner_product(const Mat2& x, const Mat2& y, const MetricParams& metric);

/// |Omega|^2 = 4(u^2 + vw) + k(v - w)^2 in the normalized presentation alpha = 2.
double metric_norm2(const AlgebraVelocity& omega, double k);

/// 2M = alpha(Omega + Omega^T) + beta(Omega - Omega^T); returns normalized (a,b,c).
MomentumABC momentum_of(const AlgebraVelocity& omega, const MetricParams& metric);

/// Omega = ((alpha+beta) M + (beta-alpha) M^T) / (2 alpha beta); inverse of momentum_of.
AlgebraVelocity velocity_of(const MomentumABC& m, const MetricParams& metric);

/// (a,b,c) -> (u,v,w): u = a, v = ((2-k)b - kc)/(2(1-k)), w = ((2-k)c - kb)/(2(1-k)).
AlgebraVelocity velocity_from_abc(const MomentumABC& m, double k);

/// (u,v,w) -> (a,b,c): a = u, b = ((2-k)v + kw)/2, c = ((2-k)w + kv)/2.
MomentumABC abc_from_velocity(const AlgebraVelocity& omega, double k);

CartanSplit cartan_split(const AlgebraVelocity& omega, double k);

/// exp(tX) for traceless X, using X^2 = Delta I with Delta = -det X:
/// cosh/sinh for Delta > 0, cos/sin for Delta < 0, and the degenerate
/// series I + tX (with second-order corrections) for |Delta| <= kExpBranchTol.
GroupElement exp_traceless(const Mat2& x, double t);

/// exp(tY) for skew Y = theta ((0,-1),(1,0)): rotation by angle theta t.
GroupElement exp_rotation(const Mat2& y, double t);

}  // namespace sl2geo
