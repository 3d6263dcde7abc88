#include "sl2geo/fuchsian.hpp"

#include "sl2geo/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace sl2geo {

Complexd mobius(const ModularElement& g, Complexd z) {
  return (static_cast<double>(g.a) * z + static_cast<double>(g.b)) /
         (static_cast<double>(g.c) * z + static_cast<double>(g.d));
}

HPoint mobius(const ModularElement& g, const HPoint& z) { return HPoint::from(mobius(g, z.value())); }

namespace {

constexpr double kBoundaryTol = 1e-12;
constexpr double kOrbifoldTol = 1e-9;
constexpr int kReduceCap = 10000;

bool near_orbifold(const HPoint& z) {
  const double di = std::hypot(z.x, z.y - 1.0);
  const double rho = std::hypot(std::abs(z.x) - 0.5, z.y - std::sqrt(3.0) / 2.0);
  return di < kOrbifoldTol || rho < kOrbifoldTol;
}

}  // namespace

ReductionResult reduce_point(const HPoint& z0) {
  if (!(z0.y > 0.0)) throw std::domain_error("reduce_point: need Im z > 0");
  ReductionResult res;
  double x = z0.x, y = z0.y;
  ModularElement gamma = ModularElement::identity();

  for (int iter = 0; iter < kReduceCap; ++iter) {
    ReductionMove move;
    // half-open rounding puts Re into [-1/2, 1/2)
    const double nf = std::floor(x + 0.5);
    if (nf != 0.0) {
      const auto n = static_cast<std::int64_t>(nf);
      x -= nf;
      gamma = ModularElement::T(-n) * gamma;
      move.translate = -n;
    }
    const double r2 = x * x + y * y;
    if (r2 >= (1.0 - kBoundaryTol) * (1.0 - kBoundaryTol)) {
      if (move.translate != 0) res.word.push_back(move);
      res.z_reduced = {x, y};
      res.gamma = gamma;
      res.near_orbifold_point = near_orbifold(res.z_reduced);
      return res;
    }
    // z -> -1/z
    x = -x / r2;
    y = y / r2;
    gamma = ModularElement::S() * gamma;
    move.invert = true;
    res.word.push_back(move);
  }
  throw std::runtime_error("reduce_point: iteration cap exceeded");
}

GroupReduction reduce_group(const GroupElement& g) {
  if (!g.is_unimodular(1e-9)) throw std::domain_error("reduce_group: det g != 1");
  const ReductionResult r = reduce_point(project(g).z);
  GroupReduction out;
  out.gamma = r.gamma.inverse();
  out.g_reduced = GroupElement(r.gamma.to_mat2() * g.m, g.projective);
  return out;
}

HPoint fixed_point_of_momentum(const RightMomentum& m) {
  const double delta = m.casimir();
  if (!(delta < 0.0)) throw std::domain_error("fixed_point_of_momentum: need Delta < 0");
  // Delta < 0 forces w != 0
  return {m.u / m.w, std::sqrt(-delta) / std::abs(m.w)};
}

namespace {

// divisor power sums sigma3, sigma5 for n = 1..n_terms
std::pair<std::vector<double>, std::vector<double>> divisor_sums(int n_terms) {
  std::vector<std::int64_t> s3(n_terms + 1, 0), s5(n_terms + 1, 0);
  for (std::int64_t d = 1; d <= n_terms; ++d) {
    const std::int64_t d3 = d * d * d;
    const std::int64_t d5 = d3 * d * d;
    for (std::int64_t n = d; n <= n_terms; n += d) {
      s3[n] += d3;
      s5[n] += d5;
    }
  }
  std::vector<double> s3d(s3.begin(), s3.end()), s5d(s5.begin(), s5.end());
  return {s3d, s5d};
}

}  // namespace

Complexd klein_j(const HPoint& z, int n_terms) {
  if (n_terms < 1) throw std::invalid_argument("klein_j: need n_terms >= 1");
  const HPoint zr = reduce_point(z).z_reduced;
  const auto [s3, s5] = divisor_sums(n_terms);

  const Complexd q = std::exp(Complexd(0.0, 2.0 * std::numbers::pi) * zr.value());
  Complexd e4(1.0, 0.0), e6(1.0, 0.0), qn(1.0, 0.0);
  for (int n = 1; n <= n_terms; ++n) {
    qn *= q;
    e4 += 240.0 * s3[static_cast<size_t>(n)] * qn;
    e6 -= 504.0 * s5[static_cast<size_t>(n)] * qn;
  }
  const Complexd e4cubed = e4 * e4 * e4;
  return 1728.0 * e4cubed / (e4cubed - e6 * e6);
}

Complexd third_integral(const GeodesicState& state, const MetricParams& metric) {
  // F = j(fixed point of m), m = g M g^{-1}. The fixed point is equivariant,
  // fp(g M g^{-1}) = g . fp(M), and the left-momentum route avoids the Casimir
  // cancellation that forming m in floating point would introduce for large g.
  const MomentumABC m = momentum_of(state.omega, metric);
  const HPoint left_fixed = fixed_point_of_momentum({m.a, m.b, m.c});
  return klein_j(mobius(GroupElement(state.g.m), left_fixed));
}

namespace {

// quotient configuration distance: hyperbolic distance of projections plus
// the wrapped fiber-angle difference
double quotient_distance(const GroupElement& g1, const GroupElement& g2) {
  const UnitTangentPoint p1 = project(g1);
  const UnitTangentPoint p2 = project(g2);
  double dphi = std::fmod(p1.phi - p2.phi, 2.0 * std::numbers::pi);
  if (dphi > std::numbers::pi) dphi -= 2.0 * std::numbers::pi;
  if (dphi < -std::numbers::pi) dphi += 2.0 * std::numbers::pi;
  return hyperbolic_distance(p1.z, p2.z) + std::abs(dphi);
}

// pull g2 back toward g1 along the ambient chord so their distance is delta0
void renormalize_pair(const GroupElement& g1, GroupElement& g2, double target, double measured) {
  g2.m = g1.m + (target / measured) * (g2.m - g1.m);
  g2.renormalize();
}

void align_sign(const GroupElement& ref, GroupElement& g) {
  if ((ref.m.cwiseProduct(g.m)).sum() < 0.0) g.m = -g.m;
}

}  // namespace

LyapunovEstimate lyapunov_estimate(const MomentumABC& m0, const MetricParams& metric, double T,
                                   double delta0, double renorm_interval, std::uint64_t seed) {
  if (!(T > 0.0)) throw std::invalid_argument("lyapunov_estimate: need T > 0");
  if (!(delta0 > 0.0 && delta0 < 1e-2))
    throw std::invalid_argument("lyapunov_estimate: need 0 < delta0 << 1");
  if (!(renorm_interval > 0.0))
    throw std::invalid_argument("lyapunov_estimate: need renorm_interval > 0");

  const CurvatureRatio c_ratio = curvature_ratio(m0);
  const double v = std::sqrt(c_ratio.den);
  if (!(v > 0.0)) throw std::domain_error("lyapunov_estimate: fiber momentum (V = 0)");
  // unit projected speed; a pure time reparametrization of the same geodesic
  const MomentumABC m{m0.a / v, m0.b / v, m0.c / v};
  AlgebraVelocity omega = velocity_of(m, metric);

  GroupElement g;  // identity
  // generic traceless perturbation of the group factor only (the velocity is
  // shared, so integrable tori separate boundedly while Ad expansion is kept)
  SplitMix64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  Mat2 xi;
  const double x11 = rng.uniform(-1.0, 1.0);
  xi << x11, rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), -x11;
  GroupElement g2 = exp_traceless(xi, delta0);
  for (int i = 0; i < 2; ++i) {
    const double d = quotient_distance(g, g2);
    renormalize_pair(g, g2, delta0, d);
  }

  const auto n_intervals = static_cast<long long>(std::ceil(T / renorm_interval - 1e-12));
  const double tau = T / static_cast<double>(n_intervals);

  double log_sum = 0.0;
  int renorm_count = 0;
  for (long long i = 0; i < n_intervals; ++i) {
    // advance both copies by the same right factor (half-steps so saturation
    // can be caught mid-interval)
    for (int half = 0; half < 2; ++half) {
      const CartanSplit split = cartan_split(omega, metric.k());
      const Mat2 factor = exp_traceless(split.X, 0.5 * tau).m * exp_rotation(split.Y, 0.5 * tau).m;
      g.m *= factor;
      g2.m *= factor;
      omega = AlgebraVelocity::from_matrix(exp_rotation(split.Y, -0.5 * tau).m * omega.matrix() *
                                           exp_rotation(split.Y, 0.5 * tau).m);
      if (half == 0) {
        const double d_mid = quotient_distance(g, g2);
        if (d_mid > 1.0) {  // saturation: renormalize early
          align_sign(g, g2);
          log_sum += std::log(d_mid / delta0);
          renormalize_pair(g, g2, delta0, d_mid);
          ++renorm_count;
        }
      }
    }
    // quotient step: reduce the reference, apply the same element to the copy
    const ReductionResult red = reduce_point(project(g).z);
    const Mat2 gm = red.gamma.to_mat2();
    g.m = gm * g.m;
    g2.m = gm * g2.m;
    align_sign(g, g2);

    const double d = quotient_distance(g, g2);
    log_sum += std::log(d / delta0);
    renormalize_pair(g, g2, delta0, d);
    ++renorm_count;
  }

  LyapunovEstimate est;
  est.lambda = std::max(0.0, log_sum / T);
  est.T = T;
  est.renorm_count = renorm_count;
  est.C = c_ratio.value();
  return est;
}

double area_pq(long long p, long long q) {
  // the orbifold with cone points of orders p, q exists for any p, q >= 2;
  // coprimality only matters for the knot-complement interpretation
  if (p < 2 || q < 2) throw std::invalid_argument("area_pq: need p, q >= 2");
  return 2.0 * (1.0 - 1.0 / static_cast<double>(p) - 1.0 / static_cast<double>(q)) *
         std::numbers::pi;
}

double volume_torus_knot_complement(long long p, long long q, double k) {
  if (p < 2 || q < 2 || std::gcd(p, q) != 1)
    throw std::invalid_argument("volume_torus_knot_complement: need coprime p, q >= 2");
  if (!(k > 1.0)) throw std::invalid_argument("volume_torus_knot_complement: need k > 1");
  return 4.0 * (k - 1.0) *
         (1.0 - 1.0 / static_cast<double>(p) - 1.0 / static_cast<double>(q)) * std::numbers::pi *
         std::numbers::pi;
}

double gamma2_volume(double k) { return 6.0 * volume_torus_knot_complement(2, 3, k); }

}  // namespace sl2geo
