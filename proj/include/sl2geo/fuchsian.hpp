#pragma once

// Modular quotient machinery: fundamental-domain reduction for PSL(2,Z),
// quotient dynamics, Benettin Lyapunov estimation, the analytic third
// integral via Klein's j on the momentum hyperboloid, areas and volumes.

#include "sl2geo/geodesic_flow.hpp"
#include "sl2geo/hyperbolic_plane.hpp"

#include <cstdint>
#include <vector>

namespace sl2geo {

/// Integer 2x2 matrix of determinant 1 with PSL sign-equivalence; exact
/// arithmetic throughout.
struct ModularElement {
  std::int64_t a = 1, b = 0, c = 0, d = 1;

  std::int64_t det() const { return a * d - b * c; }
  std::int64_t trace() const { return a + d; }
  ModularElement inverse() const { return {d, -b, -c, a}; }
  ModularElement negated() const { return {-a, -b, -c, -d}; }

  static ModularElement identity() { return {}; }
  static ModularElement S() { return {0, -1, 1, 0}; }
  static ModularElement T(std::int64_t n = 1) { return {1, n, 0, 1}; }  // also the generator R
  static ModularElement L(std::int64_t n = 1) { return {1, 0, n, 1}; }

  Mat2 to_mat2() const {
    Mat2 m;
    m << static_cast<double>(a), static_cast<double>(b), static_cast<double>(c),
        static_cast<double>(d);
    return m;
  }
  GroupElement to_group() const { return GroupElement(to_mat2(), true); }

  bool operator==(const ModularElement& o) const = default;
  bool psl_equal(const ModularElement& o) const { return *this == o || *this == o.negated(); }
};

inline ModularElement operator*(const ModularElement& x, const ModularElement& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
          x.c * y.b + x.d * y.d};
}

Complexd mobius(const ModularElement& g, Complexd z);
HPoint mobius(const ModularElement& g, const HPoint& z);

/// One generator move of the reduction: z -> z + translate, then optionally
/// z -> -1/z.
struct ReductionMove {
  std::int64_t translate = 0;
  bool invert = false;
};

struct ReductionResult {
  HPoint z_reduced;
  ModularElement gamma;              // mobius(gamma, z_original) = z_reduced
  std::vector<ReductionMove> word;
  bool near_orbifold_point = false;  // within 1e-9 of i or exp(i pi/3) (either corner)
};

/// Reduce z into the closed fundamental domain {|Re z| <= 1/2, |z| >= 1} of
/// PSL(2,Z) by alternating integer translations and inversions. Boundary ties
/// go to Re z in [-1/2, 1/2) and |z| >= 1. Throws std::runtime_error if the
/// 10000-iteration cap is hit (numerical pathology near the real axis).
ReductionResult reduce_point(const HPoint& z);

struct GroupReduction {
  ModularElement gamma;   // gamma * g_reduced = +-g
  GroupElement g_reduced;
};

/// Left-translate g into the fundamental domain of the quotient:
/// project(g_reduced).z is reduced and gamma * g_reduced = +-g.
GroupReduction reduce_group(const GroupElement& g);

/// Fixed point in H^2 of the elliptic right momentum (Delta < 0 sheet):
/// z = (u + i sign(w) sqrt(-Delta)) / w. Throws std::domain_error for
/// Delta >= 0, where no such invariant exists.
HPoint fixed_point_of_momentum(const RightMomentum& m);

/// Klein's j from the Eisenstein q-expansions, after reduction to the
/// fundamental domain: E4 = 1 + 240 sum sigma3(n) q^n, E6 = 1 - 504 sum
/// sigma5(n) q^n, j = 1728 E4^3 / (E4^3 - E6^2). In the fundamental domain
/// |q| <= exp(-pi sqrt(3)), so 30 terms leave a far sub-1e-12 tail.
Complexd klein_j(const HPoint& z, int n_terms = 30);

/// The analytic third integral F = j(fixed point of g M g^{-1}); constant
/// along the flow and PSL(2,Z)-invariant on the Delta < 0 region.
Complexd third_integral(const GeodesicState& state, const MetricParams& metric);

struct LyapunovEstimate {
  double lambda = 0.0;
  double T = 0.0;
  int renorm_count = 0;
  double C = 0.0;  // level of the curvature integral
};

/// Benettin two-trajectory estimate of the top Lyapunov exponent on the
/// modular quotient. The momentum is rescaled to unit projected speed (a time
/// reparametrization of the same geodesic), so the estimate is comparable to
/// the unit-speed magnetic-flow prediction sqrt(1 - C). Both trajectories are
/// advanced with the closed form; the reference is reduced into the
/// fundamental domain each interval with the same integer element applied to
/// the perturbed copy; separation is hyperbolic distance of the projections
/// plus the fiber-angle difference; separations above 1 trigger an early
/// renormalization (counted).
LyapunovEstimate lyapunov_estimate(const MomentumABC& m, const MetricParams& metric,
                                   double T = 50.0, double delta0 = 1e-8,
                                   double renorm_interval = 0.5, std::uint64_t seed = 0);

/// Hyperbolic area 2(1 - 1/p - 1/q) pi of the (p,q) orbifold; p, q >= 2.
double area_pq(long long p, long long q);

/// Volume 4(k-1)(1 - 1/p - 1/q) pi^2 of the torus-knot complement carrying
/// the metric with parameter k > 1.
double volume_torus_knot_complement(long long p, long long q, double k);

/// Volume of the three-punctured-sphere quotient: exactly 6 times the modular
/// volume, i.e. 4(k-1) pi^2.
double gamma2_volume(double k);

}  // namespace sl2geo
