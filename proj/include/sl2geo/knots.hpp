#pragma once

// Knot-theoretic layer: modular knots at C = 0 (hyperbolic elements of
// PSL(2,Z), closed geodesics, positive L/R words, the Rademacher invariant,
// Artin's quadratic-form correspondence) and trefoil-cable parameters of the
// periodic tori in the integrable region.

#include "sl2geo/fuchsian.hpp"
#include "sl2geo/geodesic_flow.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sl2geo {

enum class ElementClass { Elliptic, Parabolic, Hyperbolic };

/// |tr| < 2 elliptic, |tr| = 2 parabolic, |tr| > 2 hyperbolic; exact integers.
ElementClass classify_modular_element(const ModularElement& g);

struct AxisInfo {
  double attracting = 0.0;  // fixed point on the real axis with |eigenvalue| > 1
  double repelling = 0.0;
  double length = 0.0;      // translation length 2 arccosh(|tr|/2)
};

/// Fixed points (roots of c x^2 + (d-a) x - b) and translation length of a
/// hyperbolic element.
AxisInfo axis_and_length(const ModularElement& g);

struct ClosedGeodesic {
  GroupElement g0;  // base point: the normalized eigenbasis, det 1
  Mat2 X;           // diag(1, -1)
  double T = 0.0;   // log of the large eigenvalue; g0 e^{TX} = +- g g0
};

/// Diagonalize a hyperbolic element as g = P diag(lambda, 1/lambda) P^{-1}
/// with lambda > 1 and det P = 1; the geodesic g0 e^{t diag(1,-1)} then closes
/// up under g. Its projection is the axis of g (a C = 0 geodesic).
ClosedGeodesic closed_geodesic_of(const ModularElement& g);

/// Cyclic positive word R^{a1} L^{b1} ... R^{as} L^{bs} in the parabolic
/// generators R = ((1,1),(0,1)), L = ((1,0),(1,1)), with a conjugator c such
/// that c^{-1} (word) c = +- g exactly in integer arithmetic. Blocks are the
/// lexicographically minimal cyclic rotation.
struct LRWord {
  std::vector<std::pair<std::int64_t, std::int64_t>> blocks;
  ModularElement conjugator;

  ModularElement matrix() const;
  std::string str() const;  // "R^a1 L^b1 ..."
};

/// Conjugacy-invariant word of a hyperbolic element. The continued-fraction
/// expansion of the attracting fixed point (floors decided exactly on the
/// quadratic irrational) conjugates g to a totally nonnegative representative,
/// which peels uniquely into R and L letters.
LRWord lr_decompose(const ModularElement& g);

/// Rademacher invariant sum a_i - sum b_i of the cyclic word.
long long rademacher(const LRWord& word);

/// Indefinite integer binary quadratic form Ax^2 + Bxy + Cy^2 preserved by g.
struct QuadraticFormZ {
  std::int64_t A = 0, B = 0, C = 0;

  std::int64_t discriminant() const { return B * B - 4 * A * C; }
  std::int64_t eval(std::int64_t x, std::int64_t y) const {
    return A * x * x + B * x * y + C * y * y;
  }
  bool operator==(const QuadraticFormZ&) const = default;
};

/// The form (c, d-a, -b) of a hyperbolic element, gcd-normalized with A > 0
/// (or A = 0, B > 0); g-invariance is an exact integer identity.
QuadraticFormZ quadratic_form_of(const ModularElement& g);

/// Pullback of the form along (x,y) -> (ax+by, cx+dy); exact integers.
QuadraticFormZ transformed(const QuadraticFormZ& form, const ModularElement& g);

inline constexpr double kCableCWarn = 10.0;  // "sufficiently large C" threshold

struct CableKnotParams {
  long long p = 0;
  long long q = 1;
  long long linking = 0;      // 6p
  bool below_c_warn = false;  // C <= kCableCWarn: embeddedness not guaranteed
  bool degenerate = false;    // omega1 = 0 (p = 0)
};

/// Cable parameters of the periodic torus: (p, q) from omega1/omega2 = p/q,
/// linking number 6p. Throws std::domain_error for Delta >= 0; nullopt when no
/// rational ratio is detected within (tol, qmax).
std::optional<CableKnotParams> cable_knot_params(const MomentumABC& m, const MetricParams& metric,
                                                 double tol = 1e-9, long long qmax = 200);

/// Same, from already-computed frequencies (no curvature level available).
std::optional<CableKnotParams> cable_knot_params(const Frequencies& freqs, double tol = 1e-9,
                                                 long long qmax = 200);

}  // namespace sl2geo
