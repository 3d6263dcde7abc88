#include "sl2geo/hyperbolic_plane.hpp"

#include "sl2geo/geodesic_flow.hpp"

#include "doctest.h"
#include "support.hpp"

#include <cmath>
#include <numbers>
#include <vector>

using namespace sl2geo;
using sl2geo::testing::random_momentum;

namespace {

const MetricParams kSasaki = MetricParams::from_k(2.0);

GroupElement random_group(SplitMix64& rng) {
  const Mat2 x = sl2geo::testing::random_traceless(rng, 1.0);
  return exp_traceless(x, rng.uniform(-1.5, 1.5));
}

std::vector<HPoint> sampled_projection(const MomentumABC& m, const MetricParams& metric, double t0,
                                       double t1, int n) {
  const AlgebraVelocity omega = velocity_of(m, metric);
  std::vector<HPoint> out;
  out.reserve(static_cast<size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    const double t = t0 + (t1 - t0) * i / n;
    out.push_back(project(closed_form_geodesic(GroupElement(), omega, metric, t).g).z);
  }
  return out;
}

}  // namespace

TEST_SUITE_BEGIN("hyperbolic_plane");

TEST_CASE("projection of marked elements") {
  const UnitTangentPoint base = project(GroupElement());
  CHECK(base.z.x == 0.0);
  CHECK(base.z.y == 1.0);
  CHECK(base.phi == doctest::Approx(std::numbers::pi / 2));

  for (double t : {-0.7, 0.4, 1.3}) {
    const UnitTangentPoint p = project(GroupElement(std::exp(t), 0, 0, std::exp(-t)));
    CHECK(p.z.x == doctest::Approx(0.0));
    CHECK(p.z.y == doctest::Approx(std::exp(2 * t)).epsilon(1e-14));
  }

  for (double s : {-2.0, 0.5}) {
    const UnitTangentPoint p = project(GroupElement(1, s, 0, 1));
    CHECK(p.z.x == doctest::Approx(s));
    CHECK(p.z.y == doctest::Approx(1.0));
  }
}

TEST_CASE("mobius action") {
  const HPoint z{0.3, 0.8};
  const HPoint same = mobius(GroupElement(), z);
  CHECK(same.x == z.x);
  CHECK(same.y == z.y);

  const HPoint inverted = mobius(GroupElement(0, -1, 1, 0), HPoint{0.0, 0.1});
  CHECK(inverted.x == doctest::Approx(0.0));
  CHECK(inverted.y == doctest::Approx(10.0).epsilon(1e-13));

  SplitMix64 rng(61);
  for (int i = 0; i < 200; ++i) {
    const GroupElement g1 = random_group(rng);
    const GroupElement g2 = random_group(rng);
    const HPoint w{rng.uniform(-3, 3), std::exp(rng.uniform(-1.5, 1.5))};

    // homomorphism
    const HPoint lhs = mobius(g1 * g2, w);
    const HPoint rhs = mobius(g1, mobius(g2, w));
    CHECK(std::abs(lhs.x - rhs.x) <= 1e-12 * std::max(1.0, std::abs(lhs.x)));
    CHECK(std::abs(lhs.y - rhs.y) <= 1e-12 * std::max(1.0, lhs.y));
    CHECK(lhs.y > 0.0);

    // isometry
    const HPoint w2{rng.uniform(-3, 3), std::exp(rng.uniform(-1.5, 1.5))};
    const double before = hyperbolic_distance(w, w2);
    const double after = hyperbolic_distance(mobius(g1, w), mobius(g1, w2));
    CHECK(after == doctest::Approx(before).epsilon(1e-12));
  }
}

TEST_CASE("hyperbolic distance") {
  const HPoint z{0.4, 1.7};
  CHECK(hyperbolic_distance(z, z) == 0.0);
  CHECK(hyperbolic_distance({0, 1}, {0, std::numbers::e}) == doctest::Approx(1.0).epsilon(1e-14));

  SplitMix64 rng(13);
  for (int i = 0; i < 100; ++i) {
    const HPoint z1{rng.uniform(-3, 3), std::exp(rng.uniform(-2, 2))};
    const HPoint z2{rng.uniform(-3, 3), std::exp(rng.uniform(-2, 2))};
    CHECK(hyperbolic_distance(z1, z2) == hyperbolic_distance(z2, z1));
    // asinh form agrees with the cosh definition on well-separated points
    const double d = hyperbolic_distance(z1, z2);
    const double dx = z1.x - z2.x, dy = z1.y - z2.y;
    CHECK(std::cosh(d) ==
          doctest::Approx(1.0 + (dx * dx + dy * dy) / (2 * z1.y * z2.y)).epsilon(1e-12));
  }
}

TEST_CASE("projected curve parameters") {
  const ProjectedCurve circle = projected_curve_params({1.0, -2.0, 1.0});
  REQUIRE(circle.kind == ProjectedCurve::Kind::Circle);
  CHECK(circle.center.real() == doctest::Approx(1.0));
  CHECK(circle.center.imag() == doctest::Approx(1.5));
  CHECK(circle.radius == doctest::Approx(std::sqrt(5.0) / 2.0));

  const ProjectedCurve fiber = projected_curve_params({0.0, -1.0, 1.0});
  REQUIRE(fiber.kind == ProjectedCurve::Kind::Point);
  CHECK(fiber.point.x == doctest::Approx(0.0));
  CHECK(fiber.point.y == doctest::Approx(1.0));

  const ProjectedCurve line = projected_curve_params({1.0, 1.0, 0.0});
  REQUIRE(line.kind == ProjectedCurve::Kind::Line);
  CHECK(line.slope == doctest::Approx(2.0));
  CHECK(line.intercept == doctest::Approx(1.0));

  const ProjectedCurve vertical = projected_curve_params({1.0, 0.0, 0.0});
  REQUIRE(vertical.kind == ProjectedCurve::Kind::Line);
  CHECK(std::isinf(vertical.slope));
  CHECK(vertical.intercept == 0.0);

  CHECK_THROWS_AS(projected_curve_params({0, 0, 0}), std::domain_error);
}

TEST_CASE("circle law: sampled projections stay on the printed circle") {
  SplitMix64 rng(404);
  int done = 0;
  while (done < 100) {
    const MomentumABC m = random_momentum(rng, 2.0);
    if (!(casimir(m) < -0.05) || std::abs(m.c) < 0.05) continue;
    ++done;
    const ProjectedCurve curve = projected_curve_params(m);
    REQUIRE(curve.kind == ProjectedCurve::Kind::Circle);
    // circle wholly inside the upper half-plane exactly when Delta < 0
    CHECK(curve.radius < curve.center.imag());

    const double period = std::numbers::pi / std::sqrt(-casimir(m));
    for (const HPoint& z : sampled_projection(m, kSasaki, 0.0, std::min(period, 50.0), 200)) {
      CHECK(std::abs(std::abs(z.value() - curve.center) - curve.radius) <= 1e-8);
    }
  }

  // line branch: c = 0 momenta project onto y = (2a/b) x + 1
  for (const MomentumABC m : {MomentumABC{1.0, 1.0, 0.0}, MomentumABC{0.7, -1.3, 0.0}}) {
    const ProjectedCurve line = projected_curve_params(m);
    for (const HPoint& z : sampled_projection(m, kSasaki, -0.4, 0.4, 100)) {
      CHECK(std::abs(z.y - (line.slope * z.x + line.intercept)) /
                std::sqrt(1.0 + line.slope * line.slope) <=
            1e-8);
    }
  }
  for (const HPoint& z : sampled_projection({1.0, 0.0, 0.0}, kSasaki, -1.0, 1.0, 100)) {
    CHECK(std::abs(z.x) <= 1e-10);  // vertical line
  }
}

TEST_CASE("explicit projection") {
  const HPoint at0 = explicit_projection({0.8, -1.1, 0.4}, 0.0);
  CHECK(at0.x == doctest::Approx(0.0));
  CHECK(at0.y == doctest::Approx(1.0));

  // vertical geodesic limit
  for (double t : {-0.8, 0.3, 1.1}) {
    const HPoint z = explicit_projection({1.0, 0.0, 0.0}, t);
    CHECK(std::abs(z.x) <= 1e-12);
    CHECK(z.y == doctest::Approx(std::exp(2 * t)).epsilon(1e-12));
  }

  // two independent formulas agree on their common domain
  SplitMix64 rng(555);
  for (int i = 0; i < 100; ++i) {
    const MomentumABC m = random_momentum(rng, 2.0);
    const double t = rng.uniform(-1.5, 1.5);
    const HPoint direct = explicit_projection(m, t);
    const AlgebraVelocity omega = velocity_of(m, kSasaki);
    const HPoint via_group = project(closed_form_geodesic(GroupElement(), omega, kSasaki, t).g).z;
    const double scale = std::max(1.0, std::abs(via_group.value()));
    CHECK(std::abs(direct.value() - via_group.value()) <= 1e-10 * scale);
  }

  // near-degenerate branch |Delta| < 1e-9: the series continuation
  for (int i = 0; i < 100; ++i) {
    const double a = rng.uniform(-1.5, 1.5);
    const double b = rng.uniform(0.3, 1.5) * (rng.unit() < 0.5 ? -1.0 : 1.0);
    const double delta = rng.uniform(-5e-10, 5e-10);
    const MomentumABC m{a, b, (delta - a * a) / b};
    const double t = rng.uniform(-1.5, 1.5);
    const HPoint direct = explicit_projection(m, t);
    const AlgebraVelocity omega = velocity_of(m, kSasaki);
    const HPoint via_group = project(closed_form_geodesic(GroupElement(), omega, kSasaki, t).g).z;
    CHECK(std::abs(direct.value() - via_group.value()) <=
          1e-10 * std::max(1.0, std::abs(via_group.value())));
  }
}

TEST_CASE("geodesic curvature and speed") {
  const auto [kappa, v] = geodesic_curvature({1.0, -2.0, 1.0});
  CHECK(kappa == doctest::Approx(-3.0 / std::sqrt(5.0)).epsilon(1e-14));
  CHECK(v == doctest::Approx(std::sqrt(5.0)).epsilon(1e-14));

  const auto [kappa0, v0] = geodesic_curvature({1.0, 0.7, 0.7});
  CHECK(kappa0 == 0.0);
  CHECK(v0 > 0.0);

  CHECK_THROWS_AS(geodesic_curvature({0.0, -1.0, 1.0}), std::domain_error);

  // kappa^2 = C and kappa V = b - c
  SplitMix64 rng(321);
  for (int i = 0; i < 1000; ++i) {
    const MomentumABC m = random_momentum(rng, 3.0);
    const CurvatureRatio c = curvature_ratio(m);
    if (!(c.den > 1e-12)) continue;
    const auto [k2, v2] = geodesic_curvature(m);
    CHECK(k2 * k2 == doctest::Approx(c.value()).epsilon(1e-12));
    CHECK(std::abs(k2 * v2 - (m.b - m.c)) <= 1e-10 * std::max(1.0, std::abs(m.b - m.c)));
  }
}

TEST_CASE("magnetic residual and finite-difference Frenet data") {
  const double h = 1e-3;
  {
    const MomentumABC m{1.0, -2.0, 1.0};
    const auto samples = sampled_projection(m, kSasaki, 0.0, 2.0, 2000);
    const auto [kappa, v] = geodesic_curvature(m);
    CHECK(magnetic_residual(samples, kappa, v, h) <= 1e-5);

    double kappa_err = 0.0, speed_err = 0.0;
    for (const FrenetSample& f : fd_curvature_speed(samples, h)) {
      kappa_err = std::max(kappa_err, std::abs(f.kappa - kappa));
      speed_err = std::max(speed_err, std::abs(f.speed - v));
    }
    CHECK(kappa_err <= 1e-4);
    CHECK(speed_err <= 1e-8 * v);  // constant projected speed
  }
  {
    // plain geodesic (b = c): same residual with kappa = 0
    const MomentumABC m{0.5, 0.4, 0.4};
    const auto samples = sampled_projection(m, kSasaki, 0.0, 1.0, 1000);
    const auto [kappa, v] = geodesic_curvature(m);
    CHECK(kappa == 0.0);
    CHECK(magnetic_residual(samples, kappa, v, h) <= 1e-5);
  }

  const std::vector<HPoint> constant(10, HPoint{0.0, 1.0});
  CHECK_THROWS_AS(magnetic_residual(constant, 0.0, 0.0, h), std::domain_error);
  CHECK_THROWS_AS(magnetic_residual({HPoint{}, HPoint{}}, 0.0, 1.0, h), std::invalid_argument);
}

TEST_CASE("curve taxonomy") {
  CHECK(classify_curve(curvature_ratio({1, 0, 0})) == CurveClass::Geodesic);
  CHECK(classify_curve(curvature_ratio({1, -2, 1})) == CurveClass::HyperbolicCircle);
  CHECK(classify_curve(curvature_ratio({0, -1, 1})) == CurveClass::Fiber);
  CHECK(classify_curve(curvature_ratio({0.0, 1.5, 1.0})) == CurveClass::Hypercycle);  // C = 1/25
  CHECK(classify_curve(curvature_ratio({0.0, 0.7, 0.0})) == CurveClass::Horocycle);   // C = 1
  CHECK_THROWS_AS(classify_curve(curvature_ratio({0, 0, 0})), std::invalid_argument);
}

TEST_CASE("Riemannian submersion: group speed vs projected speed") {
  // In coordinates (x, y, phi) the metric is (dx^2+dy^2)/y^2 + (k-1)(dphi + dx/y)^2,
  // so the sampled group speed must equal sqrt(2H) and dominate the
  // hyperbolic speed of the projection, with equality when b = c.
  SplitMix64 rng(888);
  for (const MomentumABC m : {MomentumABC{1.0, -2.0, 1.0}, MomentumABC{0.5, 0.4, 0.4},
                              MomentumABC{-0.3, 1.2, 0.1}}) {
    const double k = 2.0;
    const AlgebraVelocity omega = velocity_of(m, kSasaki);
    const InvariantsRecord rec = invariants({GroupElement(), omega}, kSasaki);

    const int n = 4000;
    const double h = 1e-3;
    std::vector<double> xs, ys, phis;
    double prev_phi = 0.0;
    for (int i = 0; i <= n; ++i) {
      const UnitTangentPoint p =
          project(closed_form_geodesic(GroupElement(), omega, kSasaki, i * h).g);
      double phi = p.phi;
      if (i > 0) {  // unwrap
        while (phi - prev_phi > std::numbers::pi) phi -= 2 * std::numbers::pi;
        while (phi - prev_phi < -std::numbers::pi) phi += 2 * std::numbers::pi;
      }
      prev_phi = phi;
      xs.push_back(p.z.x);
      ys.push_back(p.z.y);
      phis.push_back(phi);
    }
    for (int i = 1; i < n; ++i) {
      const double xd = (xs[i + 1] - xs[i - 1]) / (2 * h);
      const double yd = (ys[i + 1] - ys[i - 1]) / (2 * h);
      const double phid = (phis[i + 1] - phis[i - 1]) / (2 * h);
      const double fiber = phid + xd / ys[i];
      const double group_speed2 = (xd * xd + yd * yd) / (ys[i] * ys[i]) + (k - 1.0) * fiber * fiber;
      const double projected_speed2 = (xd * xd + yd * yd) / (ys[i] * ys[i]);
      CHECK(group_speed2 == doctest::Approx(2.0 * rec.H).epsilon(1e-5));
      CHECK(projected_speed2 <= group_speed2 + 1e-12);
      if (m.b == m.c) CHECK(projected_speed2 == doctest::Approx(group_speed2).epsilon(1e-6));
    }
  }
  (void)rng;
}

TEST_SUITE_END();
