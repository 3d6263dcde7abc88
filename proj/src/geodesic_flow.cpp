#include "sl2geo/geodesic_flow.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sl2geo {

RightMomentum right_momentum(const GeodesicState& state, const MetricParams& metric) {
  const MomentumABC m = momentum_of(state.omega, metric);
  const Mat2 g = state.g.m;
  const Mat2 mm = g * m.normalized_matrix() * state.g.inverse().m;
  return {mm(0, 0), mm(0, 1), mm(1, 0)};
}

GeodesicState closed_form_geodesic(const GroupElement& g0, const AlgebraVelocity& omega0,
                                   const MetricParams& metric, double t) {
  const CartanSplit split = cartan_split(omega0, metric.k());
  const GroupElement ex = exp_traceless(split.X, t);
  const GroupElement ey = exp_rotation(split.Y, t);
  GeodesicState out;
  out.g = GroupElement(g0.m * ex.m * ey.m, g0.projective);
  out.omega = AlgebraVelocity::from_matrix(ey.m.transpose() * omega0.matrix() * ey.m);
  return out;
}

AlgebraVelocity euler_poincare_rhs(const AlgebraVelocity& omega, double k) {
  const Mat2 om = omega.matrix();
  const Mat2 rhs = 0.5 * k * (om.transpose() * om - om * om.transpose());
  return AlgebraVelocity::from_matrix(rhs);
}

namespace {

struct FlowState {
  Mat2 g;
  Mat2 omega;
};

FlowState rhs(const FlowState& s, double k) {
  const Mat2 om_t = s.omega.transpose();
  return {s.g * s.omega, 0.5 * k * (om_t * s.omega - s.omega * om_t)};
}

FlowState axpy(const FlowState& s, double h, const FlowState& d) {
  return {s.g + h * d.g, s.omega + h * d.omega};
}

}  // namespace

std::vector<TrajectorySample> integrate_oracle(const GroupElement& g0, const AlgebraVelocity& omega0,
                                               const MetricParams& metric, double t_end, double dt,
                                               const OracleOptions& options) {
  if (!(dt > 0.0)) throw std::invalid_argument("integrate_oracle: need dt > 0");
  const double k = metric.k();
  const auto n_steps = static_cast<long long>(std::llround(t_end / dt));

  FlowState s{g0.m, omega0.matrix()};
  std::vector<TrajectorySample> out;
  out.reserve(static_cast<size_t>(n_steps) + 1);
  out.push_back({0.0, {GroupElement(s.g, g0.projective), AlgebraVelocity::from_matrix(s.omega)}});

  for (long long i = 1; i <= n_steps; ++i) {
    const FlowState k1 = rhs(s, k);
    const FlowState k2 = rhs(axpy(s, 0.5 * dt, k1), k);
    const FlowState k3 = rhs(axpy(s, 0.5 * dt, k2), k);
    const FlowState k4 = rhs(axpy(s, dt, k3), k);
    s.g += (dt / 6.0) * (k1.g + 2.0 * k2.g + 2.0 * k3.g + k4.g);
    s.omega += (dt / 6.0) * (k1.omega + 2.0 * k2.omega + 2.0 * k3.omega + k4.omega);

    if (s.g.cwiseAbs().maxCoeff() > options.overflow_guard)
      throw std::runtime_error("integrate_oracle: entry exceeded overflow guard");
    if (options.renorm_every > 0 && i % options.renorm_every == 0) {
      GroupElement g(s.g);
      g.renormalize();
      s.g = g.m;
    }
    out.push_back({static_cast<double>(i) * dt,
                   {GroupElement(s.g, g0.projective), AlgebraVelocity::from_matrix(s.omega)}});
  }
  return out;
}

InvariantsRecord invariants(const GeodesicState& state, const MetricParams& metric) {
  const MomentumABC m = momentum_of(state.omega, metric);
  const double sum = m.b + m.c;
  const double diff = m.b - m.c;
  InvariantsRecord rec;
  rec.H = metric.alpha / (4.0 * metric.beta) *
          (metric.beta * (4.0 * m.a * m.a + sum * sum) - metric.alpha * diff * diff);
  rec.Delta = casimir(m);
  rec.C = curvature_ratio(m);
  rec.m = right_momentum(state, metric);
  rec.V = std::sqrt(rec.C.den);
  rec.kappa = rec.C.den > 0.0 ? diff / rec.V : std::numeric_limits<double>::quiet_NaN();
  return rec;
}

namespace {

double rel_drift(double value, double reference) {
  return std::abs(value - reference) / std::max(std::abs(reference), 1e-3);
}

}  // namespace

ConservationDrift check_conservation(const std::vector<TrajectorySample>& trajectory,
                                     const MetricParams& metric) {
  if (trajectory.empty()) throw std::invalid_argument("check_conservation: empty trajectory");
  const InvariantsRecord first = invariants(trajectory.front().state, metric);
  const Mat2 m0 = first.m.matrix(1.0);
  const double m_scale = std::max(m0.cwiseAbs().maxCoeff(), 1e-3);

  ConservationDrift drift;
  for (const auto& sample : trajectory) {
    const InvariantsRecord rec = invariants(sample.state, metric);
    drift.H = std::max(drift.H, rel_drift(rec.H, first.H));
    drift.Delta = std::max(drift.Delta, rel_drift(rec.Delta, first.Delta));
    drift.m = std::max(drift.m, (rec.m.matrix(1.0) - m0).cwiseAbs().maxCoeff() / m_scale);
  }
  return drift;
}

Frequencies frequencies(const MomentumABC& m, const MetricParams& metric) {
  const double delta = casimir(m);
  if (!(delta < 0.0)) throw std::domain_error("frequencies: defined only for Delta < 0");
  Frequencies f;
  f.omega1 = (metric.beta - metric.alpha) / (2.0 * metric.beta) * std::abs(m.b - m.c);
  f.omega2 = std::sqrt(-delta);
  return f;
}

std::optional<std::pair<long long, long long>> detect_rational_ratio(const Frequencies& freqs,
                                                                     double tol, long long qmax) {
  if (!(freqs.omega2 > 0.0)) throw std::domain_error("detect_rational_ratio: need omega2 > 0");
  const double x = freqs.omega1 / freqs.omega2;

  // continued-fraction convergents p_n / q_n of x
  long long p_prev = 0, q_prev = 1;  // p_{-2}/q_{-2}
  long long p = 1, q = 0;            // p_{-1}/q_{-1}; first step yields floor(x)/1
  double frac = x;
  for (int i = 0; i < 64; ++i) {
    const double a_f = std::floor(frac);
    if (a_f > 9e17) break;
    const auto a = static_cast<long long>(a_f);
    const long long p_next = a * p + p_prev;
    const long long q_next = a * q + q_prev;
    p_prev = p; q_prev = q;
    p = p_next; q = q_next;
    if (q > qmax) return std::nullopt;
    if (std::abs(x - static_cast<double>(p) / static_cast<double>(q)) <= tol) return {{p, q}};
    const double rem = frac - a_f;
    if (rem < 1e-18) break;
    frac = 1.0 / rem;
  }
  return std::nullopt;
}

PeriodicityCheck verify_group_periodicity(const GroupElement& g0, const MomentumABC& m,
                                          const MetricParams& metric, long long /*p*/, long long q,
                                          double residual_tol) {
  PeriodicityCheck check;
  const AlgebraVelocity omega = velocity_of(m, metric);
  if (metric_norm2(omega, metric.k()) == 0.0) {
    check.degenerate = true;
    check.found = true;
    return check;
  }
  const double delta = casimir(m);
  if (!(delta < 0.0)) throw std::domain_error("verify_group_periodicity: need Delta < 0");
  const double omega2 = std::sqrt(-delta);

  double best_res = std::numeric_limits<double>::infinity();
  long long best_j = 0;
  for (long long j = 1; j <= 2 * q; ++j) {
    const double T = std::numbers::pi * static_cast<double>(j) / omega2;
    const GeodesicState state = closed_form_geodesic(g0, omega, metric, T);
    const double res = psl_distance(state.g, g0);
    if (res < best_res) {
      best_res = res;
      best_j = j;
    }
    if (res <= residual_tol) {
      check.T = T;
      check.residual = res;
      check.j = j;
      check.found = true;
      return check;
    }
  }
  check.T = std::numbers::pi * static_cast<double>(best_j) / omega2;
  check.residual = best_res;
  check.j = best_j;
  return check;
}

}  // namespace sl2geo
