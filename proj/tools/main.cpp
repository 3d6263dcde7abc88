// Command-line front end: simulate geodesics on SL(2,R) with naturally
// reductive metrics, report invariants and conservation checks, estimate
// Lyapunov exponents on the modular quotient, and compute knot data.

#include "sl2geo/fuchsian.hpp"
#include "sl2geo/geodesic_flow.hpp"
#include "sl2geo/hyperbolic_plane.hpp"
#include "sl2geo/knots.hpp"
#include "sl2geo/lie_core.hpp"

#include "output.hpp"

#include "CLI11.hpp"

#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace {

using namespace sl2geo;
using cli::format_number;
using cli::JsonObject;

std::vector<double> parse_doubles(const std::string& csv, size_t expected, const std::string& flag) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t pos = 0;
    const double v = std::stod(item, &pos);
    if (pos != item.size()) throw CLI::ValidationError(flag, "not a number: " + item);
    out.push_back(v);
  }
  if (expected != 0 && out.size() != expected)
    throw CLI::ValidationError(flag, "expected " + std::to_string(expected) + " comma-separated values");
  return out;
}

struct MetricFlags {
  double k = 2.0;
  std::optional<double> alpha;
  std::optional<double> beta;

  void attach(CLI::App* app) {
    app->add_option("--k", k, "metric parameter k = 1 - beta/alpha (> 1); normalized alpha = 2");
    app->add_option("--alpha", alpha, "raw metric weight alpha > 0 (use with --beta)");
    app->add_option("--beta", beta, "raw metric weight beta < 0 (use with --alpha)");
  }

  MetricParams metric() const {
    if (alpha.has_value() != beta.has_value())
      throw std::invalid_argument("--alpha and --beta must be given together");
    if (alpha) return MetricParams(*alpha, *beta);
    return MetricParams::from_k(k);
  }
};

struct InitialFlags {
  std::string abc;
  std::string uvw;
  std::string g0;

  void attach(CLI::App* app) {
    app->add_option("--abc", abc, "momentum entries a,b,c (M = alpha((a,b),(c,-a)))");
    app->add_option("--uvw", uvw, "velocity entries u,v,w (Omega = ((u,v),(w,-u)))");
    app->add_option("--g0", g0, "initial group element m11,m12,m21,m22 (default identity)");
  }

  MomentumABC momentum(const MetricParams& metric) const {
    if (abc.empty() == uvw.empty())
      throw std::invalid_argument("give exactly one of --abc or --uvw");
    if (!abc.empty()) {
      const auto v = parse_doubles(abc, 3, "--abc");
      return {v[0], v[1], v[2]};
    }
    const auto v = parse_doubles(uvw, 3, "--uvw");
    return momentum_of({v[0], v[1], v[2]}, metric);
  }

  GroupElement group() const {
    if (g0.empty()) return GroupElement();
    const auto v = parse_doubles(g0, 4, "--g0");
    GroupElement g(v[0], v[1], v[2], v[3]);
    if (!g.is_unimodular(1e-9)) throw std::invalid_argument("--g0: determinant must be 1");
    return g;
  }
};

std::string group_csv(const std::vector<TrajectorySample>& samples) {
  std::string out = "t,m11,m12,m21,m22,u,v,w\n";
  for (const auto& s : samples) {
    const Mat2& g = s.state.g.m;
    out += format_number(s.t) + "," + format_number(g(0, 0)) + "," + format_number(g(0, 1)) + "," +
           format_number(g(1, 0)) + "," + format_number(g(1, 1)) + "," +
           format_number(s.state.omega.u) + "," + format_number(s.state.omega.v) + "," +
           format_number(s.state.omega.w) + "\n";
  }
  return out;
}

std::string projected_csv(const std::vector<TrajectorySample>& samples) {
  std::string out = "t,x,y,phi\n";
  for (const auto& s : samples) {
    const UnitTangentPoint p = project(s.state.g);
    out += format_number(s.t) + "," + format_number(p.z.x) + "," + format_number(p.z.y) + "," +
           format_number(p.phi) + "\n";
  }
  return out;
}

std::vector<TrajectorySample> closed_form_trajectory(const GroupElement& g0,
                                                     const AlgebraVelocity& omega,
                                                     const MetricParams& metric, double t_end,
                                                     double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("--dt must be positive");
  const auto n = static_cast<long long>(std::llround(t_end / dt));
  std::vector<TrajectorySample> out;
  out.reserve(static_cast<size_t>(n) + 1);
  for (long long i = 0; i <= n; ++i) {
    const double t = static_cast<double>(i) * dt;
    out.push_back({t, closed_form_geodesic(g0, omega, metric, t)});
  }
  return out;
}

const char* class_name(CurveClass c) {
  switch (c) {
    case CurveClass::Geodesic: return "Geodesic";
    case CurveClass::Hypercycle: return "Hypercycle";
    case CurveClass::Horocycle: return "Horocycle";
    case CurveClass::HyperbolicCircle: return "HyperbolicCircle";
    case CurveClass::Fiber: return "Fiber";
  }
  return "?";
}

std::string lyapunov_json(const LyapunovEstimate& est) {
  JsonObject obj;
  obj.number("C", est.C)
      .number("lambda", est.lambda)
      .number("T", est.T)
      .integer("renorm_count", est.renorm_count)
      .text("target", "sqrt(1-C)");
  return obj.str();
}

MomentumABC momentum_for_level(double c) {
  if (!(c >= 0.0)) throw std::invalid_argument("--levels: C must be >= 0");
  const double s = std::sqrt(c);
  if (c == 0.0) return {1.0, 0.0, 0.0};
  return {0.0, 1.0 + s, 1.0 - s};  // C = (b-c)^2/(b+c)^2 = c, V = 2
}

int run(int argc, char** argv) {
  CLI::App app{"geodesic flow on SL(2,R) with naturally reductive metrics"};
  app.require_subcommand(1);

  // ---- simulate ----
  auto* simulate = app.add_subcommand("simulate", "integrate a geodesic and write CSV/SVG output");
  MetricFlags sim_metric;
  InitialFlags sim_init;
  sim_metric.attach(simulate);
  sim_init.attach(simulate);
  double t_end = 10.0, dt = 1e-3;
  std::string out_group, out_proj, out_svg;
  bool use_oracle = false, modular = false;
  simulate->add_option("--t-end", t_end, "integration horizon");
  simulate->add_option("--dt", dt, "sample / oracle step");
  simulate->add_flag("--oracle", use_oracle, "integrate with the RK4 oracle instead of the closed form");
  simulate->add_option("--out-group", out_group, "group trajectory CSV path");
  simulate->add_option("--out-proj", out_proj, "projected trajectory CSV path");
  simulate->add_option("--svg", out_svg, "SVG plot of the projection");
  simulate->add_flag("--modular", modular, "overlay the PSL(2,Z) fundamental domain in the SVG");

  // ---- invariants / check ----
  auto* invars = app.add_subcommand("invariants", "report conserved quantities and drifts as JSON");
  auto* check = app.add_subcommand("check", "alias of invariants");
  MetricFlags inv_metric;
  InitialFlags inv_init;
  double inv_t_end = 10.0, inv_dt = 1e-3;
  for (CLI::App* sub : {invars, check}) {
    inv_metric.attach(sub);
    inv_init.attach(sub);
    sub->add_option("--t-end", inv_t_end, "drift-check horizon");
    sub->add_option("--dt", inv_dt, "oracle step");
  }

  // ---- lyapunov ----
  auto* lyap = app.add_subcommand("lyapunov", "Benettin estimate on the modular quotient (JSON)");
  MetricFlags lyap_metric;
  InitialFlags lyap_init;
  lyap_metric.attach(lyap);
  lyap_init.attach(lyap);
  double horizon = 50.0, delta0 = 1e-8, renorm_interval = 0.5;
  std::uint64_t seed = 0;
  std::string levels, lyap_out;
  unsigned jobs = 0;
  lyap->add_option("--T", horizon, "time horizon");
  lyap->add_option("--delta0", delta0, "renormalization separation");
  lyap->add_option("--renorm-interval", renorm_interval, "time between renormalizations");
  lyap->add_option("--seed", seed, "perturbation seed");
  lyap->add_option("--levels", levels, "comma-separated C levels to sweep (overrides --abc/--uvw)");
  lyap->add_option("--out", lyap_out, "write the JSON report to this file (atomic)");
  lyap->add_option("--jobs", jobs, "worker cap for --levels sweeps (default: hardware)");

  // ---- knot ----
  auto* knot = app.add_subcommand("knot", "cable parameters or modular-knot data (JSON)");
  knot->require_subcommand(1);
  auto* cable = knot->add_subcommand("cable", "trefoil-cable parameters of a periodic torus");
  MetricFlags cable_metric;
  InitialFlags cable_init;
  cable_metric.attach(cable);
  cable_init.attach(cable);
  double tol = 1e-9;
  long long qmax = 200;
  cable->add_option("--tol", tol, "rational-ratio tolerance");
  cable->add_option("--qmax", qmax, "largest denominator searched");
  auto* modular_knot = knot->add_subcommand("modular", "L/R word, Rademacher value, quadratic form");
  std::string matrix_csv;
  modular_knot->add_option("--matrix", matrix_csv, "integer entries a,b,c,d with ad - bc = 1")
      ->required();

  // ---- volume ----
  auto* volume = app.add_subcommand("volume", "volume of the (p,q) torus-knot complement");
  long long vol_p = 2, vol_q = 3;
  double vol_k = 2.0;
  bool gamma2 = false;
  volume->add_option("--p", vol_p, "torus knot parameter p");
  volume->add_option("--q", vol_q, "torus knot parameter q");
  volume->add_option("--k", vol_k, "metric parameter k > 1");
  volume->add_flag("--gamma2", gamma2, "volume of the level-2 congruence quotient (6x modular)");

  CLI11_PARSE(app, argc, argv);

  if (simulate->parsed()) {
    const MetricParams metric = sim_metric.metric();
    const MomentumABC m = sim_init.momentum(metric);
    const GroupElement g0 = sim_init.group();
    const AlgebraVelocity omega = velocity_of(m, metric);
    if (metric_norm2(omega, metric.k()) == 0.0)
      std::cerr << "warning: zero momentum, trajectory is a constant point\n";

    const auto samples = use_oracle ? integrate_oracle(g0, omega, metric, t_end, dt)
                                    : closed_form_trajectory(g0, omega, metric, t_end, dt);
    if (!out_group.empty()) cli::write_file_atomic(out_group, group_csv(samples));
    if (!out_proj.empty()) cli::write_file_atomic(out_proj, projected_csv(samples));
    if (!out_svg.empty()) {
      std::vector<HPoint> points;
      points.reserve(samples.size());
      for (const auto& s : samples) points.push_back(project(s.state.g).z);
      cli::SvgOptions svg_opts;
      svg_opts.modular_overlay = modular;
      cli::write_file_atomic(out_svg, cli::trajectory_svg(points, svg_opts));
    }
    if (out_group.empty() && out_proj.empty() && out_svg.empty())
      std::cout << projected_csv(samples);
    return 0;
  }

  if (invars->parsed() || check->parsed()) {
    const MetricParams metric = inv_metric.metric();
    const MomentumABC m = inv_init.momentum(metric);
    const GroupElement g0 = inv_init.group();
    const AlgebraVelocity omega = velocity_of(m, metric);
    const InvariantsRecord rec = invariants({g0, omega}, metric);

    JsonObject obj;
    obj.number("H", rec.H).number("Delta", rec.Delta).number("C", rec.C.value());
    obj.number("kappa", rec.kappa).number("V", rec.V);
    obj.text("class", rec.C.defined() ? class_name(classify_curve(rec.C)) : "undefined");

    const auto cf = closed_form_trajectory(g0, omega, metric, inv_t_end, inv_dt);
    const ConservationDrift dcf = check_conservation(cf, metric);
    obj.raw("drift_closed_form", JsonObject()
                                     .number("H", dcf.H)
                                     .number("Delta", dcf.Delta)
                                     .number("m", dcf.m)
                                     .str());
    const auto oracle = integrate_oracle(g0, omega, metric, inv_t_end, inv_dt);
    const ConservationDrift dor = check_conservation(oracle, metric);
    obj.raw("drift_oracle",
            JsonObject().number("H", dor.H).number("Delta", dor.Delta).number("m", dor.m).str());
    double residual = 0.0;
    for (size_t i = 0; i < oracle.size() && i < cf.size(); ++i)
      residual = std::max(residual, (oracle[i].state.g.m - cf[i].state.g.m).cwiseAbs().maxCoeff());
    obj.number("oracle_residual", residual);

    if (rec.Delta < 0.0) {
      const Frequencies f = frequencies(m, metric);
      obj.number("omega1", f.omega1).number("omega2", f.omega2);
    }
    std::cout << obj.str() << "\n";
    return 0;
  }

  if (lyap->parsed()) {
    std::vector<MomentumABC> momenta;
    if (!levels.empty()) {
      for (double c : parse_doubles(levels, 0, "--levels")) momenta.push_back(momentum_for_level(c));
    } else {
      momenta.push_back(lyap_init.momentum(lyap_metric.metric()));
    }
    const MetricParams metric = lyap_metric.metric();

    std::vector<std::string> reports(momenta.size());
    const unsigned worker_cap =
        jobs > 0 ? jobs : std::max(1u, std::thread::hardware_concurrency());
    for (size_t begin = 0; begin < momenta.size(); begin += worker_cap) {
      const size_t end = std::min(momenta.size(), begin + worker_cap);
      std::vector<std::future<LyapunovEstimate>> batch;
      for (size_t i = begin; i < end; ++i) {
        batch.push_back(std::async(std::launch::async, [&, i] {
          return lyapunov_estimate(momenta[i], metric, horizon, delta0, renorm_interval, seed);
        }));
      }
      for (size_t i = begin; i < end; ++i) reports[i] = lyapunov_json(batch[i - begin].get());
    }
    const std::string out = momenta.size() == 1 ? reports[0] : cli::json_array(reports);
    if (!lyap_out.empty())
      cli::write_file_atomic(lyap_out, out + "\n");
    else
      std::cout << out << "\n";
    return 0;
  }

  if (cable->parsed()) {
    const MetricParams metric = cable_metric.metric();
    const MomentumABC m = cable_init.momentum(metric);
    const auto params = cable_knot_params(m, metric, tol, qmax);
    if (!params) {
      std::cout << "{\"rational\":false}\n";
      return 0;
    }
    JsonObject obj;
    obj.integer("p", params->p).integer("q", params->q).integer("linking", params->linking);
    obj.boolean("warned_small_C", params->below_c_warn).boolean("degenerate", params->degenerate);
    std::cout << obj.str() << "\n";
    return 0;
  }

  if (modular_knot->parsed()) {
    const auto v = parse_doubles(matrix_csv, 4, "--matrix");
    ModularElement g;
    g.a = static_cast<std::int64_t>(std::llround(v[0]));
    g.b = static_cast<std::int64_t>(std::llround(v[1]));
    g.c = static_cast<std::int64_t>(std::llround(v[2]));
    g.d = static_cast<std::int64_t>(std::llround(v[3]));
    if (g.det() != 1) throw std::invalid_argument("--matrix: determinant must be 1");
    if (classify_modular_element(g) != ElementClass::Hyperbolic)
      throw std::invalid_argument("--matrix: element must be hyperbolic (|trace| > 2)");

    const LRWord word = lr_decompose(g);
    const QuadraticFormZ form = quadratic_form_of(g);
    JsonObject obj;
    obj.raw("matrix", "[" + std::to_string(g.a) + "," + std::to_string(g.b) + "," +
                          std::to_string(g.c) + "," + std::to_string(g.d) + "]");
    obj.integer("trace", g.trace());
    obj.text("word", word.str());
    obj.integer("rademacher", rademacher(word));
    obj.raw("form", "[" + std::to_string(form.A) + "," + std::to_string(form.B) + "," +
                        std::to_string(form.C) + "]");
    obj.number("length", axis_and_length(g).length);
    std::cout << obj.str() << "\n";
    return 0;
  }

  if (volume->parsed()) {
    const double v = gamma2 ? gamma2_volume(vol_k) : volume_torus_knot_complement(vol_p, vol_q, vol_k);
    std::cout << format_number(v) << "\n";
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.get_name() << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
}
