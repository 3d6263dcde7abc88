#include "sl2geo/knots.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sl2geo {

ElementClass classify_modular_element(const ModularElement& g) {
  const std::int64_t t = std::abs(g.trace());
  if (t < 2) return ElementClass::Elliptic;
  if (t == 2) return ElementClass::Parabolic;
  return ElementClass::Hyperbolic;
}

AxisInfo axis_and_length(const ModularElement& g) {
  if (classify_modular_element(g) != ElementClass::Hyperbolic)
    throw std::domain_error("axis_and_length: element is not hyperbolic");
  // hyperbolic integer elements always have c != 0 (c = 0 forces trace +-2)
  const auto a = static_cast<double>(g.a), c = static_cast<double>(g.c),
             d = static_cast<double>(g.d);
  const double t = a + d;
  const double sq = std::sqrt(t * t - 4.0);
  AxisInfo info;
  // eigenvector (x, 1) for eigenvalue (tr + sqrt(D))/2 solves c x + d = lambda
  const double sign_t = g.trace() > 0 ? 1.0 : -1.0;
  info.attracting = ((a - d) + sign_t * sq) / (2.0 * c);
  info.repelling = ((a - d) - sign_t * sq) / (2.0 * c);
  info.length = 2.0 * std::acosh(std::abs(t) / 2.0);
  return info;
}

ClosedGeodesic closed_geodesic_of(const ModularElement& g_in) {
  if (classify_modular_element(g_in) != ElementClass::Hyperbolic)
    throw std::domain_error("closed_geodesic_of: element is not hyperbolic");
  const ModularElement g = g_in.trace() > 0 ? g_in : g_in.negated();  // PSL: trace > 2

  const auto a = static_cast<double>(g.a), b = static_cast<double>(g.b),
             c = static_cast<double>(g.c), d = static_cast<double>(g.d);
  const double t = a + d;
  const double lambda = 0.5 * (t + std::sqrt(t * t - 4.0));
  const double mu = 1.0 / lambda;

  const auto eigenvector = [&](double ev) {
    const Vec2 row(b, ev - a);
    const Vec2 col(ev - d, c);
    return row.norm() >= col.norm() ? row : col;
  };
  Vec2 vp = eigenvector(lambda);
  Vec2 vm = eigenvector(mu);

  Mat2 p;
  p.col(0) = vp;
  p.col(1) = vm;
  double det = p(0, 0) * p(1, 1) - p(0, 1) * p(1, 0);
  if (det < 0.0) {
    p.col(1) = -p.col(1);
    det = -det;
  }
  p /= std::sqrt(det);

  ClosedGeodesic out;
  out.g0 = GroupElement(p);
  out.X << 1.0, 0.0, 0.0, -1.0;
  out.T = std::log(lambda);
  return out;
}

namespace {

const ModularElement kR = ModularElement::T(1);
const ModularElement kL = ModularElement::L(1);

bool nonnegative(const ModularElement& m) { return m.a >= 0 && m.b >= 0 && m.c >= 0 && m.d >= 0; }

void check_entries(const ModularElement& m) {
  const std::int64_t bound = 1000000000000000ll;  // keep int64 products exact
  if (std::abs(m.a) > bound || std::abs(m.b) > bound || std::abs(m.c) > bound ||
      std::abs(m.d) > bound)
    throw std::runtime_error("lr_decompose: entries exceed exact-arithmetic bound");
}

// sign of (P + sqrt(D))/Q - r for integers, D > 0 not a perfect square
int cmp_quadratic(std::int64_t P, std::int64_t Q, std::int64_t D, std::int64_t r) {
  const std::int64_t n = P - r * Q;
  int sign_num;
  if (n >= 0) {
    sign_num = 1;
  } else {
    const auto sq = static_cast<__int128>(n) * n;
    sign_num = sq < static_cast<__int128>(D) ? 1 : -1;
  }
  return Q > 0 ? sign_num : -sign_num;
}

// exact floor of (P + sqrt(D))/Q; the double estimate is corrected by exact
// sign tests, so conjugation decisions never depend on rounding
std::int64_t floor_quadratic(std::int64_t P, std::int64_t Q, std::int64_t D) {
  const double est =
      (static_cast<double>(P) + std::sqrt(static_cast<double>(D))) / static_cast<double>(Q);
  auto n = static_cast<std::int64_t>(std::floor(est));
  while (cmp_quadratic(P, Q, D, n) < 0) --n;
  while (cmp_quadratic(P, Q, D, n + 1) >= 0) ++n;
  return n;
}

std::vector<std::pair<char, std::int64_t>> runs_of(const std::vector<char>& letters) {
  std::vector<std::pair<char, std::int64_t>> runs;
  for (char ch : letters) {
    if (!runs.empty() && runs.back().first == ch)
      ++runs.back().second;
    else
      runs.emplace_back(ch, 1);
  }
  return runs;
}

// peel a totally nonnegative det-1 matrix into its unique R/L letter sequence
std::vector<char> peel(ModularElement w) {
  std::vector<char> letters;
  const ModularElement r_inv = kR.inverse();
  const ModularElement l_inv = kL.inverse();
  for (int guard = 0; guard < 1000000; ++guard) {
    if (w == ModularElement::identity()) return letters;
    if (w.a >= w.c && w.b >= w.d) {
      letters.push_back('R');
      w = r_inv * w;
    } else if (w.c >= w.a && w.d >= w.b) {
      letters.push_back('L');
      w = l_inv * w;
    } else {
      break;  // impossible for nonnegative det-1 inputs
    }
  }
  throw std::runtime_error("lr_decompose: peeling failed");
}

ModularElement power(const ModularElement& gen, std::int64_t n) {
  // R^n and L^n have closed forms; fall back to repeated squaring otherwise
  if (gen == kR) return ModularElement::T(n);
  if (gen == kL) return ModularElement::L(n);
  ModularElement acc = ModularElement::identity();
  ModularElement base = gen;
  for (std::int64_t e = n; e > 0; e >>= 1) {
    if (e & 1) acc = acc * base;
    if (e > 1) base = base * base;
  }
  return acc;
}

}  // namespace

ModularElement LRWord::matrix() const {
  ModularElement m = ModularElement::identity();
  for (const auto& [r_exp, l_exp] : blocks) m = m * ModularElement::T(r_exp) * ModularElement::L(l_exp);
  return m;
}

std::string LRWord::str() const {
  std::string s;
  for (const auto& [r_exp, l_exp] : blocks) {
    if (!s.empty()) s += ' ';
    s += "R^" + std::to_string(r_exp) + " L^" + std::to_string(l_exp);
  }
  return s;
}

long long rademacher(const LRWord& word) {
  long long sum = 0;
  for (const auto& [r_exp, l_exp] : word.blocks) sum += r_exp - l_exp;
  return sum;
}

LRWord lr_decompose(const ModularElement& g) {
  if (classify_modular_element(g) != ElementClass::Hyperbolic)
    throw std::domain_error("lr_decompose: element is not hyperbolic");
  ModularElement w = g.trace() > 0 ? g : g.negated();
  ModularElement conj = ModularElement::identity();  // invariant: w = conj (+-g) conj^{-1}

  const auto conjugate_by = [&](const ModularElement& p) {
    const ModularElement p_inv = p.inverse();
    w = p_inv * w * p;
    conj = p_inv * conj;
    check_entries(w);
    check_entries(conj);
  };

  // Continued-fraction reduction of the attracting fixed point
  // x = ((a - d) + sqrt(tr^2 - 4)) / (2c) until w is totally nonnegative.
  // Conjugating by R^n sends x -> x - n; by L^m sends x -> x/(1 - mx), which
  // on the inverse 1/x = ((d - a) + sqrt(D))/(2b) is again a translation.
  for (int guard = 0; guard < 100000; ++guard) {
    if (nonnegative(w)) {
      std::vector<char> letters = peel(w);
      // rotate so the cyclic word starts with an R-run and ends with an L-run
      for (int spins = 0; spins < 4; ++spins) {
        const auto runs = runs_of(letters);
        if (runs.size() < 2) throw std::runtime_error("lr_decompose: single-letter word");
        if (runs.front().first == 'R' && runs.back().first == 'L') break;
        const auto [ch, count] = runs.front();
        conjugate_by(power(ch == 'R' ? kR : kL, count));
        std::rotate(letters.begin(), letters.begin() + static_cast<std::ptrdiff_t>(count),
                    letters.end());
      }

      const auto runs = runs_of(letters);
      std::vector<std::pair<std::int64_t, std::int64_t>> blocks;
      for (size_t i = 0; i + 1 < runs.size(); i += 2) blocks.emplace_back(runs[i].second, runs[i + 1].second);

      // canonical form: lexicographically minimal cyclic rotation of the blocks
      size_t best = 0;
      const size_t s = blocks.size();
      for (size_t j = 1; j < s; ++j) {
        for (size_t off = 0; off < s; ++off) {
          const auto& lhs = blocks[(j + off) % s];
          const auto& rhs = blocks[(best + off) % s];
          if (lhs != rhs) {
            if (lhs < rhs) best = j;
            break;
          }
        }
      }
      if (best != 0) {
        ModularElement prefix = ModularElement::identity();
        for (size_t j = 0; j < best; ++j)
          prefix = prefix * ModularElement::T(blocks[j].first) * ModularElement::L(blocks[j].second);
        conjugate_by(prefix);
        std::rotate(blocks.begin(), blocks.begin() + static_cast<std::ptrdiff_t>(best), blocks.end());
      }

      LRWord word;
      word.blocks = std::move(blocks);
      word.conjugator = conj;
      const ModularElement rebuilt = word.conjugator.inverse() * word.matrix() * word.conjugator;
      if (!rebuilt.psl_equal(g))
        throw std::runtime_error("lr_decompose: exact reconstruction failed");
      return word;
    }

    const std::int64_t d_disc = w.trace() * w.trace() - 4;
    const std::int64_t p_num = w.a - w.d;
    const std::int64_t q_den = 2 * w.c;
    if (cmp_quadratic(p_num, q_den, d_disc, 1) > 0 || cmp_quadratic(p_num, q_den, d_disc, 0) < 0) {
      // x > 1 or x < 0: translate by floor(x)
      const std::int64_t n = floor_quadratic(p_num, q_den, d_disc);
      conjugate_by(ModularElement::T(n));
    } else {
      // 0 < x < 1: absorb an L-run of length floor(1/x), 1/x = ((d-a)+sqrt(D))/(2b)
      const std::int64_t m = floor_quadratic(w.d - w.a, 2 * w.b, d_disc);
      conjugate_by(ModularElement::L(m));
    }
  }
  throw std::runtime_error("lr_decompose: no nonnegative representative found");
}

QuadraticFormZ quadratic_form_of(const ModularElement& g) {
  if (classify_modular_element(g) != ElementClass::Hyperbolic)
    throw std::domain_error("quadratic_form_of: element is not hyperbolic");
  QuadraticFormZ q{g.c, g.d - g.a, -g.b};
  const std::int64_t divisor = std::gcd(std::gcd(std::abs(q.A), std::abs(q.B)), std::abs(q.C));
  if (divisor > 1) {
    q.A /= divisor;
    q.B /= divisor;
    q.C /= divisor;
  }
  if (q.A < 0 || (q.A == 0 && q.B < 0)) {
    q.A = -q.A;
    q.B = -q.B;
    q.C = -q.C;
  }
  return q;
}

QuadraticFormZ transformed(const QuadraticFormZ& f, const ModularElement& g) {
  QuadraticFormZ out;
  out.A = f.A * g.a * g.a + f.B * g.a * g.c + f.C * g.c * g.c;
  out.B = 2 * f.A * g.a * g.b + f.B * (g.a * g.d + g.b * g.c) + 2 * f.C * g.c * g.d;
  out.C = f.A * g.b * g.b + f.B * g.b * g.d + f.C * g.d * g.d;
  return out;
}

std::optional<CableKnotParams> cable_knot_params(const Frequencies& freqs, double tol,
                                                 long long qmax) {
  const auto ratio = detect_rational_ratio(freqs, tol, qmax);
  if (!ratio) return std::nullopt;
  CableKnotParams params;
  params.p = ratio->first;
  params.q = ratio->second;
  params.linking = 6 * params.p;
  params.degenerate = params.p == 0;
  return params;
}

std::optional<CableKnotParams> cable_knot_params(const MomentumABC& m, const MetricParams& metric,
                                                 double tol, long long qmax) {
  const double delta = casimir(m);
  if (!(delta < 0.0)) throw std::domain_error("cable_knot_params: need Delta < 0");
  auto params = cable_knot_params(frequencies(m, metric), tol, qmax);
  if (params) {
    const CurvatureRatio c = curvature_ratio(m);
    params->below_c_warn = !c.infinite() && c.value() <= kCableCWarn;
  }
  return params;
}

}  // namespace sl2geo
