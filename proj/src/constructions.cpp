#include "mixnorm/constructions.hpp"

#include "mixnorm/errors.hpp"
#include "mixnorm/fft.hpp"
#include "mixnorm/quadrature.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numbers>

namespace mixnorm {

std::vector<double> fejer(std::size_t N) {
  if (N == 0) throw DomainError("fejer: N must be positive");
  std::vector<double> c(2 * N - 1);
  const double dn = static_cast<double>(N);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double k = static_cast<double>(i) - (dn - 1.0);
    c[i] = 1.0 - std::abs(k) / dn;
  }
  return c;
}

AnalyticFunction gn_poly(std::size_t N) {
  const auto F = fejer(N);
  // z^{2N} F_{N-1}(z): index 2N + k for k in [-(N-1), N-1].
  std::vector<cplx> c(3 * N);
  for (std::size_t i = 0; i < F.size(); ++i) c[N + 1 + i] = F[i];
  return AnalyticFunction(std::move(c));
}

// ------------------------------------------------------------ Bloch witness

BlochWitness bloch_witness(const AnalyticFunction& g, double delta_cap, const GridSpec& grid) {
  const auto verdict = little_bloch_verdict(g, grid);
  if (verdict.verdict == BlochClass::LITTLE_BLOCH) throw NotFoundError("bloch_witness: g looks little-Bloch");
  const auto gp = differentiate(g);
  constexpr std::size_t kAngles = 4096;
  BlochWitness w;
  for (int n = 1; n <= 60; ++n) {
    const double r = 1.0 - std::exp2(-n);
    const std::size_t deff = effective_degree(gp, r);
    const std::size_t M = fft::next_pow2(std::max<std::size_t>(kAngles, 2 * deff + 2));
    const auto v = circle_samples(gp, r, M).values;
    double mx = 0.0;
    for (const auto& x : v) mx = std::max(mx, std::abs(x));
    if (gp.tail_at(r) > grid.tail_rel_tol * mx) break;
    std::size_t best = 0;
    const std::size_t stride = M / kAngles;
    for (std::size_t j = 0; j < kAngles; ++j)
      if (std::abs(v[j * stride]) > std::abs(v[best * stride])) best = j;
    const double t = 2.0 * std::numbers::pi * static_cast<double>(best) / kAngles;
    w.r.push_back(r);
    w.t.push_back(t);
    w.values.push_back((1.0 - r) * std::abs(v[best * stride]));
  }
  if (w.r.size() < 4) throw NotFoundError("bloch_witness: fewer than four witnesses");
  auto holds = [&](double delta) {
    for (std::size_t i = 0; i < w.r.size(); ++i) {
      const double x = 1.0 - w.r[i];
      for (int j = 0; j < 64; ++j) {
        const double t = w.t[i] + delta * x * (2.0 * j / 63.0 - 1.0);
        if (x * std::abs(eval(gp, std::polar(w.r[i], t))) < delta) return false;
      }
    }
    return true;
  };
  const double hi_cap = std::min(delta_cap, std::numbers::pi / 8.0 * (1.0 - 1e-12));
  if (holds(hi_cap)) {
    w.delta = hi_cap;
    return w;
  }
  double lo = 0.0;
  double hi = hi_cap;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (holds(mid) ? lo : hi) = mid;
  }
  if (!(lo > 0.0)) throw NotFoundError("bloch_witness: no positive delta");
  w.delta = lo;
  return w;
}

// --------------------------------------------------------------- lacunary

LacunaryParams LacunaryParams::standard(int K, int L, const SpaceParams& sp) {
  LacunaryParams lp;
  lp.K = K;
  lp.L = L;
  lp.nu = sp.alpha + sp.inv_p() - 1.0;
  std::size_t N = 1;
  for (int n = 1; n <= L; ++n) {
    N *= static_cast<std::size_t>(K);
    lp.N_seq.push_back(N);
    lp.r_seq.push_back(1.0 - 1.0 / static_cast<double>(N));
    lp.t_seq.push_back(0.0);
  }
  lp.validate();
  return lp;
}

void LacunaryParams::validate() const {
  if (K < 3) throw InvariantViolation("lacunary: K must be at least 3");
  const auto L_ = static_cast<std::size_t>(L);
  if (N_seq.size() != L_ || r_seq.size() != L_ || t_seq.size() != L_)
    throw InvariantViolation("lacunary: sequence lengths differ from L");
  for (std::size_t n = 0; n < L_; ++n) {
    const double dn = static_cast<double>(N_seq[n]);
    const double prod = dn * (1.0 - r_seq[n]);
    // 1 - r_n carries rounding of order N_n * eps.
    const double tol = 64.0 * DBL_EPSILON * dn;
    if (prod < 1.0 - tol || prod > 2.0 + tol) throw InvariantViolation("lacunary: N_n(1 - r_n) outside [1, 2]");
    if (n + 1 < L_) {
      if (N_seq[n + 1] < 3 * N_seq[n]) throw InvariantViolation("lacunary: N_{n+1}/N_n < 3");
      if (3 * N_seq[n] - 1 >= N_seq[n + 1] + 1) throw InvariantViolation("lacunary: overlapping blocks");
    }
  }
}

AnalyticFunction lacunary_embed(std::span<const cplx> a, const LacunaryParams& params) {
  params.validate();
  if (a.size() > static_cast<std::size_t>(params.L)) throw InvariantViolation("lacunary: sequence longer than L");
  std::size_t top = 0;
  for (std::size_t n = 0; n < a.size(); ++n)
    if (a[n] != cplx{}) top = 3 * params.N_seq[n];
  std::vector<cplx> c(std::max<std::size_t>(top, 1));
  for (std::size_t n = 0; n < a.size(); ++n) {
    if (a[n] == cplx{}) continue;
    const std::size_t N = params.N_seq[n];
    const double dn = static_cast<double>(N);
    const cplx amp = a[n] * std::pow(dn, params.nu);
    for (std::size_t k = N + 1; k <= 3 * N - 1; ++k) {
      const double fk = 1.0 - std::abs(static_cast<double>(k) - 2.0 * dn) / dn;
      c[k] = amp * fk * std::polar(1.0, -params.t_seq[n] * static_cast<double>(k));
    }
  }
  return AnalyticFunction(std::move(c));
}

// --------------------------------------------------------------- X_{nu,beta}

double xnu_delta(int n, int K) { return std::pow(static_cast<double>(K), -n); }

namespace {

// w^e; integer exponents by repeated squaring, which is much cheaper than the
// complex exp/log route and exact up to rounding.
cplx cpow(cplx w, double e) {
  if (e == std::round(e) && std::abs(e) <= 64.0) {
    auto n = static_cast<long>(std::abs(e));
    cplx acc = 1.0;
    cplx b = w;
    while (n > 0) {
      if (n & 1) acc *= b;
      b *= b;
      n >>= 1;
    }
    return e < 0 ? 1.0 / acc : acc;
  }
  return std::pow(w, e);
}

}  // namespace

std::size_t xnu_degree(int L, int K, double beta) {
  const double d = xnu_delta(L, K);
  const double growth = std::max(-beta - 1.0, 0.0) * std::log(45.0 / d);
  return fft::next_pow2(static_cast<std::size_t>(std::ceil((45.0 + growth) / d)));
}

AnalyticFunction xnu_family(int n, double nu, double beta, int K, std::size_t degree) {
  if (degree == 0) degree = xnu_degree(n, K, beta);
  const double d = xnu_delta(n, K);
  const double amp = std::pow(d, nu) * std::pow(1.0 + d, beta);
  return scale(binomial_series(1.0 / (1.0 + d), -beta, degree), amp);
}

cplx xnu_value(int n, double nu, double beta, int K, cplx z) {
  const double d = xnu_delta(n, K);
  return std::pow(d, nu) * cpow(1.0 + d - z, beta);
}

cplx xnu_derivative(int n, double nu, double beta, int K, cplx z) {
  const double d = xnu_delta(n, K);
  return -beta * std::pow(d, nu) * cpow(1.0 + d - z, beta - 1.0);
}

AnalyticFunction xnu_embed(std::span<const cplx> a, double nu, double beta, int K, std::size_t degree) {
  if (degree == 0) degree = xnu_degree(static_cast<int>(std::max<std::size_t>(a.size(), 1)), K, beta);
  AnalyticFunction sum = constant(0.0);
  bool first = true;
  for (std::size_t n = 0; n < a.size(); ++n) {
    if (a[n] == cplx{}) continue;
    auto term = scale(xnu_family(static_cast<int>(n + 1), nu, beta, K, degree), a[n]);
    sum = first ? term : add(sum, term);
    first = false;
  }
  return sum;
}

namespace {

// Per-term constants of sum a_n delta_n^nu (1 + delta_n - z)^beta.
struct XnuTerms {
  std::vector<cplx> coef;  // a_n delta_n^nu
  std::vector<double> shift;  // 1 + delta_n
};

XnuTerms xnu_terms(std::span<const cplx> a, double nu, int K) {
  XnuTerms t;
  for (std::size_t n = 0; n < a.size(); ++n) {
    if (a[n] == cplx{}) continue;
    const double d = xnu_delta(static_cast<int>(n + 1), K);
    t.coef.push_back(a[n] * std::pow(d, nu));
    t.shift.push_back(1.0 + d);
  }
  return t;
}

}  // namespace

DiskFunction xnu_embed_evaluator(std::span<const cplx> a, double nu, double beta, int K) {
  DiskFunction::EvaluatorOptions eo;
  eo.adaptive_angles = true;
  return DiskFunction(
      [t = xnu_terms(a, nu, K), beta](cplx z) {
        cplx s = 0.0;
        for (std::size_t n = 0; n < t.coef.size(); ++n) s += t.coef[n] * cpow(t.shift[n] - z, beta);
        return s;
      },
      eo);
}

DiskFunction::Evaluator xnu_embed_derivative(std::span<const cplx> a, double nu, double beta, int K) {
  return [t = xnu_terms(a, nu, K), beta](cplx z) {
    cplx s = 0.0;
    for (std::size_t n = 0; n < t.coef.size(); ++n) s += t.coef[n] * cpow(t.shift[n] - z, beta - 1.0);
    return -beta * s;
  };
}

DiskFunction xnu_majorant(int L, double nu, double beta, int K) {
  DiskFunction::EvaluatorOptions eo;
  eo.adaptive_angles = true;
  return DiskFunction(
      [L, nu, beta, K](cplx z) {
        double s = 0.0;
        for (int n = 1; n <= L; ++n) s += std::abs(xnu_value(n, nu, beta, K, z));
        return cplx(s, 0.0);
      },
      eo);
}

// ----------------------------------------------------- test and obstruction

AnalyticFunction obstruction_fn(double theta, const SpaceParams& sp, std::size_t degree) {
  return binomial_series(std::polar(1.0, -theta), sp.growth_exponent(), degree);
}

AnalyticFunction growth_test_fn(cplx z0, const SpaceParams& sp, std::size_t degree) {
  const double a = std::abs(z0);
  if (a >= 1.0) throw DomainError("growth_test_fn: |z0| >= 1");
  if (a == 0.0) return constant(1.0);
  const double s = sp.growth_exponent();
  return scale(binomial_series(std::conj(z0), 2.0 * s, degree), std::pow(1.0 - a * a, s));
}

// ------------------------------------------------------ approximation h_n

namespace {

struct GradedRule {
  std::vector<double> s;
  std::vector<double> w;
};

// 16 panels of 16 Gauss-Legendre nodes on [0, 1], geometrically refined at 1.
const GradedRule& graded_rule() {
  static const GradedRule rule = [] {
    GradedRule g;
    const auto& gl = quad::gauss_legendre(16);
    std::vector<double> br{0.0};
    for (int i = 1; i < 16; ++i) br.push_back(1.0 - std::exp2(-i));
    br.push_back(1.0);
    for (std::size_t p = 0; p + 1 < br.size(); ++p) {
      const double a = br[p];
      const double b = br[p + 1];
      for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        g.s.push_back(0.5 * (a + b) + 0.5 * (b - a) * gl.nodes[i]);
        g.w.push_back(0.5 * (b - a) * gl.weights[i]);
      }
    }
    return g;
  }();
  return rule;
}

template <class F>
cplx segment_integral(F&& integrand, cplx z) {
  const auto& rule = graded_rule();
  cplx acc = 0.0;
  for (std::size_t i = 0; i < rule.s.size(); ++i) acc += rule.w[i] * integrand(rule.s[i] * z);
  return acc * z;
}

void require_boundary(const GeneratorSpec& spec, double theta) {
  if (spec.dw_point() != DwPoint::BOUNDARY) throw DomainError("approximation scheme needs a boundary spec");
  if (!(theta > 0.0 && theta < 1.0)) throw DomainError("approximation scheme needs theta in (0, 1)");
}

}  // namespace

cplx approx_psi(const Herglotz& P, double theta, cplx z) {
  const cplx w = (1.0 - z) * P(z);
  if (w.real() < 0.0 && std::abs(w.imag()) <= 1e-12 * std::abs(w))
    throw BranchError("approx_psi: argument of (1 - z)P(z) reached +-pi");
  if (theta == 0.5) return std::sqrt(w);
  return std::pow(w, 1.0 - theta);
}

DiskFunction approx_sequence_hn(cplx f0, const DiskFunction::Evaluator& fprime, const GeneratorSpec& spec,
                                double theta, double n) {
  require_boundary(spec, theta);
  const Herglotz P = spec.herglotz();
  DiskFunction::EvaluatorOptions eo;
  eo.adaptive_angles = true;
  return DiskFunction(
      [f0, fprime, P, theta, n](cplx z) {
        return f0 + segment_integral(
                        [&](cplx u) { return n * fprime(u) / (n + approx_psi(P, theta, u)); }, z);
      },
      eo);
}

DiskFunction approx_sequence_hn(const AnalyticFunction& f, const GeneratorSpec& spec, double theta, double n) {
  const auto fp = differentiate(f);
  return approx_sequence_hn(f.coefficient(0), [fp](cplx u) { return eval(fp, u); }, spec, theta, n);
}

DiskFunction approx_error_hn(const DiskFunction::Evaluator& fprime, const GeneratorSpec& spec, double theta,
                             double n) {
  require_boundary(spec, theta);
  const Herglotz P = spec.herglotz();
  DiskFunction::EvaluatorOptions eo;
  eo.adaptive_angles = true;
  return DiskFunction(
      [fprime, P, theta, n](cplx z) {
        return -segment_integral(
            [&](cplx u) {
              const cplx psi = approx_psi(P, theta, u);
              return psi * fprime(u) / (n + psi);
            },
            z);
      },
      eo);
}

DiskFunction approx_membership_hn(const DiskFunction::Evaluator& fprime, const GeneratorSpec& spec, double theta,
                                  double n) {
  require_boundary(spec, theta);
  const Herglotz P = spec.herglotz();
  DiskFunction::EvaluatorOptions eo;
  eo.adaptive_angles = true;
  return DiskFunction(
      [fprime, P, theta, n](cplx z) {
        const cplx psi = approx_psi(P, theta, z);
        return (1.0 - z) * (1.0 - z) * P(z) * n * fprime(z) / (n + psi);
      },
      eo);
}

double default_theta(const SpaceParams& sp) { return std::min(sp.alpha, 1.0) / 2.0; }

}  // namespace mixnorm
