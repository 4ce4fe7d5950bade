#include "mixnorm/operators.hpp"

#include "mixnorm/constructions.hpp"
#include "mixnorm/errors.hpp"
#include "mixnorm/fft.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace mixnorm {

double sup_norm(const AnalyticFunction& phi) {
  if (phi.is_polynomial()) return integral_mean(phi, 1.0, kInf);
  const double t = phi.tail_at(1.0);
  if (!std::isfinite(t)) return kInf;
  return integral_mean(AnalyticFunction(phi.coefficients()), 1.0, kInf) + t;
}

namespace {

std::size_t composition_resolution(const DiskFunction& f, const AnalyticFunction& phi) {
  std::size_t df = 64;
  if (f.is_series()) df = std::min<std::size_t>(effective_degree(f.series(), 1.0 - 1e-3), 1u << 14);
  const std::size_t d = std::max<std::size_t>(df * std::max<std::size_t>(phi.degree(), 1), 16);
  return fft::next_pow2(std::min<std::size_t>(4 * d + 4, 1u << 16));
}

}  // namespace

DiskFunction compose(const DiskFunction& f, const AnalyticFunction& phi, ComposeMode mode,
                     const CoefficientComposeOptions& opts) {
  const double s = sup_norm(phi);
  if (s > 1.0 + 1e-12) throw DomainError("compose: phi maps outside the closed disk");
  DiskFunction::EvaluatorOptions eo;
  eo.max_radius = 1.0;
  eo.resolution = composition_resolution(f, phi);
  DiskFunction sampled([f, phi](cplx z) { return f(eval(phi, z)); }, eo);
  if (mode == ComposeMode::SAMPLED) return sampled;
  const double rho = opts.radius;
  const double inner = integral_mean(phi, rho, kInf);
  if (inner >= 1.0) throw DomainError("compose: sampled composition needs sup |phi| < 1 on the sampling radius");
  const std::size_t M = fft::next_pow2(4 * (opts.terms + 1));
  CircleSamples cs{rho, sampled.samples(rho, M)};
  return reexpand_from_samples(cs, opts.terms, opts.tol);
}

double composition_norm_bound(const AnalyticFunction& phi, const SpaceParams& sp) {
  const double s = sup_norm(phi);
  const double a0 = std::abs(phi.coefficient(0));
  if (!(s - a0 > 1e-14 * std::max(s, 1.0))) throw DegenerateError("composition_norm_bound: constant self-map");
  if (s > 1.0 + 1e-12) throw DomainError("composition_norm_bound: phi is not a self-map of the disk");
  const double a = a0 / s;
  return std::pow((1.0 + a) / (1.0 - a), sp.alpha) * std::pow((3.0 + a) / (1.0 - a), sp.inv_p());
}

AnalyticFunction multiply(const AnalyticFunction& g, const AnalyticFunction& f) { return cauchy_product(g, f); }

AnalyticFunction integral_op(const AnalyticFunction& g, const AnalyticFunction& f) {
  return volterra_primitive(cauchy_product(f, differentiate(g)));
}

OperatorNormEstimate op_norm_lower(const Operator& T, const SpaceParams& sp, const TestFamily& family,
                                   std::uint64_t seed, const GridSpec& grid) {
  OperatorNormEstimate est;
  auto consider = [&](const AnalyticFunction& f, const std::string& name) {
    const double nf = mixed_norm(f, sp, grid);
    if (!(nf > 0.0)) return;
    const double ratio = mixed_norm(T(f), sp, grid) / nf;
    ++est.family_size;
    if (ratio > est.lower_bound) {
      est.lower_bound = ratio;
      est.witness = name;
    }
  };
  for (double r : family.point_radii) consider(growth_test_fn(r, sp, family.series_degree), "f_z0 z0=" + std::to_string(r));
  for (std::size_t n = 0; n <= family.max_monomial; ++n) consider(monomial(n), "z^" + std::to_string(n));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (std::size_t i = 0; i < family.random_count; ++i) {
    std::vector<cplx> c(family.random_degree + 1);
    for (auto& v : c) v = cplx(u(rng), u(rng));
    consider(polynomial(std::move(c)), "random#" + std::to_string(i));
  }
  return est;
}

TgReport tg_classifier(const AnalyticFunction& g, const SpaceParams&, const GridSpec& grid, const DecayThresholds& th) {
  TgReport rep;
  rep.bloch = little_bloch_verdict(g, grid, th);
  switch (rep.bloch.verdict) {
    case BlochClass::LITTLE_BLOCH: rep.verdict = TgClass::COMPACT; break;
    case BlochClass::BLOCH_ONLY: rep.verdict = TgClass::BOUNDED_NOT_COMPACT; break;
    case BlochClass::NOT_BLOCH: rep.verdict = TgClass::UNBOUNDED; break;
    default: rep.verdict = TgClass::INCONCLUSIVE; break;
  }
  return rep;
}

DiskFunction conformal_shift(const AnalyticFunction& g, cplx zeta) {
  const double a = std::abs(zeta);
  if (a >= 1.0) throw DomainError("conformal_shift: |zeta| >= 1");
  const cplx g_zeta = eval(g, zeta);
  DiskFunction::EvaluatorOptions eo;
  if (g.is_polynomial()) {
    eo.max_radius = 1.0;
  } else {
    const double R = 0.999;
    eo.max_radius = std::max(0.0, (R - a) / (1.0 - a * R));
  }
  eo.resolution = 4096;
  eo.adaptive_angles = a > 0.9;
  return DiskFunction(
      [g, zeta, g_zeta](cplx z) { return eval(g, (z + zeta) / (1.0 + std::conj(zeta) * z)) - g_zeta; }, eo);
}

DerivativeCheck conformal_shift_derivative(const AnalyticFunction& g, cplx zeta) {
  const auto shifted = conformal_shift(g, zeta);
  const double a = std::abs(zeta);
  const double h = std::min(0.25, 0.25 * (1.0 - a));
  constexpr int kNodes = 16;
  cplx acc = 0.0;
  for (int j = 0; j < kNodes; ++j) {
    const cplx w = std::polar(1.0, 2.0 * std::numbers::pi * j / kNodes);
    acc += std::exp(shifted(h * w)) / w;
  }
  DerivativeCheck chk;
  chk.numeric = acc / (static_cast<double>(kNodes) * h);
  chk.exact = (1.0 - a * a) * eval(differentiate(g), zeta);
  const double scale = std::max(1.0, std::abs(chk.exact));
  chk.error = std::abs(chk.numeric - chk.exact) / scale;
  return chk;
}

AnalyticFunction exp_series(const AnalyticFunction& g, double s, const ExpOptions& opts) {
  const std::size_t N = opts.terms;
  const double rho = opts.radius > 0.0 ? opts.radius : 1.0 - 10.0 / static_cast<double>(N);
  const std::size_t M = fft::next_pow2(4 * N);
  auto cs = circle_samples(g, rho, M);
  for (auto& v : cs.values) v = std::exp(s * v);
  return reexpand_from_samples(cs, N, opts.tol);
}

std::vector<MembershipEntry> exp_membership(const AnalyticFunction& g, double s, const std::vector<double>& alphas,
                                            const std::vector<double>& p_grid, const ExpOptions& opts,
                                            const DecayThresholds& th) {
  const auto e = exp_series(g, s, opts);
  std::vector<MembershipEntry> table;
  for (double p : p_grid) {
    const auto prof = radial_profile(e, p);
    for (double alpha : alphas) {
      std::vector<double> x;
      std::vector<double> y;
      for (std::size_t j = 0; j < prof.grid.size(); ++j) {
        x.push_back(1.0 - prof.grid[j]);
        y.push_back(std::pow(x.back(), alpha) * prof.values[j]);
      }
      MembershipEntry m;
      m.p = p;
      m.alpha = alpha;
      m.verdict = growth_trend(x, y, th);
      m.slope = loglog_slope(x, y, 2.0);
      m.sup = y.empty() ? 0.0 : *std::max_element(y.begin(), y.end());
      table.push_back(m);
    }
  }
  return table;
}

HardyLittlewoodRatios hardy_littlewood_ratios(const AnalyticFunction& f, double p, double alpha,
                                              const GridSpec& grid) {
  HardyLittlewoodRatios hl;
  hl.norm_f = weighted_sup(f, p, [alpha](double r) { return std::pow(1.0 - r, alpha); }, grid).value;
  hl.norm_fprime =
      weighted_sup(differentiate(f), p, [alpha](double r) { return std::pow(1.0 - r, alpha + 1.0); }, grid).value;
  hl.forward = hl.norm_fprime / hl.norm_f;
  hl.backward = hl.norm_f / (std::abs(f.coefficient(0)) + hl.norm_fprime);
  return hl;
}

std::string to_string(TgClass c) {
  switch (c) {
    case TgClass::COMPACT: return "COMPACT";
    case TgClass::BOUNDED_NOT_COMPACT: return "BOUNDED_NOT_COMPACT";
    case TgClass::UNBOUNDED: return "UNBOUNDED";
    default: return "INCONCLUSIVE";
  }
}

}  // namespace mixnorm
