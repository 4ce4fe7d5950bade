#include "mixnorm/semigroup.hpp"

#include "mixnorm/fft.hpp"
#include "mixnorm/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mixnorm {

// ------------------------------------------------------------------ Herglotz

Herglotz Herglotz::constant(double c) {
  if (!(c > 0.0)) throw DomainError("Herglotz: CONST needs c > 0");
  return {HerglotzKind::CONST, c, std::nullopt};
}
Herglotz Herglotz::cayley() { return {HerglotzKind::CAYLEY, 1.0, std::nullopt}; }
Herglotz Herglotz::one_minus_z() { return {HerglotzKind::ONE_MINUS_Z, 1.0, std::nullopt}; }
Herglotz Herglotz::from_series(AnalyticFunction p) { return {HerglotzKind::USER, 1.0, std::move(p)}; }

cplx Herglotz::operator()(cplx z) const {
  switch (kind) {
    case HerglotzKind::CONST: return c;
    case HerglotzKind::CAYLEY: return (1.0 + z) / (1.0 - z);
    case HerglotzKind::ONE_MINUS_Z: return 1.0 - z;
    case HerglotzKind::USER: return eval(*user, z);
  }
  return 0.0;
}

AnalyticFunction Herglotz::series(std::size_t degree) const {
  switch (kind) {
    case HerglotzKind::CONST: return mixnorm::constant(c);
    case HerglotzKind::ONE_MINUS_Z: return polynomial({1.0, -1.0});
    case HerglotzKind::CAYLEY: {
      std::vector<cplx> v(degree + 1, 2.0);
      v[0] = 1.0;
      return AnalyticFunction(std::move(v), TailBound::from_envelope({degree, 2.0, 0.0, 1.0}));
    }
    case HerglotzKind::USER: return *user;
  }
  return {};
}

AnalyticFunction Herglotz::reciprocal_series(std::size_t degree) const {
  switch (kind) {
    case HerglotzKind::CONST: return mixnorm::constant(1.0 / c);
    case HerglotzKind::ONE_MINUS_Z: return binomial_series(1.0, 1.0, degree);
    case HerglotzKind::CAYLEY: {
      std::vector<cplx> v(degree + 1);
      v[0] = 1.0;
      for (std::size_t k = 1; k <= degree; ++k) v[k] = (k % 2 == 1) ? -2.0 : 2.0;
      return AnalyticFunction(std::move(v), TailBound::from_envelope({degree, 2.0, 0.0, 1.0}));
    }
    case HerglotzKind::USER: return reciprocal(*user, degree);
  }
  return {};
}

// ------------------------------------------------------------- GeneratorSpec

GeneratorSpec::GeneratorSpec(DwPoint dw, Herglotz P, std::optional<ClosedFlow> closed, std::string name)
    : dw_(dw), P_(std::move(P)), closed_(std::move(closed)), name_(std::move(name)) {
  for (double r : {0.0, 0.5, 0.9, 0.99, 0.999}) {
    for (int j = 0; j < 256; ++j) {
      const cplx z = std::polar(r, 2.0 * std::numbers::pi * j / 256.0);
      if (P_(z).real() < -1e-12) throw DomainError("GeneratorSpec: Re P < 0 somewhere in the disk");
    }
  }
}

cplx generator_eval(const GeneratorSpec& spec, cplx z) {
  if (std::abs(z) >= 1.0) throw DomainError("generator_eval: |z| >= 1");
  const cplx P = spec.herglotz()(z);
  if (spec.dw_point() == DwPoint::INTERIOR) return -z * P;
  return (1.0 - z) * (1.0 - z) * P;
}

cplx generator_derivative_at_fixed_point(const GeneratorSpec& spec) {
  if (spec.dw_point() != DwPoint::INTERIOR) throw DomainError("generator derivative: boundary point");
  return -spec.herglotz()(0.0);
}

AnalyticFunction generator_series(const GeneratorSpec& spec, std::size_t degree) {
  auto P = truncate(spec.herglotz().series(degree), degree);
  AnalyticFunction G;
  if (spec.dw_point() == DwPoint::INTERIOR) {
    G = shift(scale(P, -1.0), 1);
  } else {
    G = cauchy_product(polynomial({1.0, -2.0, 1.0}), P);
  }
  return truncate(G, degree);
}

// ---------------------------------------------------------------------- flow

namespace {

constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                 e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                 e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

}  // namespace

FlowResult flow(const GeneratorSpec& spec, double t, cplx z0, const FlowOptions& opts) {
  if (std::abs(z0) >= 1.0) throw DomainError("flow: |z0| >= 1");
  if (t < 0.0 || t > 50.0) throw DomainError("flow: t outside [0, 50]");
  FlowResult res{t, z0, z0, 0, 0.0};
  if (t == 0.0) return res;
  auto G = [&](cplx w) {
    if (std::abs(w) >= 1.0) throw InvariantViolation("flow: trajectory left the disk");
    return generator_eval(spec, w);
  };
  double s = 0.0;
  double h = std::min(t, 1e-2);
  cplx w = z0;
  cplx k1 = G(w);
  std::size_t attempts = 0;
  while (s < t) {
    if (++attempts > opts.max_steps) {
      res.t = s;
      res.z_t = w;
      throw BoundaryStall("flow: step budget exhausted", res);
    }
    if (h < 1e-15 * std::max(1.0, t)) {
      res.t = s;
      res.z_t = w;
      throw BoundaryStall("flow: step size underflow near the boundary", res);
    }
    const bool last = s + h >= t;
    if (last) h = t - s;
    cplx k2, k3, k4, k5, k6, k7, w5;
    try {
      k2 = G(w + h * (a21 * k1));
      k3 = G(w + h * (a31 * k1 + a32 * k2));
      k4 = G(w + h * (a41 * k1 + a42 * k2 + a43 * k3));
      k5 = G(w + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
      k6 = G(w + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
      w5 = w + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      k7 = G(w5);
    } catch (const InvariantViolation&) {
      h *= 0.25;  // a stage point left the disk: the step is too long
      continue;
    }
    const double err = std::abs(h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7));
    if (err <= opts.tol) {
      s = last ? t : s + h;
      w = w5;
      k1 = k7;
      ++res.step_count;
      res.error_estimate += err;
      if (std::abs(w) >= 1.0 + 1e-12) throw InvariantViolation("flow: accepted step outside the disk");
    }
    const double fac = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(opts.tol / err, 0.2), 0.2, 5.0);
    if (!last || err > opts.tol) h *= fac;
  }
  res.z_t = w;
  return res;
}

cplx flow_map(const GeneratorSpec& spec, double t, cplx z) {
  if (spec.closed_flow()) return spec.closed_flow()->flow(t, z);
  return flow(spec, t, z).z_t;
}

RecoveryReport generator_recovery(const GeneratorSpec& spec, cplx z, const std::vector<double>& t_grid) {
  RecoveryReport rep;
  rep.target = generator_eval(spec, z);
  std::vector<double> lx, ly;
  for (double t : t_grid) {
    const cplx q = (flow(spec, t, z).z_t - z) / t;
    rep.t.push_back(t);
    rep.quotients.push_back(q);
    const double e = std::abs(q - rep.target);
    rep.errors.push_back(e);
    if (e > 0.0) {
      lx.push_back(std::log(t));
      ly.push_back(std::log(e));
    }
  }
  if (lx.size() < 2) {
    rep.order = std::nan("");
    return rep;
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(lx.size());
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  rep.order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return rep;
}

AnalyticFunction g_symbol(const GeneratorSpec& spec, std::size_t degree) {
  const auto& P = spec.herglotz();
  if (P(0.0) == cplx{}) throw ExpansionError("g_symbol: P(0) = 0");
  if (spec.dw_point() == DwPoint::INTERIOR) return scale(volterra_primitive(P.reciprocal_series(degree)), -1.0);
  AnalyticFunction inv;
  switch (P.kind) {
    case HerglotzKind::CONST: inv = scale(binomial_series(1.0, 2.0, degree), 1.0 / P.c); break;
    case HerglotzKind::ONE_MINUS_Z: inv = binomial_series(1.0, 3.0, degree); break;
    case HerglotzKind::CAYLEY: {
      // 1/((1 - z)(1 + z)) = 1/(1 - z^2)
      std::vector<cplx> v(degree + 1);
      for (std::size_t k = 0; k <= degree; k += 2) v[k] = 1.0;
      inv = AnalyticFunction(std::move(v), TailBound::from_envelope({degree, 1.0, 0.0, 1.0}));
      break;
    }
    case HerglotzKind::USER:
      inv = reciprocal(cauchy_product(polynomial({1.0, -2.0, 1.0}), *P.user), degree);
      break;
  }
  return volterra_primitive(inv);
}

double koenigs_residual(const GeneratorSpec& spec, double t, cplx z) {
  if (!spec.closed_flow() || !spec.closed_flow()->koenigs) throw DomainError("koenigs_residual: no closed Koenigs map");
  const auto& h = spec.closed_flow()->koenigs;
  const cplx w = flow(spec, t, z).z_t;
  if (spec.dw_point() == DwPoint::INTERIOR)
    return std::abs(h(w) - std::exp(generator_derivative_at_fixed_point(spec) * t) * h(z));
  return std::abs(h(w) - h(z) - t);
}

std::vector<double> default_t_grid() {
  std::vector<double> t;
  for (int k = 4; k <= 16; ++k) t.push_back(std::pow(10.0, -k / 4.0));
  return t;
}

ContinuityReport continuity_probe(const GeneratorSpec& spec, const AnalyticFunction& f, const SpaceParams& sp,
                                  const std::vector<double>& t_grid, const GridSpec& grid,
                                  const DecayThresholds& th) {
  ContinuityReport rep;
  rep.norm_f = mixed_norm(f, sp, grid);
  const bool dilation = spec.dw_point() == DwPoint::INTERIOR && spec.herglotz().kind == HerglotzKind::CONST;
  double max_radius = 1.0;
  if (!f.is_polynomial() && !dilation) {
    const auto prof = radial_profile(f, sp.p, grid);
    max_radius = prof.grid.empty() ? 0.0 : prof.grid.back();
  }
  const std::size_t res =
      fft::next_pow2(std::clamp<std::size_t>(4 * effective_degree(f, std::min(max_radius, 1.0 - 1e-3)) + 4, 256, 1u << 16));
  for (double t : t_grid) {
    double v = 0.0;
    if (dilation) {
      const double c = spec.herglotz().c;
      v = mixed_norm(subtract(f, dilate(f, std::exp(-c * t))), sp, grid);
    } else {
      DiskFunction::EvaluatorOptions eo;
      eo.max_radius = max_radius;
      eo.resolution = res;
      DiskFunction diff([&spec, f, t](cplx z) { return eval(f, flow_map(spec, t, z)) - eval(f, z); }, eo);
      v = mixed_norm(diff, sp, grid);
    }
    rep.t.push_back(t);
    rep.values.push_back(v);
  }
  rep.verdict = classify_decay(rep.t, rep.values, th);
  return rep;
}

AnalyticFunction generator_action(const GeneratorSpec& spec, const AnalyticFunction& f) {
  const auto fp = differentiate(f);
  return truncate(cauchy_product(generator_series(spec, f.degree()), fp), f.degree());
}

MaximalReport maximal_subspace_classify(const GeneratorSpec& spec, const SpaceParams& sp, std::size_t degree,
                                        const GridSpec& grid, const DecayThresholds& th) {
  if (sp.q != kInf) throw DomainError("maximal_subspace_classify: needs q = inf");
  MaximalReport rep;
  if (spec.dw_point() == DwPoint::BOUNDARY) {
    rep.verdict = MaximalClass::NON_SEPARABLE;
    return rep;
  }
  rep.gamma_profile = little_bloch_verdict(g_symbol(spec, degree), grid, th);
  switch (rep.gamma_profile->verdict) {
    case BlochClass::LITTLE_BLOCH: rep.verdict = MaximalClass::LITTLE_OH_SPACE; break;
    case BlochClass::BLOCH_ONLY: rep.verdict = MaximalClass::NON_SEPARABLE; break;
    default: rep.verdict = MaximalClass::INCONCLUSIVE; break;
  }
  return rep;
}

ArcReport arc_decay(const DiskFunction& h, double theta, double p, double alpha, std::vector<double> r_grid,
                    const DecayThresholds& th) {
  if (r_grid.empty()) {
    const auto prof = radial_profile(h, 2.0);
    r_grid = prof.grid;
  }
  const auto& rule = quad::gauss_legendre(64);
  ArcReport rep;
  for (double r : r_grid) {
    const double w = 1.0 - r;
    if (!(w > 0.0)) continue;
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double t = theta + w * rule.nodes[i];
      acc += rule.weights[i] * std::pow(std::abs(h(std::polar(r, t))), p);
    }
    acc *= w;
    rep.r.push_back(r);
    rep.values.push_back(std::pow(w, alpha) * std::pow(acc, 1.0 / p));
  }
  std::vector<double> x;
  for (double r : rep.r) x.push_back(1.0 - r);
  rep.verdict = classify_decay(x, rep.values, th);
  return rep;
}

double stolz_psi(const Herglotz& P, double theta, std::size_t points) {
  const std::size_t rows = std::max<std::size_t>(2, static_cast<std::size_t>(std::sqrt(double(points) * 1.6)));
  const std::size_t cols = std::max<std::size_t>(2, points / rows);
  double inf = kInf;
  for (std::size_t i = 0; i < rows; ++i) {
    const double x = 0.5 * std::pow(1e-3, double(i) / double(rows - 1));  // 1 - r from 0.5 down to 5e-4
    const double r = 1.0 - x;
    for (std::size_t j = 0; j < cols; ++j) {
      const double t = theta + 1.5 * x * (2.0 * double(j) / double(cols - 1) - 1.0);
      inf = std::min(inf, std::abs(P(std::polar(r, t))));
    }
  }
  return inf;
}

// ------------------------------------------------------------------- catalog

namespace catalog {

GeneratorSpec dilation(double c) {
  ClosedFlow cf{[c](double t, cplx z) { return std::exp(-c * t) * z; }, [](cplx z) { return z; }};
  return {DwPoint::INTERIOR, Herglotz::constant(c), cf, "dilation"};
}

GeneratorSpec interior_one_minus_z() {
  ClosedFlow cf{[](double t, cplx z) {
                  const double e = std::exp(-t);
                  return e * z / (1.0 - z + e * z);
                },
                [](cplx z) { return z / (1.0 - z); }};
  return {DwPoint::INTERIOR, Herglotz::one_minus_z(), cf, "interior-one-minus-z"};
}

GeneratorSpec interior_cayley() {
  auto h = [](cplx z) { return z / ((1.0 + z) * (1.0 + z)); };
  ClosedFlow cf{[h](double t, cplx z) {
                  const cplx c = std::exp(-t) * h(z);
                  if (c == cplx{}) return cplx{};
                  return 2.0 * c / (1.0 - 2.0 * c + std::sqrt(1.0 - 4.0 * c));
                },
                h};
  return {DwPoint::INTERIOR, Herglotz::cayley(), cf, "interior-cayley"};
}

GeneratorSpec boundary_const(double c) {
  ClosedFlow cf{[c](double t, cplx z) { return 1.0 - (1.0 - z) / (1.0 + c * t * (1.0 - z)); },
                [c](cplx z) { return z / (c * (1.0 - z)); }};
  return {DwPoint::BOUNDARY, Herglotz::constant(c), cf, "boundary-const"};
}

GeneratorSpec boundary_cayley() {
  ClosedFlow cf{[](double t, cplx z) { return std::tanh(std::atanh(z) + t); }, [](cplx z) { return std::atanh(z); }};
  return {DwPoint::BOUNDARY, Herglotz::cayley(), cf, "boundary-cayley"};
}

GeneratorSpec boundary_one_minus_z() {
  ClosedFlow cf{[](double t, cplx z) {
                  const cplx u = 1.0 - z;
                  return 1.0 - u / std::sqrt(1.0 + 2.0 * t * u * u);
                },
                [](cplx z) { return 0.5 * (1.0 / ((1.0 - z) * (1.0 - z)) - 1.0); }};
  return {DwPoint::BOUNDARY, Herglotz::one_minus_z(), cf, "boundary-one-minus-z"};
}

std::vector<GeneratorSpec> all() {
  return {dilation(), interior_one_minus_z(), interior_cayley(), boundary_const(), boundary_cayley(),
          boundary_one_minus_z()};
}

GeneratorSpec by_name(const std::string& name) {
  for (auto& s : all())
    if (s.name() == name) return s;
  throw NotFoundError("unknown semigroup: " + name);
}

}  // namespace catalog

std::string to_string(MaximalClass c) {
  switch (c) {
    case MaximalClass::LITTLE_OH_SPACE: return "LITTLE_OH_SPACE";
    case MaximalClass::NON_SEPARABLE: return "NON_SEPARABLE";
    default: return "INCONCLUSIVE";
  }
}

}  // namespace mixnorm
