#pragma once

#include "mixnorm/norms.hpp"
#include "mixnorm/series.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace mixnorm {

enum class ComposeMode { SAMPLED, COEFFICIENT };

struct CoefficientComposeOptions {
  double radius = 0.9;   // sampling radius rho
  std::size_t terms = 256;
  double tol = 1e-6;
};

/// sup_{|z|<=1} |phi|: M_inf(1, phi) for polynomials, polynomial part plus
/// tail for truncated series.
double sup_norm(const AnalyticFunction& phi);

/// f o phi. SAMPLED returns a pointwise evaluator (the mode every norm uses);
/// COEFFICIENT re-expands the sampled composition on radius opts.radius.
DiskFunction compose(const DiskFunction& f, const AnalyticFunction& phi, ComposeMode mode = ComposeMode::SAMPLED,
                     const CoefficientComposeOptions& opts = {});

/// Explicit upper bound for ||C_phi|| on H(p, q, alpha) with a = |phi(0)| / ||phi||_inf:
/// ((1 + a)/(1 - a))^alpha ((3 + a)/(1 - a))^{1/p}.
/// Throws DegenerateError for constant phi.
double composition_norm_bound(const AnalyticFunction& phi, const SpaceParams& sp);

AnalyticFunction multiply(const AnalyticFunction& g, const AnalyticFunction& f);

/// T_g f = V(f g').
AnalyticFunction integral_op(const AnalyticFunction& g, const AnalyticFunction& f);

using Operator = std::function<DiskFunction(const AnalyticFunction&)>;

struct TestFamily {
  std::vector<double> point_radii{0.0, 0.5, 0.9, 0.99};  // growth test functions f_{z0}, z0 real
  std::size_t max_monomial = 64;
  std::size_t random_count = 16;
  std::size_t random_degree = 8;
  std::size_t series_degree = 4096;
};

struct OperatorNormEstimate {
  double lower_bound = 0.0;
  std::string witness;
  std::size_t family_size = 0;
  std::optional<double> upper_bound;
};

/// max over the family of ||T f|| / ||f||; deterministic for a fixed seed.
OperatorNormEstimate op_norm_lower(const Operator& T, const SpaceParams& sp, const TestFamily& family,
                                   std::uint64_t seed, const GridSpec& grid = {});

enum class TgClass { COMPACT, BOUNDED_NOT_COMPACT, UNBOUNDED, INCONCLUSIVE };

struct TgReport {
  TgClass verdict = TgClass::INCONCLUSIVE;
  BlochReport bloch;
};

TgReport tg_classifier(const AnalyticFunction& g, const SpaceParams& sp, const GridSpec& grid = {},
                       const DecayThresholds& th = {});

/// z -> g(phi_zeta(z)) - g(zeta) with phi_zeta(z) = (z + zeta)/(1 + conj(zeta) z).
DiskFunction conformal_shift(const AnalyticFunction& g, cplx zeta);

struct DerivativeCheck {
  cplx numeric;
  cplx exact;
  double error = 0.0;  // relative when |exact| > 1, absolute otherwise
};

/// Compares d/dz e^{g_zeta}(0), by a 16-point Cauchy contour stencil, with
/// (1 - |zeta|^2) g'(zeta).
DerivativeCheck conformal_shift_derivative(const AnalyticFunction& g, cplx zeta);

struct MembershipEntry {
  double p = 0.0;
  double alpha = 0.0;
  Growth verdict = Growth::INCONCLUSIVE;
  double slope = 0.0;
  double sup = 0.0;
};

struct ExpOptions {
  std::size_t terms = 32768;
  double radius = 0.0;  // 0: 1 - 10/terms
  double tol = 1e-6;
};

/// e^{s g} by sampled exponentiation on a circle and re-expansion.
AnalyticFunction exp_series(const AnalyticFunction& g, double s, const ExpOptions& opts = {});

/// Finiteness of ||e^{s g}||_{p, inf, alpha} for each (p, alpha) from the
/// trend of (1 - r)^alpha M_p(r, e^{s g}).
std::vector<MembershipEntry> exp_membership(const AnalyticFunction& g, double s, const std::vector<double>& alphas,
                                            const std::vector<double>& p_grid, const ExpOptions& opts = {},
                                            const DecayThresholds& th = {});

struct HardyLittlewoodRatios {
  double norm_f = 0.0;        // sup (1 - r)^alpha M_p(r, f)
  double norm_fprime = 0.0;   // sup (1 - r)^{alpha + 1} M_p(r, f')
  double forward = 0.0;       // norm_fprime / norm_f
  double backward = 0.0;      // norm_f / (|f(0)| + norm_fprime)
};

HardyLittlewoodRatios hardy_littlewood_ratios(const AnalyticFunction& f, double p, double alpha,
                                              const GridSpec& grid = {});

std::string to_string(TgClass c);

}  // namespace mixnorm
