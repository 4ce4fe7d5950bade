#pragma once

#include "mixnorm/errors.hpp"
#include "mixnorm/norms.hpp"
#include "mixnorm/series.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace mixnorm {

/// Denjoy-Wolff point: b = 0 or b = 1.
enum class DwPoint { INTERIOR, BOUNDARY };

enum class HerglotzKind { CONST, CAYLEY, ONE_MINUS_Z, USER };

/// Herglotz factor P (Re P >= 0) of the generator.
struct Herglotz {
  HerglotzKind kind = HerglotzKind::CONST;
  double c = 1.0;                       // CONST value
  std::optional<AnalyticFunction> user;

  static Herglotz constant(double c);
  static Herglotz cayley();             // (1 + z)/(1 - z)
  static Herglotz one_minus_z();        // 1 - z
  static Herglotz from_series(AnalyticFunction p);

  cplx operator()(cplx z) const;
  AnalyticFunction series(std::size_t degree) const;
  /// 1/P truncated at degree.
  AnalyticFunction reciprocal_series(std::size_t degree) const;
};

struct ClosedFlow {
  std::function<cplx(double, cplx)> flow;  // (t, z) -> phi_t(z)
  std::function<cplx(cplx)> koenigs;       // h
};

class GeneratorSpec {
public:
  /// Rejects P with Re P < -1e-12 on a sampled grid.
  GeneratorSpec(DwPoint dw, Herglotz P, std::optional<ClosedFlow> closed = std::nullopt, std::string name = "user");

  DwPoint dw_point() const { return dw_; }
  const Herglotz& herglotz() const { return P_; }
  const std::optional<ClosedFlow>& closed_flow() const { return closed_; }
  const std::string& name() const { return name_; }

private:
  DwPoint dw_;
  Herglotz P_;
  std::optional<ClosedFlow> closed_;
  std::string name_;
};

/// G(z) = -z P(z) (interior) or (1 - z)^2 P(z) (boundary).
cplx generator_eval(const GeneratorSpec& spec, cplx z);
/// G'(0) for an interior point; G'(0) = -P(0).
cplx generator_derivative_at_fixed_point(const GeneratorSpec& spec);
AnalyticFunction generator_series(const GeneratorSpec& spec, std::size_t degree);

struct FlowResult {
  double t = 0.0;
  cplx z0;
  cplx z_t;
  std::size_t step_count = 0;
  double error_estimate = 0.0;
};

/// Step size underflow near the unit circle; carries the partial trajectory.
class BoundaryStall : public NonConvergenceError {
public:
  BoundaryStall(const std::string& what, FlowResult partial)
      : NonConvergenceError(what), partial_(partial) {}
  const FlowResult& partial() const { return partial_; }

private:
  FlowResult partial_;
};

struct FlowOptions {
  double tol = 1e-12;
  std::size_t max_steps = 1'000'000;
};

/// Integrates w' = G(w), w(0) = z0 by adaptive Dormand-Prince 5(4).
FlowResult flow(const GeneratorSpec& spec, double t, cplx z0, const FlowOptions& opts = {});

/// phi_t(z) from the closed form when the spec has one, else from flow().
cplx flow_map(const GeneratorSpec& spec, double t, cplx z);

struct RecoveryReport {
  std::vector<double> t;
  std::vector<cplx> quotients;  // (phi_t(z) - z)/t
  std::vector<double> errors;   // |quotient - G(z)|
  cplx target;
  double order = 0.0;           // NaN when all errors vanish
};

RecoveryReport generator_recovery(const GeneratorSpec& spec, cplx z,
                                  const std::vector<double>& t_grid = {0.1, 0.05, 0.025, 0.0125, 0.00625});

/// gamma = -int_0^z 1/P (interior) or int_0^z 1/((1 - w)^2 P) (boundary).
AnalyticFunction g_symbol(const GeneratorSpec& spec, std::size_t degree);

double koenigs_residual(const GeneratorSpec& spec, double t, cplx z);

struct ContinuityReport {
  std::vector<double> t;
  std::vector<double> values;  // ||f o phi_t - f||
  double norm_f = 0.0;
  Decay verdict = Decay::INCONCLUSIVE;
};

std::vector<double> default_t_grid();  // 10^{-k/4}, k = 4..16

ContinuityReport continuity_probe(const GeneratorSpec& spec, const AnalyticFunction& f, const SpaceParams& sp,
                                  const std::vector<double>& t_grid = default_t_grid(), const GridSpec& grid = {},
                                  const DecayThresholds& th = {});

/// Gamma f = G f', G expanded to the degree of f.
AnalyticFunction generator_action(const GeneratorSpec& spec, const AnalyticFunction& f);

enum class MaximalClass { LITTLE_OH_SPACE, NON_SEPARABLE, INCONCLUSIVE };

struct MaximalReport {
  MaximalClass verdict = MaximalClass::INCONCLUSIVE;
  std::optional<BlochReport> gamma_profile;
};

MaximalReport maximal_subspace_classify(const GeneratorSpec& spec, const SpaceParams& sp,
                                        std::size_t degree = 1u << 16, const GridSpec& grid = {},
                                        const DecayThresholds& th = {});

struct ArcReport {
  std::vector<double> r;
  std::vector<double> values;  // (1-r)^alpha (int_{|t - theta| <= 1-r} |h|^p dt)^{1/p}
  Decay verdict = Decay::INCONCLUSIVE;
};

/// Empty r_grid: the radial grid, cut where the tail of h stops being negligible.
ArcReport arc_decay(const DiskFunction& h, double theta, double p, double alpha, std::vector<double> r_grid = {},
                    const DecayThresholds& th = {});

/// inf |P| over an aperture-2 Stolz angle at e^{i theta}, sampled on a
/// triangular grid of about `points` nodes.
double stolz_psi(const Herglotz& P, double theta, std::size_t points = 1000);

namespace catalog {
GeneratorSpec dilation(double c = 1.0);
GeneratorSpec interior_one_minus_z();
GeneratorSpec interior_cayley();
GeneratorSpec boundary_const(double c = 1.0);
GeneratorSpec boundary_cayley();
GeneratorSpec boundary_one_minus_z();
std::vector<GeneratorSpec> all();
/// Throws NotFoundError for unknown names.
GeneratorSpec by_name(const std::string& name);
}  // namespace catalog

std::string to_string(MaximalClass c);

}  // namespace mixnorm
