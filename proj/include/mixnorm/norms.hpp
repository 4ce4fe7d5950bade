#pragma once

#include "mixnorm/series.hpp"

#include <limits>
#include <string>
#include <vector>

namespace mixnorm {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Exponents of H(p, q, alpha); q = inf selects the weighted-sup norm, and
/// little_oh (only with q = inf) the closed subspace where the weight times
/// M_p tends to zero.
struct SpaceParams {
  double p = 2.0;
  double q = kInf;
  double alpha = 1.0;
  bool little_oh = false;

  SpaceParams() = default;
  SpaceParams(double p, double q, double alpha, bool little_oh = false);

  double inv_p() const { return p == kInf ? 0.0 : 1.0 / p; }
  double inv_q() const { return q == kInf ? 0.0 : 1.0 / q; }
  /// alpha + 1/p: the growth exponent of point evaluations.
  double growth_exponent() const { return alpha + inv_p(); }
};

/// Radii r_j = 1 - 2^{-j/kappa}, j = 0..J. For truncated series the grid
/// stops once the tail bound exceeds tail_rel_tol * M_p(r_j).
struct GridSpec {
  int kappa = 4;
  int J = 160;
  double tail_rel_tol = 1e-8;
};

std::vector<double> radial_grid(const GridSpec& spec);

struct RadialProfile {
  std::vector<double> grid;
  std::vector<double> values;  // M_p(r_j, f)
  double p = 2.0;
  bool monotone = true;        // nondecreasing within 1e-9 relative slack
  bool tail_limited = false;   // grid cut short by the truncation tail
};

/// M_p(r, f). Series with p = 2 use the coefficient identity (exactly the
/// sampled mean once M exceeds the degree); other p sample on doubling grids
/// until the relative change is below 1e-10.
double integral_mean(const DiskFunction& f, double r, double p);

/// M_p(r, f) from exactly M equispaced samples of the polynomial part.
double sampled_integral_mean(const AnalyticFunction& f, double r, double p, std::size_t M);

RadialProfile radial_profile(const DiskFunction& f, double p, const GridSpec& grid = {});

struct NormResult {
  double value = 0.0;      // certified lower bound for q = inf
  double upper = 0.0;      // upper estimate (q = inf) or value
  double rel_slack = 0.0;  // upper / value - 1
  double argmax_r = 0.0;
  bool tail_limited = false;
};

NormResult mixed_norm_detail(const DiskFunction& f, const SpaceParams& sp, const GridSpec& grid = {});
double mixed_norm(const DiskFunction& f, const SpaceParams& sp, const GridSpec& grid = {});

/// sup_r w(r) M_p(r, f) for a nonincreasing weight, with golden-section polish
/// and interval bisection until the pair bound w(r_j) M_p(r_{j+1}) is within
/// slack of the lower bound.
NormResult weighted_sup(const DiskFunction& f, double p, const std::function<double(double)>& weight,
                        const GridSpec& grid = {}, double slack = 1e-3);

enum class Decay { DECAYS, PERSISTS, INCONCLUSIVE };
enum class Growth { FINITE, INFINITE, INCONCLUSIVE };

struct DecayThresholds {
  double shrink = 2.0;          // per-decade factor required for DECAYS
  double persist_ratio = 0.5;   // inf/sup over the last decade for PERSISTS
  int decades = 3;
  double slope_infinite = -0.1;
  double slope_finite = -0.05;
  double unbounded_factor = 1e3;
};

/// Verdict on y(x) as x decreases to its smallest sampled value.
Decay classify_decay(const std::vector<double>& x, const std::vector<double>& y, const DecayThresholds& th = {});

/// Log-log slope of y against x over the last two decades: strongly negative
/// means y blows up as x -> 0.
Growth growth_trend(const std::vector<double>& x, const std::vector<double>& y, const DecayThresholds& th = {});
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y, double decades = 2.0);

struct DecayReport {
  std::vector<double> x;       // 1 - r_j
  std::vector<double> values;  // weighted means
  Decay verdict = Decay::INCONCLUSIVE;
};

DecayReport little_oh_profile(const DiskFunction& f, double p, double alpha, const GridSpec& grid = {},
                              const DecayThresholds& th = {});

double bloch_seminorm(const AnalyticFunction& g, const GridSpec& grid = {});

enum class BlochClass { LITTLE_BLOCH, BLOCH_ONLY, NOT_BLOCH, INCONCLUSIVE };

struct BlochReport {
  BlochClass verdict = BlochClass::INCONCLUSIVE;
  std::vector<double> grid;
  std::vector<double> values;  // (1 - r^2) M_inf(r, g')
  double reference = 0.0;
  double seminorm = 0.0;
};

BlochReport little_bloch_verdict(const AnalyticFunction& g, const GridSpec& grid = {},
                                 const DecayThresholds& th = {});

/// (1 - |z|)^{-(alpha + 1/p)}.
double point_eval_norm(cplx z, const SpaceParams& sp);

std::string to_string(Decay d);
std::string to_string(Growth g);
std::string to_string(BlochClass b);

}  // namespace mixnorm
