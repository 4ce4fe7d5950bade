#pragma once

#include "mixnorm/norms.hpp"
#include "mixnorm/semigroup.hpp"
#include "mixnorm/series.hpp"

#include <span>
#include <vector>

namespace mixnorm {

/// Coefficients 1 - |k|/N of the (N-1)-th Fejer kernel, stored at index k + N - 1.
std::vector<double> fejer(std::size_t N);

/// G_N(z) = z^{2N} F_{N-1}(z): nonnegative coefficients supported on [N+1, 3N-1].
AnalyticFunction gn_poly(std::size_t N);

struct BlochWitness {
  double delta = 0.0;
  std::vector<double> r;
  std::vector<double> t;
  std::vector<double> values;  // (1 - r_n)|g'(r_n e^{i t_n})|
};

/// Radii 1 - 2^{-n}, 2^12 angles per radius, largest delta <= min(delta_cap, pi/8)
/// for which (1 - r_n)|g'(r_n e^{i(t_n + t)})| >= delta on |t| <= delta (1 - r_n).
/// Throws NotFoundError for little-Bloch g or fewer than four witnesses.
BlochWitness bloch_witness(const AnalyticFunction& g, double delta_cap, const GridSpec& grid = {});

/// Blocks N_n, radii r_n, angles t_n and the exponent nu of the lacunary sum.
struct LacunaryParams {
  int K = 10;
  int L = 5;
  double nu = 0.5;
  std::vector<double> r_seq;
  std::vector<double> t_seq;
  std::vector<std::size_t> N_seq;

  /// N_n = K^n, r_n = 1 - 1/N_n, t_n = 0, nu = alpha + 1/p - 1.
  static LacunaryParams standard(int K, int L, const SpaceParams& sp);
  /// Throws InvariantViolation unless N_n(1 - r_n) in [1, 2], N_{n+1}/N_n >= 3 and the
  /// blocks [N_n + 1, 3N_n - 1] are disjoint.
  void validate() const;
};

/// sum_n a_n N_n^nu G_{N_n}(e^{-i t_n} z); blocks are frequency-disjoint, so the
/// assembly is exact.
AnalyticFunction lacunary_embed(std::span<const cplx> a, const LacunaryParams& params);

/// delta_n = K^{-n}.
double xnu_delta(int n, int K);
/// Degree at which the expansion of f_L is negligible on the closed disk:
/// k^{-beta-1}(1 + delta_L)^{-k} has fallen below e^{-45}.
std::size_t xnu_degree(int L, int K, double beta);

/// f_n(z) = delta_n^nu (1 + delta_n - z)^beta as a truncated series.
AnalyticFunction xnu_family(int n, double nu, double beta, int K, std::size_t degree = 0);
cplx xnu_value(int n, double nu, double beta, int K, cplx z);
cplx xnu_derivative(int n, double nu, double beta, int K, cplx z);

/// sum_{n <= len(a)} a_n f_n.
AnalyticFunction xnu_embed(std::span<const cplx> a, double nu, double beta, int K, std::size_t degree = 0);
/// Closed-form evaluators of the same sum and of its derivative.
DiskFunction xnu_embed_evaluator(std::span<const cplx> a, double nu, double beta, int K);
DiskFunction::Evaluator xnu_embed_derivative(std::span<const cplx> a, double nu, double beta, int K);
/// z -> sum_{n <= L} |f_n(z)|.
DiskFunction xnu_majorant(int L, double nu, double beta, int K);

/// (1 - e^{-i theta} z)^{-(alpha + 1/p)}.
AnalyticFunction obstruction_fn(double theta, const SpaceParams& sp, std::size_t degree);

/// f_{z0}(w) = (1 - |z0|^2)^{alpha + 1/p} / (1 - conj(z0) w)^{2(alpha + 1/p)}.
AnalyticFunction growth_test_fn(cplx z0, const SpaceParams& sp, std::size_t degree);

/// psi = [(1 - z) P(z)]^{1 - theta}, principal branch; BranchError off the slit plane.
cplx approx_psi(const Herglotz& P, double theta, cplx z);

/// h_n = f(0) + V(n f'/(n + psi)), the Volterra integral taken along [0, z]
/// by 256-node graded Gauss-Legendre quadrature.
DiskFunction approx_sequence_hn(cplx f0, const DiskFunction::Evaluator& fprime, const GeneratorSpec& spec,
                                double theta, double n);
DiskFunction approx_sequence_hn(const AnalyticFunction& f, const GeneratorSpec& spec, double theta, double n);

/// h_n - f = -V(psi f'/(n + psi)), evaluated without cancellation.
DiskFunction approx_error_hn(const DiskFunction::Evaluator& fprime, const GeneratorSpec& spec, double theta,
                             double n);

/// (1 - z)^2 P h_n', the quantity whose norm decides membership of h_n in E.
DiskFunction approx_membership_hn(const DiskFunction::Evaluator& fprime, const GeneratorSpec& spec, double theta,
                                  double n);

/// Default theta for the approximation scheme: min(alpha, 1)/2.
double default_theta(const SpaceParams& sp);

}  // namespace mixnorm
