#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace mixnorm {

using cplx = std::complex<double>;

/// Majorant for the omitted coefficients of a truncated series:
/// |f^(k)| <= anchor * (k/degree)^exponent * ratio^(k-degree) for k > degree.
struct Envelope {
  std::size_t degree = 0;
  double anchor = 0.0;
  double exponent = 0.0;  // >= 0
  double ratio = 1.0;     // decay per index
};

/// Bound on sup_{|z|<=r} |f(z) - P(z)| where P is the stored polynomial part.
/// A default-constructed bound is identically zero (exact polynomial).
class TailBound {
public:
  TailBound() = default;

  static TailBound from_envelope(const Envelope& env, bool certified = true);
  static TailBound from_function(std::function<double(double)> fn, bool certified);

  /// Bound at radius r in [0, 1]; +inf when the bound does not converge.
  double at(double r) const;
  bool is_zero() const { return !fn_ && !envelope_; }
  bool certified() const { return certified_; }
  const std::optional<Envelope>& envelope() const { return envelope_; }

private:
  std::optional<Envelope> envelope_;
  std::function<double(double)> fn_;
  bool certified_ = true;
};

double envelope_tail(const Envelope& env, double r);

class AnalyticFunction {
public:
  AnalyticFunction();
  explicit AnalyticFunction(std::vector<cplx> coefficients, TailBound tail = {});

  const std::vector<cplx>& coefficients() const { return *coeffs_; }
  std::size_t degree() const { return coeffs_->size() - 1; }
  const TailBound& tail() const { return tail_; }
  bool is_polynomial() const { return tail_.is_zero(); }

  /// Coefficient k, zero beyond the stored degree.
  cplx coefficient(std::size_t k) const { return k < coeffs_->size() ? (*coeffs_)[k] : cplx{}; }

  /// sup_{|z|=r} |f - P| bound; zero for polynomials.
  double tail_at(double r) const { return tail_.at(r); }

  /// Sum of |f^(k)| r^k over the stored part.
  double abs_sum(double r) const;

  static constexpr std::size_t kBlock = 64;
  /// max |f^(k)|^2 over each run of kBlock consecutive coefficients.
  const std::vector<double>& block_max_norm() const { return *block_max_; }

private:
  std::shared_ptr<const std::vector<cplx>> coeffs_;
  std::shared_ptr<const std::vector<double>> block_max_;
  TailBound tail_;
};

struct CircleSamples {
  double radius = 1.0;
  std::vector<cplx> values;  // at angles 2*pi*j/M
  std::size_t size() const { return values.size(); }
};

cplx eval(const AnalyticFunction& f, cplx z);

/// Samples f(r e^{2 pi i j / M}), j < M, by one FFT of the r^k-scaled coefficients.
CircleSamples circle_samples(const AnalyticFunction& f, double r, std::size_t M);

AnalyticFunction cauchy_product(const AnalyticFunction& f, const AnalyticFunction& g);
AnalyticFunction differentiate(const AnalyticFunction& f);
AnalyticFunction volterra_primitive(const AnalyticFunction& f);
AnalyticFunction dilate(const AnalyticFunction& f, double r);

AnalyticFunction add(const AnalyticFunction& f, const AnalyticFunction& g);
AnalyticFunction subtract(const AnalyticFunction& f, const AnalyticFunction& g);
AnalyticFunction scale(const AnalyticFunction& f, cplx c);
/// z^m f(z).
AnalyticFunction shift(const AnalyticFunction& f, std::size_t m);
/// f(c z) for |c| <= 1 (rotation when |c| = 1).
AnalyticFunction scale_argument(const AnalyticFunction& f, cplx c);
/// Keeps coefficients 0..n; the dropped part is folded into the tail.
AnalyticFunction truncate(const AnalyticFunction& f, std::size_t n);

/// Recovers coefficients 0..N from samples on radius rho < 1.
/// Throws ConditioningError when rho^-N times the sampling noise floor exceeds tol.
AnalyticFunction reexpand_from_samples(const CircleSamples& samples, std::size_t N, double tol = 1e-6);

// Builders.
AnalyticFunction monomial(std::size_t n, cplx c = 1.0);
AnalyticFunction constant(cplx c);
AnalyticFunction polynomial(std::vector<cplx> coefficients);
/// (1 - w z)^{-s}, truncated at degree, |w| <= 1, s real.
AnalyticFunction binomial_series(cplx w, double s, std::size_t degree);
/// log(1/(1 - w z)), |w| <= 1.
AnalyticFunction log_series(cplx w, std::size_t degree);
/// 1/f truncated at degree; Newton iteration on FFT products.
AnalyticFunction reciprocal(const AnalyticFunction& f, std::size_t degree);
/// Smallest n with sum_{k>n} |f^(k)| r^k <= eps * sum_k |f^(k)| r^k.
std::size_t effective_degree(const AnalyticFunction& f, double r, double eps = 1e-17);
/// sum_k |f^(k)|^2 r^{2k} (polynomial part).
double parseval_mean_square(const AnalyticFunction& f, double r);

/// Either a truncated series or a pointwise evaluator on the closed disk of
/// radius max_radius. Norm routines accept both.
class DiskFunction {
public:
  using Evaluator = std::function<cplx(cplx)>;

  struct EvaluatorOptions {
    double max_radius = 1.0;
    std::size_t resolution = 1024;  // starting number of angular samples
    bool adaptive_angles = false;   // adaptive quadrature in theta (peaked integrands)
  };

  DiskFunction(AnalyticFunction f);  // NOLINT(google-explicit-constructor)
  DiskFunction(Evaluator ev, EvaluatorOptions opts);

  bool is_series() const { return series_.has_value(); }
  const AnalyticFunction& series() const { return *series_; }
  const EvaluatorOptions& options() const { return opts_; }

  cplx operator()(cplx z) const;
  double max_radius() const;
  double tail_at(double r) const { return series_ ? series_->tail_at(r) : 0.0; }
  std::vector<cplx> samples(double r, std::size_t M) const;

private:
  std::optional<AnalyticFunction> series_;
  Evaluator eval_;
  EvaluatorOptions opts_;
};

}  // namespace mixnorm
