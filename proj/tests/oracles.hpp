#pragma once

// Reference computations that avoid the library's FFT and Parseval paths.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

inline cplx horner(const std::vector<cplx>& c, cplx z) {
  cplx v = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * z + *it;
  return v;
}

// M_p(r, f) from M direct evaluations; p = inf gives the sampled maximum.
inline double mean(const std::vector<cplx>& c, double r, double p, std::size_t M) {
  double acc = 0.0;
  for (std::size_t j = 0; j < M; ++j) {
    const double a = std::abs(horner(c, std::polar(r, 2.0 * std::numbers::pi * j / M)));
    acc = std::isinf(p) ? std::max(acc, a) : acc + std::pow(a, p);
  }
  return std::isinf(p) ? acc : std::pow(acc / M, 1.0 / p);
}

inline std::vector<cplx> naive_dft(const std::vector<cplx>& c, std::size_t M) {
  std::vector<cplx> v(M);
  for (std::size_t j = 0; j < M; ++j)
    for (std::size_t k = 0; k < c.size(); ++k) v[j] += c[k] * std::polar(1.0, 2.0 * std::numbers::pi * j * k / M);
  return v;
}

// k-th Taylor coefficient of (1 - w z)^{-s} via the Gamma function.
inline cplx binomial_coefficient(cplx w, double s, std::size_t k) {
  const double mag = std::exp(std::lgamma(s + k) - std::lgamma(s) - std::lgamma(k + 1.0));
  return mag * std::pow(w, static_cast<double>(k));
}

inline double monomial_sup_norm(double n, double alpha) {
  return std::pow(alpha, alpha) * std::pow(n, n) / std::pow(n + alpha, n + alpha);
}

inline double monomial_q_norm(double n, double q, double alpha) {
  return std::pow(alpha * q * std::beta(alpha * q, n * q + 1.0), 1.0 / q);
}

// sup_r (1 - r)^alpha M_p(r, f) by dense scanning plus local refinement.
template <class MeanFn>
double weighted_sup_scan(MeanFn&& mp, double alpha, std::size_t n = 4000) {
  double best = 0.0, best_u = 0.0;
  // u = -log2(1 - r) spans r in [0, 1 - 2^-40].
  for (std::size_t i = 0; i <= n; ++i) {
    const double u = 40.0 * i / n;
    const double r = 1.0 - std::exp2(-u);
    const double v = std::exp2(-u * alpha) * mp(r);
    if (v > best) best = v, best_u = u;
  }
  double lo = std::max(0.0, best_u - 40.0 / n), hi = best_u + 40.0 / n;
  for (int it = 0; it < 200; ++it) {
    const double a = lo + (hi - lo) / 3, b = hi - (hi - lo) / 3;
    const double fa = std::exp2(-a * alpha) * mp(1.0 - std::exp2(-a));
    const double fb = std::exp2(-b * alpha) * mp(1.0 - std::exp2(-b));
    (fa < fb ? lo : hi) = fa < fb ? a : b;
  }
  const double u = 0.5 * (lo + hi);
  return std::max(best, std::exp2(-u * alpha) * mp(1.0 - std::exp2(-u)));
}

}  // namespace oracle
