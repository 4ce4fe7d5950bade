#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace mixnorm::quad {

struct Rule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1]; cached per n.
const Rule& gauss_legendre(std::size_t n);

struct Integral {
  double value = 0.0;
  double error = 0.0;
  std::size_t evaluations = 0;
  std::size_t intervals = 0;
};

struct AdaptiveOptions {
  double rel_tol = 1e-9;
  double abs_tol = 0.0;
  std::size_t max_intervals = 4000;
};

/// Globally adaptive Gauss-Kronrod (7/15) with interval bisection.
/// Throws NonConvergenceError when the interval cap is reached before the
/// error estimate drops below max(abs_tol, rel_tol*|value|).
Integral adaptive_gk15(const std::function<double(double)>& f, double a, double b,
                       const AdaptiveOptions& opts = {});

struct Extremum {
  double x = 0.0;
  double value = 0.0;
};

/// Golden-section search for the maximum of a unimodal f on [a, b].
Extremum golden_section_max(const std::function<double(double)>& f, double a, double b,
                            double x_tol = 1e-12, std::size_t max_iter = 200);

}  // namespace mixnorm::quad
