#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace mixnorm::fft {

using cplx = std::complex<double>;

/// values[j] = sum_k c[k] * exp(2*pi*i*j*k/M). Coefficients beyond M are
/// folded modulo M, which is exactly the evaluation at the M-th roots of unity.
std::vector<cplx> evaluate_on_roots(std::span<const cplx> coeffs, std::size_t M);

/// Inverse of evaluate_on_roots: c[k] = (1/M) sum_j v[j] exp(-2*pi*i*j*k/M).
std::vector<cplx> interpolate_from_roots(std::span<const cplx> values);

/// Smallest power of two >= n (and >= 1).
std::size_t next_pow2(std::size_t n);

}  // namespace mixnorm::fft
