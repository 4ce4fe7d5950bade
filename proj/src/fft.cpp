#include "mixnorm/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace mixnorm::fft {

namespace {

// FFTW planning is not thread-safe; execution of an existing plan is.
class PlanCache {
public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(std::size_t n, int sign) {
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(n, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    auto* scratch = fftw_alloc_complex(n);
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), scratch, scratch, sign, FFTW_ESTIMATE);
    fftw_free(scratch);
    if (plan == nullptr) throw std::runtime_error("fftw: plan creation failed");
    plans_.emplace(key, plan);
    return plan;
  }

private:
  std::mutex mutex_;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

struct Buffer {
  explicit Buffer(std::size_t n) : data(fftw_alloc_complex(n)), size(n) {
    if (data == nullptr) throw std::bad_alloc();
  }
  ~Buffer() { fftw_free(data); }
  Buffer(const Buffer&) = delete;
  Buffer& operator=(const Buffer&) = delete;
  cplx* as_complex() { return reinterpret_cast<cplx*>(data); }
  fftw_complex* data;
  std::size_t size;
};

}  // namespace

std::size_t next_pow2(std::size_t n) {
  std::size_t m = 1;
  while (m < n) m <<= 1;
  return m;
}

std::vector<cplx> evaluate_on_roots(std::span<const cplx> coeffs, std::size_t M) {
  if (M == 0) throw std::invalid_argument("evaluate_on_roots: M must be positive");
  Buffer buf(M);
  cplx* b = buf.as_complex();
  std::fill(b, b + M, cplx{});
  for (std::size_t k = 0; k < coeffs.size(); ++k) b[k % M] += coeffs[k];
  fftw_execute_dft(cache().get(M, FFTW_BACKWARD), buf.data, buf.data);
  return {b, b + M};
}

std::vector<cplx> interpolate_from_roots(std::span<const cplx> values) {
  const std::size_t M = values.size();
  if (M == 0) return {};
  Buffer buf(M);
  cplx* b = buf.as_complex();
  std::copy(values.begin(), values.end(), b);
  fftw_execute_dft(cache().get(M, FFTW_FORWARD), buf.data, buf.data);
  const double scale = 1.0 / static_cast<double>(M);
  std::vector<cplx> out(b, b + M);
  for (auto& v : out) v *= scale;
  return out;
}

}  // namespace mixnorm::fft
