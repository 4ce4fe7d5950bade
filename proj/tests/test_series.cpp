#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mixnorm/errors.hpp"
#include "mixnorm/fft.hpp"
#include "mixnorm/quadrature.hpp"
#include "mixnorm/series.hpp"
#include "oracles.hpp"

#include <random>

using namespace mixnorm;

namespace {

std::vector<cplx> random_coeffs(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> c(n);
  for (auto& v : c) v = cplx(u(rng), u(rng));
  return c;
}

}  // namespace

TEST_CASE("fft evaluation matches a direct DFT, folding past M") {
  std::mt19937_64 rng(3);
  for (std::size_t n : {5, 16, 37}) {
    const auto c = random_coeffs(rng, n);
    const auto v = fft::evaluate_on_roots(c, 16);
    const auto w = oracle::naive_dft(c, 16);
    for (std::size_t j = 0; j < 16; ++j) CHECK(std::abs(v[j] - w[j]) < 1e-12);
  }
}

TEST_CASE("fft interpolation inverts evaluation") {
  std::mt19937_64 rng(4);
  const auto c = random_coeffs(rng, 32);
  const auto back = fft::interpolate_from_roots(fft::evaluate_on_roots(c, 32));
  for (std::size_t k = 0; k < 32; ++k) CHECK(std::abs(back[k] - c[k]) < 1e-13);
  CHECK(fft::next_pow2(0) == 1);
  CHECK(fft::next_pow2(17) == 32);
  CHECK(fft::next_pow2(64) == 64);
}

TEST_CASE("Gauss-Legendre integrates polynomials of degree 2n-1 exactly") {
  const auto& rule = quad::gauss_legendre(8);
  double s = 0.0;
  for (std::size_t i = 0; i < 8; ++i) s += rule.weights[i] * std::pow(rule.nodes[i], 14);
  CHECK(s == doctest::Approx(2.0 / 15.0).epsilon(1e-14));
}

TEST_CASE("adaptive GK15 and golden section") {
  const auto r = quad::adaptive_gk15([](double x) { return std::sqrt(x); }, 0.0, 1.0, {1e-12});
  CHECK(r.value == doctest::Approx(2.0 / 3.0).epsilon(1e-11));
  const auto m = quad::golden_section_max([](double x) { return -(x - 0.3) * (x - 0.3); }, 0.0, 1.0);
  CHECK(m.x == doctest::Approx(0.3).epsilon(1e-8));
  CHECK_THROWS_AS(quad::adaptive_gk15([](double x) { return 1.0 / x; }, 0.0, 1.0, {1e-12, 0.0, 20}),
                  NonConvergenceError);
}

TEST_CASE("evaluation and circle samples agree with Horner") {
  std::mt19937_64 rng(5);
  const auto c = random_coeffs(rng, 20);
  const auto f = polynomial(c);
  const cplx z(0.3, -0.5);
  CHECK(std::abs(eval(f, z) - oracle::horner(c, z)) < 1e-13);
  const auto s = circle_samples(f, 0.8, 64);
  for (std::size_t j = 0; j < 64; j += 7)
    CHECK(std::abs(s.values[j] - oracle::horner(c, std::polar(0.8, 2.0 * std::numbers::pi * j / 64))) < 1e-12);
}

TEST_CASE("Cauchy product is the coefficient convolution") {
  std::mt19937_64 rng(6);
  const auto a = random_coeffs(rng, 30), b = random_coeffs(rng, 17);
  const auto p = cauchy_product(polynomial(a), polynomial(b));
  REQUIRE(p.degree() == 45);
  for (std::size_t k = 0; k <= 45; ++k) {
    cplx s = 0.0;
    for (std::size_t i = 0; i <= k; ++i)
      if (i < a.size() && k - i < b.size()) s += a[i] * b[k - i];
    CHECK(std::abs(p.coefficient(k) - s) < 1e-12);
  }
}

TEST_CASE("differentiation, Volterra primitive, dilation, shift") {
  const auto f = polynomial({1.0, 2.0, 3.0});
  const auto d = differentiate(f);
  CHECK(d.coefficient(0) == cplx(2.0));
  CHECK(d.coefficient(1) == cplx(6.0));
  const auto v = volterra_primitive(d);
  CHECK(v.coefficient(0) == cplx(0.0));
  CHECK(std::abs(v.coefficient(2) - 3.0) < 1e-15);
  CHECK(std::abs(dilate(f, 0.5).coefficient(2) - 0.75) < 1e-15);
  CHECK(shift(f, 3).coefficient(5) == cplx(3.0));
  CHECK(std::abs(scale_argument(f, cplx(0, 1)).coefficient(2) + 3.0) < 1e-15);
}

TEST_CASE("binomial and log series match the Gamma-function coefficients") {
  const cplx w = std::polar(1.0, 0.7);
  const auto f = binomial_series(w, 1.5, 512);
  for (std::size_t k : {0, 1, 10, 100, 512}) {
    const cplx want = oracle::binomial_coefficient(w, 1.5, k);
    CHECK(std::abs(f.coefficient(k) - want) <= 1e-12 * std::abs(want));
  }
  const auto g = log_series(1.0, 100);
  CHECK(g.coefficient(0) == cplx(0.0));
  CHECK(std::abs(g.coefficient(7) - 1.0 / 7.0) < 1e-15);
  CHECK(f.tail_at(0.9) < 1e-20);
  CHECK((std::isinf(f.tail_at(1.0)) || f.tail_at(1.0) > 0.0));
}

TEST_CASE("reciprocal series") {
  const auto f = polynomial({1.0, -0.5});
  const auto r = reciprocal(f, 40);
  for (std::size_t k = 0; k <= 40; ++k) CHECK(std::abs(r.coefficient(k) - std::pow(0.5, k)) < 1e-14);
}

TEST_CASE("re-expansion from samples recovers coefficients and detects bad conditioning") {
  const auto f = polynomial({1.0, 2.0, cplx(0, 1), 0.25});
  const auto back = reexpand_from_samples(circle_samples(f, 0.9, 64), 10);
  for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(back.coefficient(k) - f.coefficient(k)) < 1e-10);
  CHECK_THROWS_AS(reexpand_from_samples(circle_samples(f, 0.1, 64), 30), ConditioningError);
}

TEST_CASE("Parseval mean square equals the sampled mean for polynomials") {
  std::mt19937_64 rng(7);
  const auto c = random_coeffs(rng, 300);
  const auto f = polynomial(c);
  for (double r : {0.5, 0.99, 1.0})
    CHECK(std::sqrt(parseval_mean_square(f, r)) == doctest::Approx(oracle::mean(c, r, 2.0, 512)).epsilon(1e-12));
}

TEST_CASE("block maxima cover every coefficient") {
  std::vector<cplx> c(200, 0.0);
  c[130] = 3.0;
  const auto f = polynomial(c);
  const auto& b = f.block_max_norm();
  REQUIRE(b.size() == 4);
  CHECK(b[2] == doctest::Approx(9.0));
  CHECK(b[0] == 0.0);
}

TEST_CASE("effective degree and truncation tails") {
  const auto f = binomial_series(1.0, 1.0, 2000);
  const auto n = effective_degree(f, 0.5);
  CHECK(n < 80);
  const auto t = truncate(f, 100);
  CHECK(t.degree() == 100);
  CHECK(t.tail_at(0.5) >= std::pow(0.5, 101) * 0.999);
}

TEST_CASE("disk functions from evaluators") {
  DiskFunction g([](cplx z) { return 1.0 + z; }, {1.0, 64, false});
  CHECK_FALSE(g.is_series());
  CHECK(std::abs(g(cplx(0.5, 0)) - 1.5) < 1e-15);
  CHECK(g.max_radius() == 1.0);
}
