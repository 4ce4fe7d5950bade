#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mixnorm/errors.hpp"
#include "mixnorm/norms.hpp"
#include "mixnorm/quadrature.hpp"
#include "oracles.hpp"

#include <random>

using namespace mixnorm;

namespace {

std::vector<cplx> random_coeffs(std::uint64_t seed, std::size_t n) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> c(n);
  for (auto& v : c) v = cplx(u(rng), u(rng));
  return c;
}

}  // namespace

TEST_CASE("space parameters are validated") {
  CHECK_THROWS_AS(SpaceParams(0.0, 2.0, 1.0), DomainError);
  CHECK_THROWS_AS(SpaceParams(2.0, 2.0, 0.0), DomainError);
  CHECK_THROWS_AS(SpaceParams(2.0, 2.0, 1.0, true), DomainError);
  CHECK_NOTHROW(SpaceParams(2.0, kInf, 1.0, true));
  CHECK(SpaceParams(4.0, kInf, 1.0).growth_exponent() == 1.25);
}

TEST_CASE("radial grid") {
  const auto g = radial_grid({});
  REQUIRE(g.size() == 161);
  CHECK(g[0] == 0.0);
  CHECK(g[4] == 0.5);
  CHECK(1.0 - g[160] == doctest::Approx(std::exp2(-40.0)));
}

TEST_CASE("integral means against direct evaluation") {
  const auto c = random_coeffs(11, 12);
  const auto f = polynomial(c);
  for (double p : {1.0, 2.0, 3.5, 4.0})
    for (double r : {0.3, 0.9, 1.0})
      CHECK(integral_mean(f, r, p) == doctest::Approx(oracle::mean(c, r, p, 4096)).epsilon(1e-9));
  // The sampled maximum on a fine grid is a lower bound for M_inf.
  CHECK(integral_mean(f, 1.0, kInf) >= oracle::mean(c, 1.0, kInf, 4096) * (1 - 1e-12));
  CHECK(integral_mean(f, 1.0, kInf) <= oracle::mean(c, 1.0, kInf, 4096) * (1 + 1e-4));
}

TEST_CASE("integral means of evaluators agree with the series path") {
  const auto c = random_coeffs(12, 9);
  const auto f = polynomial(c);
  DiskFunction g([c](cplx z) { return oracle::horner(c, z); }, {1.0, 64, false});
  for (double p : {1.0, 2.0, 3.0}) CHECK(integral_mean(g, 0.95, p) == doctest::Approx(integral_mean(f, 0.95, p)).epsilon(1e-9));
}

TEST_CASE("monomial mixed norms match closed forms") {
  for (double alpha : {0.5, 1.0, 2.0})
    for (std::size_t n : {0, 1, 3, 8}) {
      const auto f = monomial(n);
      CHECK(mixed_norm(f, {2.0, kInf, alpha}) ==
            doctest::Approx(oracle::monomial_sup_norm(static_cast<double>(n), alpha)).epsilon(1e-8));
      for (double q : {1.0, 2.0})
        CHECK(mixed_norm(f, {2.0, q, alpha}) ==
              doctest::Approx(oracle::monomial_q_norm(static_cast<double>(n), q, alpha)).epsilon(1e-8));
    }
}

TEST_CASE("weighted sup against a dense scan") {
  const auto c = random_coeffs(13, 24);
  const auto f = polynomial(c);
  for (double alpha : {0.5, 1.0}) {
    const auto d = mixed_norm_detail(f, {2.0, kInf, alpha});
    const double ref = oracle::weighted_sup_scan([&](double r) { return oracle::mean(c, r, 2.0, 64); }, alpha);
    CHECK(d.value <= ref * (1 + 1e-9));
    CHECK(d.value >= ref * (1 - 1e-3));
    CHECK(d.rel_slack <= 1e-3);
    CHECK(d.upper >= d.value);
  }
}

TEST_CASE("finite q norm against direct quadrature") {
  const auto c = random_coeffs(14, 10);
  const auto f = polynomial(c);
  const double q = 2.0, alpha = 1.0;
  const auto ref = quad::adaptive_gk15(
      [&](double r) { return alpha * q * std::pow(1 - r, alpha * q - 1) * std::pow(oracle::mean(c, r, 2.0, 64), q); },
      0.0, 1.0, {1e-12});
  CHECK(mixed_norm(f, {2.0, q, alpha}) == doctest::Approx(std::pow(ref.value, 1 / q)).epsilon(1e-8));
}

TEST_CASE("radial profiles are nondecreasing") {
  const auto f = polynomial(random_coeffs(15, 30));
  const auto prof = radial_profile(f, 2.0);
  CHECK(prof.monotone);
  for (std::size_t j = 1; j < prof.values.size(); ++j) CHECK(prof.values[j] >= prof.values[j - 1] * (1 - 1e-9));
}

TEST_CASE("decay and growth classifiers on synthetic data") {
  std::vector<double> x, decay, flat, blow;
  for (int k = 0; k <= 40; ++k) {
    const double t = std::pow(10.0, -k / 8.0);
    x.push_back(t);
    decay.push_back(t);
    flat.push_back(1.0 + 0.1 * std::sin(k));
    blow.push_back(1.0 / t);
  }
  CHECK(classify_decay(x, decay) == Decay::DECAYS);
  CHECK(classify_decay(x, flat) == Decay::PERSISTS);
  CHECK(growth_trend(x, blow) == Growth::INFINITE);
  CHECK(growth_trend(x, flat) == Growth::FINITE);
  CHECK(loglog_slope(x, blow) == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("little-oh profiles") {
  CHECK(little_oh_profile(monomial(3), 2.0, 1.0).verdict == Decay::DECAYS);
  // (1 - z)^{-3/2} sits exactly on the boundary of H(2, inf, 1).
  CHECK(little_oh_profile(binomial_series(1.0, 1.5, 1 << 18), 2.0, 1.0).verdict == Decay::PERSISTS);
}

TEST_CASE("Bloch seminorms") {
  CHECK(bloch_seminorm(monomial(1)) == doctest::Approx(1.0).epsilon(1e-9));
  const auto lg = little_bloch_verdict(log_series(1.0, 1 << 16));
  CHECK(lg.verdict == BlochClass::BLOCH_ONLY);
  CHECK(lg.seminorm == doctest::Approx(2.0).epsilon(0.01));
  CHECK(little_bloch_verdict(monomial(2)).verdict == BlochClass::LITTLE_BLOCH);
  CHECK(little_bloch_verdict(binomial_series(1.0, 1.0, 1 << 16)).verdict == BlochClass::NOT_BLOCH);
}

TEST_CASE("point evaluation bound") {
  CHECK(point_eval_norm(cplx(0.5, 0), {2.0, kInf, 1.0}) == doctest::Approx(std::pow(2.0, 1.5)));
  CHECK(to_string(Decay::PERSISTS) == "PERSISTS");
  CHECK(to_string(Growth::FINITE) == "FINITE");
}
