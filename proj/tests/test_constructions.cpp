#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mixnorm/calibration.hpp"
#include "mixnorm/constructions.hpp"
#include "mixnorm/errors.hpp"
#include "oracles.hpp"

using namespace mixnorm;

TEST_CASE("Fejer kernel and blocks") {
  const auto F = fejer(4);
  REQUIRE(F.size() == 7);
  CHECK(F[3] == 1.0);
  CHECK(F[0] == doctest::Approx(0.25));
  for (std::size_t N : {4, 16, 64}) {
    const auto G = gn_poly(N);
    CHECK(G.degree() == 3 * N - 1);
    CHECK(G.coefficient(N) == cplx(0.0));
    CHECK(G.coefficient(2 * N) == cplx(1.0));
    CHECK(integral_mean(G, 1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-9));
    // Direct sampling at the peak z = 1 gives the sup norm.
    CHECK(std::abs(oracle::horner(G.coefficients(), 1.0)) == doctest::Approx(static_cast<double>(N)));
  }
}

TEST_CASE("lacunary parameters and embedding") {
  const SpaceParams sp(2.0, kInf, 1.0);
  const auto lp = LacunaryParams::standard(10, 3, sp);
  CHECK(lp.N_seq == std::vector<std::size_t>{10, 100, 1000});
  CHECK(lp.nu == doctest::Approx(0.5));
  CHECK_NOTHROW(lp.validate());
  auto bad = lp;
  bad.N_seq[1] = 20;
  CHECK_THROWS_AS(bad.validate(), InvariantViolation);
  const std::vector<cplx> a{1.0, -1.0};
  const auto f = lacunary_embed(a, lp);
  CHECK(std::abs(f.coefficient(20) - std::sqrt(10.0)) < 1e-12);
  CHECK(std::abs(f.coefficient(200) + 10.0) < 1e-12);
  CHECK(f.coefficient(50) == cplx(0.0));
}

TEST_CASE("lacunary chain constants") {
  const auto c = lacunary_chain_constants(10, 1.0);
  CHECK(c.A == doctest::Approx(2.5));
  // C_1 = max(0, log 2 - 1) = 0, so B = sum_{j >= 0} e^{-10^j / 2}.
  CHECK(c.B == doctest::Approx(std::exp(-0.5) + std::exp(-5.0) + std::exp(-50.0)).epsilon(1e-14));
  const auto h = lacunary_chain_constants(10, 2.0);
  CHECK(h.A == doctest::Approx(4.0 / (1.0 - 1.0 / 25.0)));
  CHECK(h.B > c.B);
}

TEST_CASE("sign patterns") {
  const auto s = sign_patterns(3);
  CHECK(s.size() == 4);
  for (const auto& a : s) CHECK(a[0] == cplx(1.0));
}

TEST_CASE("xnu family matches the closed form") {
  const int K = 4;
  const double beta = -4.0, nu = 2.5;
  CHECK(xnu_delta(2, K) == 1.0 / 16.0);
  const auto f = xnu_family(2, nu, beta, K, 4096);
  for (cplx z : {cplx(0.0), cplx(0.5, 0.5), cplx(-0.9, 0.1)})
    CHECK(std::abs(eval(f, z) - xnu_value(2, nu, beta, K, z)) <= 1e-10 * std::abs(xnu_value(2, nu, beta, K, z)));
  const double d = 1.0 / 16.0;
  CHECK(std::abs(xnu_value(2, nu, beta, K, 0.0) - std::pow(d, nu) * std::pow(1 + d, beta)) < 1e-15);
  const cplx z(0.3, 0.2), h(1e-6, 0.0);
  const cplx fd = (xnu_value(2, nu, beta, K, z + h) - xnu_value(2, nu, beta, K, z - h)) / (2.0 * h);
  CHECK(std::abs(fd - xnu_derivative(2, nu, beta, K, z)) < 1e-6 * std::abs(fd));
  CHECK(xnu_degree(6, 4, -4.0) == (1u << 19));
}

TEST_CASE("xnu evaluators") {
  const std::vector<cplx> a{1.0, -1.0, 1.0};
  const auto g = xnu_embed_evaluator(a, 2.5, -4.0, 4);
  const auto s = xnu_embed(a, 2.5, -4.0, 4, 4096);
  const cplx z(0.4, -0.3);
  CHECK(std::abs(g(z) - eval(s, z)) < 1e-12);
  const auto m = xnu_majorant(3, 2.5, -4.0, 4);
  double want = 0.0;
  for (int n = 1; n <= 3; ++n) want += std::abs(xnu_value(n, 2.5, -4.0, 4, z));
  CHECK(std::abs(m(z) - want) < 1e-14);
}

TEST_CASE("obstruction and growth test functions") {
  const SpaceParams sp(2.0, kInf, 1.0);
  const auto f = obstruction_fn(0.0, sp, 1024);
  CHECK(std::abs(f.coefficient(3) - oracle::binomial_coefficient(1.0, 1.5, 3)) < 1e-14);
  const auto g = growth_test_fn(0.0, sp, 64);
  CHECK(g.degree() == 0);
  const auto h = growth_test_fn(0.5, sp, 256);
  CHECK(std::abs(h.coefficient(0) - std::pow(0.75, 1.5)) < 1e-14);
}

TEST_CASE("Bloch witnesses") {
  const auto w = bloch_witness(log_series(1.0, 1 << 14), 1.0);
  CHECK(w.delta > 0.0);
  CHECK(w.r.size() >= 4);
  for (double v : w.values) CHECK(v >= w.delta);
  CHECK_THROWS_AS(bloch_witness(monomial(2), 1.0), NotFoundError);
}

TEST_CASE("approximation sequence h_n") {
  const auto spec = catalog::boundary_const();
  const SpaceParams sp(2.0, kInf, 1.0);
  CHECK(default_theta(sp) == 0.5);
  CHECK_THROWS_AS(approx_sequence_hn(monomial(1), catalog::dilation(), 0.5, 10.0), DomainError);
  CHECK_THROWS_AS(approx_sequence_hn(monomial(1), spec, 1.5, 10.0), DomainError);
  // h_n - f equals the error evaluator at sample points.
  const auto f = polynomial({0.5, 1.0, -0.25});
  const auto fp = [](cplx z) { return 1.0 - 0.5 * z; };
  const auto h = approx_sequence_hn(f, spec, 0.5, 100.0);
  const auto e = approx_error_hn(fp, spec, 0.5, 100.0);
  const cplx z(0.3, 0.4);
  CHECK(std::abs((h(z) - eval(f, z)) - e(z)) < 1e-12);
  // The error shrinks as n grows.
  CHECK(std::abs(approx_error_hn(fp, spec, 0.5, 1000.0)(z)) < std::abs(e(z)));
  CHECK(std::abs(approx_psi(Herglotz::constant(1.0), 0.5, 0.0) - 1.0) < 1e-15);
  // (1 - z)P(z) on the negative real axis has no principal root.
  CHECK_THROWS_AS(approx_psi(Herglotz::from_series(constant(-1.0)), 0.5, 0.0), BranchError);
}
