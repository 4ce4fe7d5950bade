#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mixnorm/errors.hpp"
#include "mixnorm/operators.hpp"
#include "oracles.hpp"

#include <random>

using namespace mixnorm;

TEST_CASE("sup norm of polynomials") {
  CHECK(sup_norm(polynomial({0.5, 0.5})) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(sup_norm(monomial(4, 0.3)) == doctest::Approx(0.3).epsilon(1e-9));
}

TEST_CASE("composition evaluates f at phi") {
  const auto f = polynomial({1.0, -2.0, 0.5});
  const auto phi = polynomial({0.1, 0.4, cplx(0, 0.2)});
  const auto h = compose(f, phi);
  const cplx z(0.2, 0.7);
  CHECK(std::abs(h(z) - eval(f, eval(phi, z))) < 1e-14);
  const auto hc = compose(f, phi, ComposeMode::COEFFICIENT, {0.9, 8, 1e-6});
  REQUIRE(hc.is_series());
  // f o phi is a polynomial of degree 4.
  const auto want = cauchy_product(cauchy_product(phi, phi), constant(0.5));
  CHECK(std::abs(hc.series().coefficient(4) - want.coefficient(4)) < 1e-8);
}

TEST_CASE("composition bound") {
  const auto phi = monomial(1, 0.5);
  // a = 0 gives (3)^{1/p}.
  CHECK(composition_norm_bound(phi, {2.0, kInf, 1.0}) == doctest::Approx(std::sqrt(3.0)));
  const auto psi = polynomial({0.25, 0.5});
  const double a = 1.0 / 3.0;
  CHECK(composition_norm_bound(psi, {2.0, kInf, 1.0}) ==
        doctest::Approx((1 + a) / (1 - a) * std::sqrt((3 + a) / (1 - a))));
  CHECK_THROWS_AS(composition_norm_bound(constant(0.5), {2.0, kInf, 1.0}), DegenerateError);
}

TEST_CASE("integral operator is V(f g')") {
  const auto g = polynomial({0.0, 1.0, 1.0});
  const auto f = polynomial({2.0, 3.0});
  const auto t = integral_op(g, f);
  // f g' = (2 + 3z)(1 + 2z) = 2 + 7z + 6z^2.
  CHECK(std::abs(t.coefficient(1) - 2.0) < 1e-14);
  CHECK(std::abs(t.coefficient(2) - 3.5) < 1e-14);
  CHECK(std::abs(t.coefficient(3) - 2.0) < 1e-14);
  CHECK(std::abs(multiply(g, f).coefficient(3) - 3.0) < 1e-14);
}

TEST_CASE("operator norm lower bounds are deterministic and exact for multiples of the identity") {
  const SpaceParams sp(2.0, kInf, 1.0);
  TestFamily fam;
  fam.series_degree = 1024;
  const Operator twice = [](const AnalyticFunction& f) { return DiskFunction(scale(f, 2.0)); };
  const auto a = op_norm_lower(twice, sp, fam, 9);
  const auto b = op_norm_lower(twice, sp, fam, 9);
  CHECK(a.lower_bound == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(a.lower_bound == b.lower_bound);
  CHECK(a.witness == b.witness);
  CHECK(a.family_size > 0);
}

TEST_CASE("T_g classification") {
  const SpaceParams sp(2.0, kInf, 1.0);
  CHECK(tg_classifier(monomial(1), sp).verdict == TgClass::COMPACT);
  const auto lg = tg_classifier(log_series(1.0, 1 << 16), sp);
  CHECK(lg.verdict == TgClass::BOUNDED_NOT_COMPACT);
  CHECK(std::abs(lg.bloch.seminorm - 2.0) <= 0.02);
  CHECK(tg_classifier(binomial_series(1.0, 1.0, 1 << 16), sp).verdict == TgClass::UNBOUNDED);
}

TEST_CASE("conformal shift derivative") {
  const auto g = log_series(1.0, 4096);
  for (cplx zeta : {cplx(0.3, 0.2), cplx(-0.5, 0.1)}) {
    const auto d = conformal_shift_derivative(g, zeta);
    CHECK(d.error < 1e-8);
  }
  const auto h = conformal_shift(g, cplx(0.3, 0.0));
  CHECK(std::abs(h(0.0)) < 1e-13);
}

TEST_CASE("exponential series and membership") {
  const auto e = exp_series(monomial(1), 1.0, {256});
  double fact = 1.0;
  for (std::size_t k = 0; k < 10; ++k) {
    if (k) fact *= static_cast<double>(k);
    CHECK(std::abs(e.coefficient(k) - 1.0 / fact) < 1e-9);
  }
  const auto table = exp_membership(log_series(1.0, 1 << 16), 1.0, {0.25, 1.0}, {4.0});
  REQUIRE(table.size() == 2);
  for (const auto& m : table) CHECK(m.verdict == (0.75 <= m.alpha ? Growth::FINITE : Growth::INFINITE));
}

TEST_CASE("Hardy-Littlewood ratios for monomials") {
  // ||z^n||_{2,inf,1} = n^n/(n+1)^{n+1}, ||n z^{n-1}||_{2,inf,2} = 4n(n-1)^{n-1}/(n+1)^{n+1}.
  for (double n : {2.0, 5.0}) {
    const auto hl = hardy_littlewood_ratios(monomial(static_cast<std::size_t>(n)), 2.0, 1.0);
    CHECK(hl.forward == doctest::Approx(4.0 * std::pow((n - 1) / n, n - 1)).epsilon(1e-6));
    CHECK(hl.backward == doctest::Approx(1.0 / hl.forward).epsilon(1e-12));
  }
}
