#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mixnorm/errors.hpp"
#include "mixnorm/semigroup.hpp"

#include <numbers>
#include <random>

using namespace mixnorm;

namespace {

// Hand-derived flows: dilation e^{-t} z, boundary-const w = 1 - 1/(1/(1-z) + t).
cplx dilation_flow(double t, cplx z) { return std::exp(-t) * z; }
cplx boundary_const_flow(double t, cplx z) { return 1.0 - 1.0 / (1.0 / (1.0 - z) + t); }

}  // namespace

TEST_CASE("Herglotz factors") {
  CHECK(Herglotz::constant(2.0)(cplx(0.3, 0.1)) == cplx(2.0));
  CHECK(std::abs(Herglotz::cayley()(0.5) - 3.0) < 1e-15);
  CHECK(std::abs(Herglotz::one_minus_z()(0.25) - 0.75) < 1e-15);
  const auto r = Herglotz::cayley().reciprocal_series(20);
  // (1 - z)/(1 + z) = 1 - 2z + 2z^2 - ...
  CHECK(std::abs(r.coefficient(0) - 1.0) < 1e-14);
  CHECK(std::abs(r.coefficient(5) + 2.0) < 1e-13);
  CHECK_THROWS_AS(GeneratorSpec(DwPoint::INTERIOR, Herglotz::constant(-1.0)), DomainError);
}

TEST_CASE("generator forms") {
  const auto d = catalog::dilation();
  CHECK(std::abs(generator_eval(d, 0.5) + 0.5) < 1e-15);
  CHECK(std::abs(generator_derivative_at_fixed_point(d) + 1.0) < 1e-15);
  const auto b = catalog::boundary_const();
  CHECK(std::abs(generator_eval(b, 0.5) - 0.25) < 1e-15);
  const auto s = generator_series(b, 4);
  CHECK(std::abs(s.coefficient(1) + 2.0) < 1e-15);
}

TEST_CASE("numerical flows follow hand-derived trajectories") {
  for (cplx z : {cplx(0.0), cplx(0.5, 0.3), cplx(-0.9, 0.0), cplx(0.0, 0.9)})
    for (double t : {0.0, 0.4, 2.0}) {
      CHECK(std::abs(flow(catalog::dilation(), t, z).z_t - dilation_flow(t, z)) < 1e-10);
      CHECK(std::abs(flow(catalog::boundary_const(), t, z).z_t - boundary_const_flow(t, z)) < 1e-8);
    }
}

TEST_CASE("semiflow law, self-map property and flow_map") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-0.65, 0.65);
  for (const auto& s : catalog::all())
    for (int i = 0; i < 5; ++i) {
      const cplx z(u(rng), u(rng));
      const cplx a = flow(s, 1.3, z).z_t;
      const cplx b = flow(s, 0.6, flow(s, 0.7, z).z_t).z_t;
      CHECK(std::abs(a - b) < 1e-8);
      CHECK(std::abs(a) < 1.0);
      CHECK(std::abs(flow_map(s, 1.3, z) - a) < 1e-8);
    }
}

TEST_CASE("Koenigs functions and generator recovery") {
  for (const auto& s : catalog::all()) {
    CHECK(koenigs_residual(s, 0.5, cplx(0.4, -0.3)) < 1e-8);
    const auto rec = generator_recovery(s, cplx(0.3, 0.4));
    CHECK(rec.order >= 0.9);
  }
}

TEST_CASE("catalog lookup") {
  CHECK(catalog::all().size() == 6);
  CHECK(catalog::by_name("interior-cayley").dw_point() == DwPoint::INTERIOR);
  CHECK_THROWS_AS(catalog::by_name("nope"), NotFoundError);
}

TEST_CASE("g-symbols") {
  // Dilation: gamma = -z.
  const auto g = g_symbol(catalog::dilation(), 16);
  CHECK(std::abs(g.coefficient(1) + 1.0) < 1e-14);
  // Boundary const: gamma = z/(1 - z).
  const auto h = g_symbol(catalog::boundary_const(), 16);
  for (std::size_t k = 1; k <= 16; ++k) CHECK(std::abs(h.coefficient(k) - 1.0) < 1e-12);
}

TEST_CASE("generator action") {
  const auto f = polynomial({0.0, 1.0, 1.0});
  const auto a = generator_action(catalog::dilation(), f);
  // -z (1 + 2z).
  CHECK(std::abs(a.coefficient(1) + 1.0) < 1e-14);
  CHECK(std::abs(a.coefficient(2) + 2.0) < 1e-14);
}

TEST_CASE("continuity probe decays for a polynomial at finite q") {
  const auto rep = continuity_probe(catalog::dilation(), polynomial({1.0, 0.5, -0.25}), {2.0, 2.0, 1.0});
  CHECK(rep.verdict == Decay::DECAYS);
  CHECK(rep.t.size() == default_t_grid().size());
}

TEST_CASE("maximal subspace classification") {
  const SpaceParams sp(2.0, kInf, 1.0);
  CHECK(maximal_subspace_classify(catalog::dilation(), sp).verdict == MaximalClass::LITTLE_OH_SPACE);
  CHECK(maximal_subspace_classify(catalog::interior_cayley(), sp).verdict == MaximalClass::NON_SEPARABLE);
  CHECK(maximal_subspace_classify(catalog::boundary_const(), sp).verdict == MaximalClass::NON_SEPARABLE);
}

TEST_CASE("arc decay of a polynomial") {
  CHECK(arc_decay(polynomial({1.0, 1.0}), 0.0, 2.0, 1.0).verdict == Decay::DECAYS);
}

TEST_CASE("Stolz-angle infimum of the Herglotz factor") {
  CHECK(stolz_psi(Herglotz::constant(3.0), 0.0) == doctest::Approx(3.0));
  CHECK(stolz_psi(Herglotz::cayley(), 0.0) > 0.9);
}
