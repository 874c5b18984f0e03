#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "zmlab/functionals.hpp"
#include "zmlab/zero_mode.hpp"

using namespace zmlab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("historical mode") {
  const ZeroMode h = family_historical();
  CHECK(h.normalized);
  CHECK_THAT(l2_norm_sq(h), WithinRel(1.0, 1e-10));
  CHECK_THAT(h.flux, WithinRel(2.0, 1e-12));
  CHECK_THAT(h.a(1.0), WithinRel(1.0, 1e-14));
  CHECK_THAT(h.f(0.5), WithinRel(1.0 / std::sqrt(pi) / 1.25, 1e-14));
  CHECK_THAT(h.phi(2.0), WithinRel(std::log(5.0), 1e-14));
}

TEST_CASE("power family") {
  const ZeroMode p = family_power(2.77, 0.594);
  CHECK_THAT(p.flux, WithinRel(2.77 * 0.594, 1e-12));
  CHECK_THAT(l2_norm_sq(p), WithinRel(1.0, 1e-9));
  CHECK_THROWS_AS(family_power(1.0, 0.5), no_zero_mode_error);

  // (1, 2) is the historical mode once normalized
  const ZeroMode q = family_power(1.0, 2.0);
  const ZeroMode h = family_historical();
  for (double r : {0.01, 0.3, 1.0, 4.0, 50.0}) {
    CHECK_THAT(q.f(r), WithinRel(h.f(r), 1e-9));
    CHECK_THAT(q.a(r), WithinRel(h.a(r), 1e-12));
    CHECK_THAT(q.B(r), WithinRel(h.B(r), 1e-12));
  }
}

TEST_CASE("step family") {
  const ZeroMode s = family_step(2.82, false);
  CHECK_THAT(s.a(2.0), WithinRel(0.705, 1e-14));
  CHECK_THAT(s.a(0.5), WithinRel(0.705, 1e-14));
  CHECK_THAT(s.f(0.5), WithinRel(std::exp(-2.82 / 16), 1e-14));
  CHECK_THAT(s.f(3.0), WithinRel(std::exp(-2.82 / 4) * std::pow(3.0, -1.41), 1e-14));
  CHECK_THAT(s.flux, WithinRel(1.41, 1e-14));

  const ZeroMode s4 = family_step(4.0);
  const double below = s4.f(std::nextafter(1.0, 0.0)), above = s4.f(std::nextafter(1.0, 2.0));
  CHECK_THAT(below, WithinRel(above, 1e-12));
  CHECK_THAT(below / s4.amplitude, WithinRel(std::exp(-1.0), 1e-12));
  CHECK_THROWS_AS(family_step(2.0), no_zero_mode_error);
}

TEST_CASE("Aharonov-Casher construction reproduces the historical mode") {
  const ZeroMode h = family_historical();
  const ZeroMode ac = ac_construct(h.B, true);
  CHECK_THAT(ac.flux, WithinRel(2.0, 1e-10));
  const auto grid = RadialGrid::logarithmic(0.01, 100.0, 60);
  for (double r : grid.nodes()) {
    CHECK_THAT(ac.f(r), WithinRel(h.f(r), 1e-8));
    CHECK_THAT(ac.a(r), WithinRel(h.a(r), 1e-8));
    CHECK_THAT(ac.phi(r), WithinAbs(std::log1p(r * r), 1e-8 * (1 + std::log1p(r * r))));
  }
}

TEST_CASE("Aharonov-Casher construction of the step field") {
  const RadialProfile B = RadialProfile::analytic("disk", {2.82}, [](double r) { return r <= 1.0 ? 2.82 : 0.0; }, {1.0});
  const ZeroMode ac = ac_construct(B, false);
  const ZeroMode ref = family_step(2.82, false);
  for (double r : {0.05, 0.5, 0.9, 1.5, 2.0, 10.0}) {
    CHECK_THAT(ac.a(r), WithinRel(ref.a(r), 1e-8));
    CHECK_THAT(ac.f(r), WithinRel(ref.f(r), 1e-8));
  }
}

TEST_CASE("fields with too little flux have no zero mode") {
  const RadialProfile zero = RadialProfile::analytic("0", {}, [](double) { return 0.0; });
  CHECK_THROWS_AS(ac_construct(zero, true), no_zero_mode_error);
  const RadialProfile weak = RadialProfile::analytic("weak", {}, [](double r) { return 1.0 / std::pow(1 + r * r, 2); });
  CHECK_THROWS_AS(ac_construct(weak, true), no_zero_mode_error);
}

TEST_CASE("constructed modes satisfy the Stokes and Laplace relations") {
  const auto grid = RadialGrid::logarithmic(0.01, 100.0, 41);
  for (const ZeroMode& m : {family_historical(), family_step(2.82), family_power(2.0, 1.5),
                            ac_construct(family_historical().B, true)}) {
    INFO(m.family);
    CHECK(stokes_defect(m, grid) <= 1e-8);
    CHECK(laplacian_defect(potential(m), grid) <= 1e-6);
  }
}

TEST_CASE("rescaling preserves norm and flux") {
  const ZeroMode h = family_historical();
  const ZeroMode same = rescale(h, 1.0);
  CHECK(same.f(0.7) == h.f(0.7));
  for (double n : {0.5, 2.0, 10.0}) {
    const ZeroMode s = rescale(h, n);
    CHECK_THAT(l2_norm_sq(s), WithinRel(1.0, 1e-10));
    CHECK_THAT(integrate_radial(s.B, 2) / (2 * pi), WithinRel(h.flux, 1e-10));
    CHECK_THAT(coulomb(s), WithinRel(n * pi / 2, 1e-10));
    CHECK(stokes_defect(s, RadialGrid::logarithmic(0.05, 20.0, 20)) <= 1e-8);
  }
  CHECK_THROWS_AS(rescale(h, 0.0), std::invalid_argument);
}

TEST_CASE("normalization is idempotent") {
  const ZeroMode s = family_step(3.5, false);
  const ZeroMode once = normalize(s), twice = normalize(once);
  CHECK_THAT(twice.f(0.4), WithinRel(once.f(0.4), 1e-12));
  CHECK_THAT(twice.amplitude, WithinRel(once.amplitude, 1e-12));
  CHECK_THAT(with_amplitude(once, 3.0).f(0.4), WithinRel(3.0 * once.f(0.4), 1e-15));
}

TEST_CASE("norms agree with the Gauss-Legendre oracle") {
  const ZeroMode p = family_power(2.0, 1.5, false);
  const double ref = oracle::radial([&](double r) { return p.f(r) * p.f(r); }, 2, -40.0, 12.0, 6000);
  CHECK_THAT(l2_norm_sq(p), WithinRel(ref, 1e-9));
}
