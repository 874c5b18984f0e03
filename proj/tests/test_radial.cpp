#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "zmlab/radial.hpp"

using namespace zmlab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
RadialProfile fn(std::function<double(double)> f, std::vector<double> bps = {}) {
  return RadialProfile::analytic("test", {}, std::move(f), std::move(bps));
}
} // namespace

TEST_CASE("radial grid invariants") {
  CHECK_THROWS_AS(RadialGrid(std::vector<double>(15, 1.0)), std::invalid_argument);
  std::vector<double> with_origin(16);
  for (int i = 0; i < 16; ++i) with_origin[i] = i;
  CHECK_THROWS_AS(RadialGrid(with_origin), std::invalid_argument);
  std::vector<double> repeated(16);
  for (int i = 0; i < 16; ++i) repeated[i] = 1.0 + (i / 2);
  CHECK_THROWS_AS(RadialGrid(repeated), std::invalid_argument);

  const auto g = RadialGrid::logarithmic(1e-3, 1e3, 61);
  CHECK(g.size() == 61);
  CHECK(g.front() == Catch::Approx(1e-3));
  CHECK(g.back() == 1e3);
}

TEST_CASE("integrate_radial reproduces closed forms") {
  CHECK_THAT(integrate_radial(fn([](double r) { return std::exp(-r * r); }), 2), WithinRel(pi, 1e-10));
  CHECK_THAT(integrate_radial(fn([](double r) { return 4.0 / std::pow(1.0 + r * r, 2); }), 2), WithinRel(4 * pi, 1e-10));
  CHECK_THAT(integrate_radial(fn([](double r) { return 8.0 / std::pow(1.0 + r * r, 3); }), 2), WithinRel(4 * pi, 1e-10));
  CHECK_THAT(integrate_radial(fn([](double r) { return std::exp(-2.0 * r) / r; }), 2), WithinRel(pi, 1e-10));
  CHECK_THAT(integrate_radial(fn([](double r) { return std::exp(-r * r); }), 3), WithinRel(std::pow(pi, 1.5), 1e-10));
  CHECK_THAT(integrate_radial(fn([](double r) { return std::exp(-r * r); }), 1), WithinRel(std::sqrt(pi), 1e-10));
}

TEST_CASE("integrate_radial agrees with an independent Gauss-Legendre oracle") {
  const std::vector<std::function<double(double)>> cases{
      [](double r) { return r * r * std::exp(-r); },
      [](double r) { return 1.0 / ((1.0 + r * r) * (1.0 + r * r) * (1.0 + r)); },
      [](double r) { return std::exp(-r) / std::sqrt(r); },
      [](double r) { return std::pow(r, 0.3) / std::pow(1.0 + r, 5.5); },
  };
  for (const auto& f : cases)
    for (int N : {2, 3}) {
      const double ref = oracle::radial(f, N, -60.0, 13.0, 6000);
      CHECK_THAT(integrate_radial(fn(f), N), WithinRel(ref, 1e-9));
    }
}

TEST_CASE("integrate_radial honours breakpoints and cutoffs") {
  for (double R : {0.5, 1.0, 3.0}) {
    const auto disk = fn([R](double r) { return r <= R ? 1.0 : 0.0; }, {R});
    CHECK_THAT(integrate_radial(disk, 2), WithinRel(pi * R * R, 1e-10));
  }
  QuadratureOptions o;
  o.inner_cutoff = 1.0;
  o.outer_cutoff = 2.0;
  CHECK_THAT(integrate_radial(fn([](double) { return 1.0; }), 2, o), WithinRel(3 * pi, 1e-10));
}

TEST_CASE("integrate_radial is linear") {
  const auto f = fn([](double r) { return std::exp(-r * r); });
  const auto g = fn([](double r) { return 1.0 / std::pow(1.0 + r * r, 3); });
  const auto sum = fn([](double r) { return 2.0 * std::exp(-r * r) - 3.0 / std::pow(1.0 + r * r, 3); });
  const double lin = 2.0 * integrate_radial(f, 2) - 3.0 * integrate_radial(g, 2);
  CHECK_THAT(integrate_radial(sum, 2), WithinAbs(lin, 2e-10 * std::abs(lin) + 1e-14));
}

TEST_CASE("integrate_radial reports divergence with a partial sum") {
  const auto slow = fn([](double r) { return 1.0 / (r * r); });
  try {
    integrate_radial(slow, 2);
    FAIL("expected divergence");
  } catch (const divergence_error& e) {
    CHECK(e.partial_sum() > 0.0);
    CHECK(std::isfinite(e.last_increment_ratio()));
  }
  const auto singular = fn([](double r) { return 1.0 / (r * r * r); });
  CHECK_THROWS_AS(integrate_radial(singular, 2), divergence_error);
}

TEST_CASE("integrate_radial validates its tolerance") {
  QuadratureOptions o;
  o.tol = 1e-2;
  CHECK_THROWS_AS(integrate_radial(fn([](double r) { return std::exp(-r); }), 2, o), std::invalid_argument);
  CHECK_THROWS_AS(integrate_radial(fn([](double r) { return std::exp(-r); }), 0), std::invalid_argument);
}

TEST_CASE("differentiate matches exact derivatives") {
  const auto sq = differentiate(fn([](double r) { return r * r; }), 1);
  const auto lg = fn([](double r) { return std::log1p(r * r); });
  const auto d1 = differentiate(lg, 1), d2 = differentiate(lg, 2);
  const auto grid = RadialGrid::logarithmic(0.01, 100.0, 50);
  for (double r : grid.nodes()) {
    CHECK_THAT(sq(r), WithinRel(2 * r, 1e-6));
    CHECK_THAT(d1(r), WithinRel(2 * r / (1 + r * r), 1e-6));
    const double exact2 = 2 * (1 - r * r) / std::pow(1 + r * r, 2);
    CHECK_THAT(d2(r), WithinAbs(exact2, 1e-6 * std::abs(exact2) + 1e-12));
  }
  CHECK_THROWS_AS(differentiate(lg, 3), std::invalid_argument);
}

TEST_CASE("differentiate then integrate recovers the increment") {
  const auto f = fn([](double r) { return std::exp(-r) * std::sin(2 * r); });
  const auto d = differentiate(f, 1);
  const double a = 0.2, b = 3.7;
  // int_a^b f' dr written as a radial N = 1 integral over [a, b]
  QuadratureOptions o;
  o.inner_cutoff = a;
  o.outer_cutoff = b;
  const double inc = 0.5 * integrate_radial(d, 1, o);
  CHECK_THAT(inc, WithinAbs(f(b) - f(a), 1e-6));
}

TEST_CASE("sampled profiles interpolate and differentiate on their grid") {
  const auto grid = RadialGrid::logarithmic(0.05, 20.0, 400);
  std::vector<double> v;
  for (double r : grid.nodes()) v.push_back(std::exp(-0.5 * r * r));
  const auto p = RadialProfile::sampled(grid, v);
  CHECK_THAT(p(1.2345), WithinRel(std::exp(-0.5 * 1.2345 * 1.2345), 1e-6));
  CHECK_THROWS_AS(p(25.0), std::out_of_range);
  const auto d = differentiate(p, 1);
  CHECK_THAT(d(1.0), WithinRel(-std::exp(-0.5), 1e-5));

  const auto coarse = RadialGrid::logarithmic(0.1, 10.0, 20);
  const auto q = RadialProfile::sampled(coarse, std::vector<double>(20, 1.0));
  CHECK_THROWS_AS(differentiate(q, 1), std::invalid_argument);
}

TEST_CASE("erf agrees with its series") {
  CHECK(zmlab::erf(0.0) == 0.0);
  CHECK_THAT(zmlab::erf(1.0), WithinAbs(0.842700792949715, 1e-12));
  CHECK_THAT(zmlab::erf(6.0), WithinAbs(1.0, 1e-12));
  for (double x = -3.0; x <= 3.0; x += 0.125) CHECK_THAT(zmlab::erf(x), WithinAbs(oracle::erf_series(x), 1e-12));
}

TEST_CASE("unit sphere areas") {
  CHECK_THAT(unit_sphere_area(1), WithinRel(2.0, 1e-15));
  CHECK_THAT(unit_sphere_area(2), WithinRel(2 * pi, 1e-15));
  CHECK_THAT(unit_sphere_area(3), WithinRel(4 * pi, 1e-15));
}
