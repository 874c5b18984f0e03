#include <catch_amalgamated.hpp>

#include "zmlab/inequalities.hpp"

using namespace zmlab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
TestFunction gaussian(double s = 0.5) {
  return {RadialProfile::analytic("g", {}, [s](double r) { return std::exp(-s * r * r); }),
          RadialProfile::analytic("dg", {}, [s](double r) { return -2 * s * r * std::exp(-s * r * r); })};
}
TestFunction exponential() {
  return {RadialProfile::analytic("e", {}, [](double r) { return std::exp(-r); })};
}
} // namespace

TEST_CASE("generating lemma: saturating cases") {
  const auto heis = lemma_check(gaussian(), weight_for(InequalityKind::heisenberg), 2);
  CHECK_THAT(heis.lhs, WithinRel(pi * pi, 1e-9));
  CHECK_THAT(heis.rhs, WithinRel(pi * pi, 1e-9));
  const auto hyd = lemma_check(exponential(), weight_for(InequalityKind::hydrogen), 2);
  CHECK_THAT(hyd.lhs, WithinRel(pi * pi / 4, 1e-8));
  CHECK_THAT(hyd.rhs, WithinRel(pi * pi / 4, 1e-8));
}

TEST_CASE("generating lemma: strict case and homogeneity") {
  const auto w = weight_for(InequalityKind::lin_sobolev);
  const auto s = lemma_check(gaussian(1.0), w, 3);
  CHECK(s.slack > 1e-3);
  for (double c : {0.5, 3.0}) {
    const TestFunction scaled{gaussian(1.0).psi.scaled(1.0, c, "cg")};
    const auto t = lemma_check(scaled, w, 3);
    CHECK_THAT(t.lhs, WithinRel(std::pow(c, 4) * s.lhs, 1e-8));
    CHECK_THAT(t.rhs, WithinRel(std::pow(c, 4) * s.rhs, 1e-8));
  }
}

TEST_CASE("named inequalities") {
  const auto hyd = named_inequality(InequalityKind::hydrogen, exponential(), 2);
  CHECK_THAT(hyd.lhs, WithinRel(1.0, 1e-6));
  CHECK_THAT(hyd.rhs, WithinRel(1.0, 1e-6));
  for (int N : {1, 2, 3}) {
    const auto h = named_inequality(InequalityKind::heisenberg, gaussian(), N);
    CHECK_THAT(h.lhs, WithinRel(N * N / 4.0, 1e-9));
    CHECK_THAT(h.rhs, WithinRel(N * N / 4.0, 1e-15));
  }
  const auto hardy = named_inequality(InequalityKind::hardy, exponential(), 3);
  // normalized e^{-r} in 3D: int|grad|^2 = 1, int psi^2/r^2 = 2
  CHECK_THAT(hardy.lhs, WithinRel(1.0, 1e-8));
  CHECK_THAT(hardy.rhs, WithinRel(0.5, 1e-8));
  const auto ls = named_inequality(InequalityKind::lin_sobolev, gaussian(), 3);
  CHECK(ls.slack > 0.0);

  CHECK_THROWS_AS(named_inequality(InequalityKind::hardy, exponential(), 2), std::invalid_argument);
  CHECK_THROWS_AS(named_inequality(InequalityKind::lin_sobolev, exponential(), 2), std::invalid_argument);
  CHECK_THROWS_AS(named_inequality(InequalityKind::hydrogen, exponential(), 1), std::invalid_argument);
}

TEST_CASE("named inequalities ignore the amplitude") {
  const TestFunction big{exponential().psi.scaled(1.0, 5.0, "5e")};
  const auto a = named_inequality(InequalityKind::hydrogen, exponential(), 3);
  const auto b = named_inequality(InequalityKind::hydrogen, big, 3);
  CHECK_THAT(b.lhs, WithinRel(a.lhs, 1e-9));
  CHECK_THAT(b.rhs, WithinRel(a.rhs, 1e-9));
}

TEST_CASE("optimal lambda") {
  const auto one = weight_for(InequalityKind::heisenberg);
  CHECK_THAT(optimal_lambda(gaussian(), one, 2), WithinRel(1.0, 1e-9));
  // psi(c r) has lambda* scaled by c^2
  for (double c : {0.5, 2.0}) {
    auto family = [](double k) {
      return TestFunction{RadialProfile::analytic("e", {k}, [k](double r) { return std::exp(-k * r) * (1 + k * r); }),
                          RadialProfile::analytic("de", {k}, [k](double r) { return -k * k * r * std::exp(-k * r); })};
    };
    const TestFunction tc = family(c), t1 = family(1.0);
    CHECK_THAT(optimal_lambda(tc, one, 3), WithinRel(c * c * optimal_lambda(t1, one, 3), 1e-8));
  }
  const TestFunction zero{RadialProfile::analytic("0", {}, [](double) { return 0.0; })};
  CHECK_THROWS_AS(optimal_lambda(zero, one, 2), std::domain_error);
}

TEST_CASE("quadratic form at the optimal lambda reproduces the slack") {
  for (auto kind : {InequalityKind::heisenberg, InequalityKind::hydrogen, InequalityKind::lin_sobolev}) {
    const auto w = weight_for(kind);
    const TestFunction tf = linear_exponential(0.4, 0.9, 1.3);
    const int N = 3;
    const auto s = lemma_check(tf, w, N);
    const double lam = optimal_lambda(tf, w, N);
    const double I2 = integrate_radial(tf.psi.transform("m", [G = w.G](double r, double v) { return r * r * G(r) * G(r) * v * v; }), N);
    CHECK_THAT(lambda_quadratic(tf, w, N, lam) * I2, WithinAbs(s.slack, 1e-8 * std::max(1.0, s.lhs)));
    // the optimum is a minimum
    CHECK(lambda_quadratic(tf, w, N, lam * 1.1) > lambda_quadratic(tf, w, N, lam));
  }
}

TEST_CASE("random test functions satisfy every named inequality") {
  const auto batch = random_batch(100);
  REQUIRE(batch.size() == 400);
  for (const auto& c : batch) {
    INFO(to_string(c.sides.kind) << " a=" << c.a << " b=" << c.b << " c=" << c.c);
    CHECK(c.pass);
    CHECK(c.sides.N == minimal_dimension(c.sides.kind));
  }
  const auto again = random_batch(100);
  CHECK(again.front().a == batch.front().a);
  CHECK(again.back().sides.slack == batch.back().sides.slack);
}

TEST_CASE("numerical and exact test-function derivatives agree") {
  const TestFunction exact = linear_exponential(0.3, 0.8, 1.1);
  const TestFunction numeric{exact.psi};
  const auto a = named_inequality(InequalityKind::hardy, exact, 3);
  const auto b = named_inequality(InequalityKind::hardy, numeric, 3);
  CHECK_THAT(b.lhs, WithinRel(a.lhs, 1e-7));
}

TEST_CASE("kind names round trip") {
  for (auto k : {InequalityKind::heisenberg, InequalityKind::hydrogen, InequalityKind::hardy,
                 InequalityKind::lin_sobolev, InequalityKind::general})
    CHECK(parse_inequality_kind(to_string(k)) == k);
  CHECK_THROWS_AS(parse_inequality_kind("sobolev"), std::invalid_argument);
}
