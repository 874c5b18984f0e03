#include <catch_amalgamated.hpp>

#include <sstream>

#include "zmlab/optimize.hpp"

using namespace zmlab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("golden section finds the maximum of a parabola") {
  for (double c : {0.1, 1.0, 2.0, 4.9}) {
    const auto r = golden_max([c](double x) { return -(x - c) * (x - c); }, 0.0, 5.0, 1e-8);
    CHECK_THAT(r.x, WithinAbs(c, 1e-8));
  }
  CHECK_THROWS_AS(golden_max([](double) { return 0.0; }, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(golden_max([](double x) { return x > 2.0 ? NAN : x; }, 0.0, 5.0), std::domain_error);
}

TEST_CASE("Nelder-Mead") {
  auto bowl = [](std::array<double, 2> x) { return -(x[0] - 1) * (x[0] - 1) - (x[1] - 2) * (x[1] - 2); };
  const Max2D r = nelder_mead_max(bowl, {0.0, 0.0});
  CHECK(r.converged);
  CHECK_THAT(r.params[0], WithinAbs(1.0, 1e-5));
  CHECK_THAT(r.params[1], WithinAbs(2.0, 1e-5));

  const Max2D again = nelder_mead_max(bowl, {0.0, 0.0});
  CHECK(again.params == r.params);
  CHECK(again.iterations == r.iterations);

  const Max2D flat = nelder_mead_max([](std::array<double, 2>) { return 1.0; }, {0.3, -0.7});
  CHECK(flat.converged);
  CHECK(flat.params == std::array<double, 2>{0.3, -0.7});

  // infeasible region treated as -infinity
  auto walled = [&](std::array<double, 2> x) {
    if (x[0] > 1.5) throw divergence_error("wall", 0.0, 1.0);
    return bowl(x);
  };
  const Max2D w = nelder_mead_max(walled, {1.4, 2.0}, {1e-7, 1000, 1.0});
  CHECK(w.value > -1e-9);

  CHECK_THROWS_AS(nelder_mead_max([](std::array<double, 2>) -> double { throw std::domain_error("no"); }, {0.0, 0.0}),
                  std::domain_error);
}

TEST_CASE("Nelder-Mead over the power family with an inner cutoff") {
  QuadratureOptions o;
  o.inner_cutoff = 1e-6;
  auto f = [o](std::array<double, 2> x) { return kl(family_power(x[0], x[1], false, o), 1.0, o); };
  const Max2D r = nelder_mead_max(f, {2.0, 1.0}, {1e-4, 300});
  CHECK(std::isfinite(r.value));
  CHECK(r.value >= f({2.0, 1.0}));
}

TEST_CASE("step-field scan") {
  const ScanTable t = scan_step_family(2.05, 6.0, 400);
  REQUIRE(t.rows.size() == 400);
  for (std::size_t i = 1; i < t.rows.size(); ++i) CHECK(t.rows[i].b > t.rows[i - 1].b);
  CHECK(t.rows.front().b == 2.05);
  CHECK(t.rows.back().b == 6.0);

  for (const auto& r : t.rows) {
    CHECK_FALSE(r.divergent);
    CHECK_THAT(r.kl_quadrature, WithinAbs(kl(family_step(r.b)), 1e-10));
  }

  const ScanTable exact = scan_step_family(2.82, 4.0, 10);
  CHECK_THAT(exact.rows.front().kl_paper_form, WithinAbs(0.1307, 1e-4));
  CHECK_THAT(exact.rows.front().kl_quadrature, WithinAbs(0.0963, 1e-4));
  CHECK(exact.rows.back().kl_paper_form < exact.rows.front().kl_paper_form);

  const ScanSummary s = summarize(t);
  CHECK(s.argmax_paper_form > 2.7);
  CHECK(s.argmax_paper_form < 2.95);
  CHECK(s.max_paper_form > 0.128);
  CHECK(s.max_paper_form < 0.133);
  CHECK(s.max_relative_gap > 0.2);

  // golden section against the dense scan
  const auto g = golden_max([](double b) { return kl(family_step(b, false)); }, 2.05, 6.0, 1e-6);
  CHECK_THAT(g.x, WithinAbs(s.argmax_quadrature, (6.0 - 2.05) / 399));
  CHECK(g.value >= s.max_quadrature - 1e-12);

  CHECK_THROWS_AS(scan_step_family(2.0, 6.0, 100), std::invalid_argument);
  CHECK_THROWS_AS(scan_step_family(2.5, 6.0, 9), std::invalid_argument);
}

TEST_CASE("scan CSV layout") {
  std::ostringstream os;
  write_scan_csv(os, scan_step_family(2.5, 5.0, 10));
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "b,coulomb,l2,magnetic32,kl_paper_form,kl_quadrature");
  int rows = 0;
  while (std::getline(is, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 5);
  }
  CHECK(rows == 10);
}
