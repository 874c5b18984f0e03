#pragma once

// Derivative-free maximization (golden section, Nelder-Mead) and the K(b)
// scan over the unit-disk step field.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <vector>

#include "zmlab/errors.hpp"
#include "zmlab/functionals.hpp"
#include "zmlab/zero_mode.hpp"

namespace zmlab {

struct Max1D {
  double x = 0.0;
  double value = 0.0;
  int evaluations = 0;
};

inline Max1D golden_max(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-8) {
  if (!(lo < hi)) throw std::invalid_argument("golden_max: need lo < hi");
  if (!(tol > 0.0)) throw std::invalid_argument("golden_max: tol must be > 0");
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  int evals = 0;
  auto eval = [&](double x) {
    ++evals;
    const double v = f(x);
    if (!std::isfinite(v)) throw std::domain_error("golden_max: non-finite value inside the bracket");
    return v;
  };
  double a = lo, b = hi;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = eval(c), fd = eval(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = eval(d);
    }
  }
  const double x = 0.5 * (a + b);
  return {x, eval(x), evals};
}

struct NelderMeadOptions {
  double tol = 1e-6;        // stop when the simplex diameter falls below this
  int max_iters = 500;
  double initial_step = 0.25;
  double reflection = 1.0;
  double expansion = 2.0;
  double contraction = 0.5;
  double shrink = 0.5;
};

struct Max2D {
  std::array<double, 2> params{};
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Evaluations that raise divergence or domain errors count as -infinity.
inline double guarded(const std::function<double(std::array<double, 2>)>& f, const std::array<double, 2>& x) {
  try {
    const double v = f(x);
    return std::isnan(v) ? -inf : v;
  } catch (const divergence_error&) {
    return -inf;
  } catch (const std::domain_error&) {
    return -inf;
  } catch (const std::invalid_argument&) {
    return -inf;
  }
}

inline Max2D nelder_mead_max(const std::function<double(std::array<double, 2>)>& f, std::array<double, 2> init,
                             const NelderMeadOptions& o = {}) {
  using P = std::array<double, 2>;
  struct Vertex {
    P x;
    double v;
  };
  std::vector<Vertex> s{{init, 0.0}, {{init[0] + o.initial_step, init[1]}, 0.0}, {{init[0], init[1] + o.initial_step}, 0.0}};
  for (auto& vx : s) vx.v = guarded(f, vx.x);
  if (std::all_of(s.begin(), s.end(), [](const Vertex& vx) { return vx.v == -inf; }))
    throw std::domain_error("nelder_mead_max: every vertex of the initial simplex is infeasible");

  auto order = [&] { std::stable_sort(s.begin(), s.end(), [](const Vertex& a, const Vertex& b) { return a.v > b.v; }); };
  auto diameter = [&] {
    double d = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = i + 1; j < s.size(); ++j)
        d = std::max(d, std::hypot(s[i].x[0] - s[j].x[0], s[i].x[1] - s[j].x[1]));
    return d;
  };
  auto along = [](const P& c, const P& w, double t) { return P{c[0] + t * (c[0] - w[0]), c[1] + t * (c[1] - w[1])}; };

  Max2D out;
  order();
  int it = 0;
  for (; it < o.max_iters && diameter() >= o.tol; ++it) {
    const P c{0.5 * (s[0].x[0] + s[1].x[0]), 0.5 * (s[0].x[1] + s[1].x[1])};
    const P xr = along(c, s[2].x, o.reflection);
    const double fr = guarded(f, xr);
    if (fr > s[0].v) {
      const P xe = along(c, s[2].x, o.reflection * o.expansion);
      const double fe = guarded(f, xe);
      s[2] = fe > fr ? Vertex{xe, fe} : Vertex{xr, fr};
    } else if (fr > s[1].v) {
      s[2] = {xr, fr};
    } else {
      // outside contraction when the reflected point beats the worst vertex
      const bool outside = fr > s[2].v;
      const P xc = outside ? along(c, s[2].x, o.reflection * o.contraction) : along(c, s[2].x, -o.contraction);
      const double fc = guarded(f, xc);
      if (fc > (outside ? fr : s[2].v)) {
        s[2] = {xc, fc};
      } else {
        for (std::size_t k = 1; k < s.size(); ++k) {
          s[k].x = {s[0].x[0] + o.shrink * (s[k].x[0] - s[0].x[0]), s[0].x[1] + o.shrink * (s[k].x[1] - s[0].x[1])};
          s[k].v = guarded(f, s[k].x);
        }
      }
    }
    order();
  }
  out.params = s[0].x;
  out.value = s[0].v;
  out.iterations = it;
  out.converged = diameter() < o.tol;
  return out;
}

// ---------------------------------------------------------------------------

struct ScanRow {
  double b = 0.0;
  double coulomb = 0.0;
  double l2 = 0.0;
  double magnetic32 = 0.0;
  double kl_paper_form = 0.0;
  double kl_quadrature = 0.0;
  bool divergent = false;
};

struct ScanTable {
  double z = 1.0;
  std::vector<ScanRow> rows;
};

/// Worker count for parallel scans.
inline unsigned scan_threads() { return std::max(1u, std::min(8u, std::thread::hardware_concurrency())); }

/// Both K(b) forms on `steps` equally spaced b in [lo, hi]. The coulomb, l2
/// and magnetic columns are quadratures of the unit-amplitude mode.
inline ScanTable scan_step_family(double lo, double hi, int steps, double z = 1.0, const QuadratureOptions& opts = {}) {
  if (!(lo > 2.0 && lo < hi)) throw std::invalid_argument("scan_step_family: need 2 < lo < hi");
  if (steps < 10) throw std::invalid_argument("scan_step_family: steps must be >= 10");
  if (!(z > 0.0)) throw std::invalid_argument("scan_step_family: z must be > 0");
  ScanTable t;
  t.z = z;
  t.rows.resize(std::size_t(steps));
  auto work = [&](std::size_t i) {
    ScanRow& row = t.rows[i];
    row.b = i + 1 == t.rows.size() ? hi : lo + (hi - lo) * double(i) / double(steps - 1);
    row.kl_paper_form = z * step_closed_form(row.b).kl_paper_form;
    try {
      const FunctionalReport rep = evaluate(family_step(row.b, false, opts), opts);
      row.coulomb = rep.coulomb;
      row.l2 = rep.l2;
      row.magnetic32 = rep.magnetic;
      row.kl_quadrature = z * rep.kl_over_z;
    } catch (const divergence_error&) {
      row.divergent = true;
      row.coulomb = row.l2 = row.magnetic32 = row.kl_quadrature = std::numeric_limits<double>::quiet_NaN();
    }
  };
  const unsigned nt = scan_threads();
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < nt; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < t.rows.size(); i += nt) work(i);
    });
  for (auto& th : pool) th.join();
  return t;
}

struct ScanSummary {
  double argmax_paper_form = 0.0;
  double max_paper_form = 0.0;
  double argmax_quadrature = 0.0;
  double max_quadrature = 0.0;
  double max_relative_gap = 0.0;  // max over rows of |paper - quadrature| / paper
  int divergent_rows = 0;
};

inline ScanSummary summarize(const ScanTable& t) {
  ScanSummary s;
  s.max_paper_form = s.max_quadrature = -inf;
  for (const auto& r : t.rows) {
    if (r.kl_paper_form > s.max_paper_form) {
      s.max_paper_form = r.kl_paper_form;
      s.argmax_paper_form = r.b;
    }
    if (r.divergent) {
      ++s.divergent_rows;
      continue;
    }
    if (r.kl_quadrature > s.max_quadrature) {
      s.max_quadrature = r.kl_quadrature;
      s.argmax_quadrature = r.b;
    }
    s.max_relative_gap = std::max(s.max_relative_gap, std::abs(r.kl_paper_form - r.kl_quadrature) / r.kl_paper_form);
  }
  return s;
}

inline void write_scan_csv(std::ostream& os, const ScanTable& t) {
  os << "b,coulomb,l2,magnetic32,kl_paper_form,kl_quadrature\n";
  const auto old = os.precision(15);
  for (const auto& r : t.rows)
    os << r.b << ',' << r.coulomb << ',' << r.l2 << ',' << r.magnetic32 << ',' << r.kl_paper_form << ','
       << r.kl_quadrature << '\n';
  os.precision(old);
}

} // namespace zmlab
