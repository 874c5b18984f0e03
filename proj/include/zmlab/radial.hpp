#pragma once

// Radial grids, radial profiles, quadrature over R^N for radially symmetric
// integrands, numerical differentiation and the error function.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "zmlab/errors.hpp"

namespace zmlab {

inline constexpr double pi = std::numbers::pi;
inline constexpr double inf = std::numeric_limits<double>::infinity();

class RadialGrid {
public:
  static constexpr std::size_t min_count = 16;

  explicit RadialGrid(std::vector<double> nodes) : nodes_(std::move(nodes)) {
    if (nodes_.size() < min_count)
      throw std::invalid_argument("RadialGrid: need at least 16 nodes");
    if (!(nodes_.front() > 0.0))
      throw std::invalid_argument("RadialGrid: the origin is never a node (nodes[0] must be > 0)");
    for (std::size_t i = 1; i < nodes_.size(); ++i)
      if (!(nodes_[i] > nodes_[i - 1]))
        throw std::invalid_argument("RadialGrid: nodes must be strictly increasing");
  }

  static RadialGrid logarithmic(double r_min, double r_max, std::size_t count) {
    if (!(r_min > 0.0) || !(r_max > r_min))
      throw std::invalid_argument("RadialGrid::logarithmic: need 0 < r_min < r_max");
    std::vector<double> nodes(count);
    const double t0 = std::log(r_min), dt = (std::log(r_max) - t0) / double(count - 1);
    for (std::size_t i = 0; i < count; ++i) nodes[i] = std::exp(t0 + dt * double(i));
    nodes.back() = r_max;
    return RadialGrid(std::move(nodes));
  }

  static RadialGrid uniform(double r_min, double r_max, std::size_t count) {
    if (!(r_max > r_min)) throw std::invalid_argument("RadialGrid::uniform: need r_min < r_max");
    std::vector<double> nodes(count);
    const double dr = (r_max - r_min) / double(count - 1);
    for (std::size_t i = 0; i < count; ++i) nodes[i] = r_min + dr * double(i);
    return RadialGrid(std::move(nodes));
  }

  std::span<const double> nodes() const noexcept { return nodes_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  double front() const noexcept { return nodes_.front(); }
  double back() const noexcept { return nodes_.back(); }
  double operator[](std::size_t i) const { return nodes_[i]; }

private:
  std::vector<double> nodes_;
};

namespace detail {

// Cubic Lagrange interpolation through the four nodes surrounding r.
inline double lagrange4(std::span<const double> x, std::span<const double> y, double r) {
  const std::size_t n = x.size();
  auto it = std::upper_bound(x.begin(), x.end(), r);
  std::size_t hi = std::size_t(it - x.begin());
  std::size_t start = hi >= 2 ? hi - 2 : 0;
  start = std::min(start, n - 4);
  double sum = 0.0;
  for (std::size_t i = start; i < start + 4; ++i) {
    double w = 1.0;
    for (std::size_t j = start; j < start + 4; ++j)
      if (j != i) w *= (r - x[j]) / (x[i] - x[j]);
    sum += w * y[i];
  }
  return sum;
}

// Derivative of order 1 or 2 at x[k] of the Lagrange polynomial through
// five neighbouring nodes (one-sided at the ends).
inline double lagrange5_derivative(std::span<const double> x, std::span<const double> y, std::size_t k, int order) {
  const std::size_t n = x.size();
  std::size_t start = k >= 2 ? k - 2 : 0;
  start = std::min(start, n - 5);
  const double xk = x[k];
  double sum = 0.0;
  for (std::size_t i = start; i < start + 5; ++i) {
    // l_i(x) = prod_{j != i} (x - x_j) / (x_i - x_j); differentiate the numerator.
    double denom = 1.0;
    for (std::size_t j = start; j < start + 5; ++j)
      if (j != i) denom *= x[i] - x[j];
    double numer = 0.0;
    if (order == 1) {
      for (std::size_t m = start; m < start + 5; ++m) {
        if (m == i) continue;
        double p = 1.0;
        for (std::size_t j = start; j < start + 5; ++j)
          if (j != i && j != m) p *= xk - x[j];
        numer += p;
      }
    } else {
      for (std::size_t m = start; m < start + 5; ++m) {
        if (m == i) continue;
        for (std::size_t l = start; l < start + 5; ++l) {
          if (l == i || l == m) continue;
          double p = 1.0;
          for (std::size_t j = start; j < start + 5; ++j)
            if (j != i && j != m && j != l) p *= xk - x[j];
          numer += p;
        }
      }
    }
    sum += numer / denom * y[i];
  }
  return sum;
}

} // namespace detail

/// A scalar function of the radius. Either a named closed form with
/// parameters (evaluable at any r > 0 inside its support) or values sampled
/// on a RadialGrid with cubic interpolation between nodes.
class RadialProfile {
public:
  using function_type = std::function<double(double)>;

  RadialProfile() = default;

  static RadialProfile analytic(std::string name, std::vector<double> parameters, function_type fn,
                                std::vector<double> breakpoints = {}, double support_lo = 0.0,
                                double support_hi = inf) {
    if (!fn) throw std::invalid_argument("RadialProfile::analytic: empty function");
    RadialProfile p;
    p.name_ = std::move(name);
    p.parameters_ = std::move(parameters);
    p.fn_ = std::move(fn);
    std::sort(breakpoints.begin(), breakpoints.end());
    breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());
    p.breakpoints_ = std::move(breakpoints);
    p.support_lo_ = support_lo;
    p.support_hi_ = support_hi;
    return p;
  }

  static RadialProfile sampled(RadialGrid grid, std::vector<double> values, std::string name = "sampled") {
    if (values.size() != grid.size())
      throw std::invalid_argument("RadialProfile::sampled: one value per grid node required");
    RadialProfile p;
    p.name_ = std::move(name);
    auto data = std::make_shared<Samples>(Samples{std::move(grid), std::move(values)});
    p.samples_ = data;
    p.fn_ = [data](double r) {
      const auto x = data->grid.nodes();
      if (r < x.front() || r > x.back())
        throw std::out_of_range("sampled RadialProfile evaluated outside its grid");
      return detail::lagrange4(x, data->values, r);
    };
    p.support_lo_ = data->grid.front();
    p.support_hi_ = data->grid.back();
    p.breakpoints_.assign(data->grid.nodes().begin(), data->grid.nodes().end());
    return p;
  }

  double operator()(double r) const { return fn_(r); }

  bool is_sampled() const noexcept { return samples_ != nullptr; }
  bool empty() const noexcept { return !fn_; }
  const std::string& name() const noexcept { return name_; }
  std::span<const double> parameters() const noexcept { return parameters_; }
  /// Radii where the profile (or one of its derivatives) may jump.
  std::span<const double> breakpoints() const noexcept { return breakpoints_; }
  double support_lo() const noexcept { return support_lo_; }
  double support_hi() const noexcept { return support_hi_; }

  const RadialGrid& grid() const {
    if (!samples_) throw std::logic_error("RadialProfile: analytic profile has no grid");
    return samples_->grid;
  }
  std::span<const double> values() const {
    if (!samples_) throw std::logic_error("RadialProfile: analytic profile has no samples");
    return samples_->values;
  }

  /// r -> value_factor * p(arg_factor * r)
  RadialProfile scaled(double arg_factor, double value_factor, std::string name) const {
    auto fn = fn_;
    std::vector<double> bps;
    bps.reserve(breakpoints_.size());
    for (double b : breakpoints_) bps.push_back(b / arg_factor);
    std::vector<double> params = parameters_;
    return analytic(
        std::move(name), std::move(params),
        [fn, arg_factor, value_factor](double r) { return value_factor * fn(arg_factor * r); },
        std::move(bps), support_lo_ / arg_factor, support_hi_ / arg_factor);
  }

  /// Pointwise map r -> op(p(r)), keeping support and breakpoints.
  template <class Op>
  RadialProfile transform(std::string name, Op op) const {
    auto fn = fn_;
    std::vector<double> bps(breakpoints_.begin(), breakpoints_.end());
    return analytic(
        std::move(name), parameters_, [fn, op](double r) { return op(r, fn(r)); }, std::move(bps),
        support_lo_, support_hi_);
  }

private:
  struct Samples {
    RadialGrid grid;
    std::vector<double> values;
  };

  std::string name_;
  std::vector<double> parameters_;
  function_type fn_;
  std::vector<double> breakpoints_;
  double support_lo_ = 0.0;
  double support_hi_ = inf;
  std::shared_ptr<const Samples> samples_;
};

struct QuadratureOptions {
  double tol = 1e-10;          // relative
  double inner_cutoff = 0.0;   // integrate over r >= inner_cutoff
  double outer_cutoff = inf;   // ... and r <= outer_cutoff
};

/// Surface area of the unit sphere S^{N-1}: 2 for N = 1, 2pi, 4pi, ...
inline double unit_sphere_area(int N) {
  if (N < 1) throw std::invalid_argument("unit_sphere_area: N must be >= 1");
  return 2.0 * std::pow(pi, 0.5 * N) / std::tgamma(0.5 * N);
}

namespace detail {

struct Panel {
  double value = 0.0;
  double l1 = 0.0;
  double gmax = 0.0;
  double err = 0.0;
};

template <class G>
Panel integrate_panel(const G& g, double a, double b, double tol, double partial) {
  Panel p;
  double err = 0.0;
  auto tracked = [&](double t) {
    const double v = g(t);
    p.gmax = std::max(p.gmax, std::abs(v));
    return v;
  };
  p.value = boost::math::quadrature::gauss_kronrod<double, 21>::integrate(tracked, a, b, 15, tol, &err, &p.l1);
  if (!std::isfinite(p.value))
    throw divergence_error("radial quadrature: non-finite panel sum", partial, inf);
  p.err = err;
  return p;
}

// Integrates g(t) over [t_lo, t_hi] (either end may be infinite) by unit
// panels grown outward from a core window. A side stops when the integrand
// has fallen below 1e-18 of the running maximum, when the panel increments
// have become an exact geometric sequence (power-law tail in r, added in
// closed form), or when it reaches its finite end. Runs of non-decreasing
// increments signal divergence.
template <class G>
double integrate_window(const G& g, double t_lo, double t_hi, std::vector<double> interior, double t_bound,
                        double tol) {
  constexpr int divergence_streak = 40;
  constexpr double truncation = 1e-18;
  constexpr double geometric_match = 1e-9;

  double c_lo = -2.0, c_hi = 2.0;
  for (double t : interior) {
    c_lo = std::min(c_lo, std::floor(t));
    c_hi = std::max(c_hi, std::ceil(t));
  }
  c_lo = std::max(c_lo, -t_bound);
  c_hi = std::min(c_hi, t_bound);
  if (std::isfinite(t_lo) && t_lo > c_hi) { c_lo = t_lo; c_hi = std::isfinite(t_hi) ? std::min(t_hi, t_lo + 4.0) : t_lo + 4.0; }
  if (std::isfinite(t_hi) && t_hi < c_lo) { c_hi = t_hi; c_lo = std::isfinite(t_lo) ? std::max(t_lo, t_hi - 4.0) : t_hi - 4.0; }
  c_lo = std::max(c_lo, t_lo);
  c_hi = std::min(c_hi, t_hi);

  std::vector<double> cuts;
  for (double k = std::ceil(c_lo); k <= c_hi; k += 1.0) cuts.push_back(k);
  for (double t : interior)
    if (t > c_lo && t < c_hi) cuts.push_back(t);
  cuts.push_back(c_lo);
  cuts.push_back(c_hi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(), [](double a, double b) { return std::abs(a - b) < 1e-12; }),
             cuts.end());

  double total = 0.0, running_max = 0.0, err_sum = 0.0, l1_sum = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const Panel p = integrate_panel(g, cuts[i], cuts[i + 1], tol, total);
    total += p.value;
    err_sum += p.err;
    l1_sum += p.l1;
    running_max = std::max(running_max, p.gmax);
  }

  auto extend = [&](double edge, double end, double direction) {
    double prev = std::numeric_limits<double>::quiet_NaN();
    double prev_ratio = std::numeric_limits<double>::quiet_NaN();
    int streak = 0;
    while (direction > 0 ? edge < end : edge > end) {
      if (std::abs(edge) >= t_bound)
        throw divergence_error("radial quadrature: truncation window exhausted", total,
                               std::isfinite(prev_ratio) ? prev_ratio : 1.0);
      double next = edge + direction;
      next = direction > 0 ? std::min({next, end, t_bound}) : std::max({next, end, -t_bound});
      const Panel p = direction > 0 ? integrate_panel(g, edge, next, tol, total)
                                    : integrate_panel(g, next, edge, tol, total);
      total += p.value;
      err_sum += p.err;
      l1_sum += p.l1;
      running_max = std::max(running_max, p.gmax);
      const double ratio = (std::isfinite(prev) && prev != 0.0) ? p.value / prev : std::numeric_limits<double>::quiet_NaN();
      if (std::isfinite(prev) && std::abs(p.value) >= std::abs(prev) * (1.0 - geometric_match) &&
          std::abs(p.value) > tol * std::abs(total))
        ++streak;
      else
        streak = 0;
      if (streak >= divergence_streak)
        throw divergence_error("radial quadrature: divergence suspected (increments not decreasing)", total, ratio);
      edge = next;
      if (p.gmax <= truncation * running_max) break;
      // the closed-form tail amplifies ratio errors by 1/(1 - ratio)
      if (std::isfinite(ratio) && std::isfinite(prev_ratio) && ratio > 0.0 && ratio < 1.0 - 1e-6 &&
          std::abs(ratio - prev_ratio) <= geometric_match * (1.0 - ratio) && std::isinf(end)) {
        total += p.value * ratio / (1.0 - ratio);
        break;
      }
      prev = p.value;
      prev_ratio = ratio;
    }
  };
  extend(c_hi, t_hi, +1.0);
  extend(c_lo, t_lo, -1.0);
  // Panels are judged together: a panel carrying a negligible share of the
  // mass may keep a large relative error without harming the sum.
  if (err_sum > 10.0 * tol * l1_sum && err_sum > 1e-300)
    throw divergence_error("radial quadrature: subdivision budget exhausted", total, 1.0);
  return total;
}

} // namespace detail

/// Omega_{N-1} * integral_0^inf f(r) r^{N-1} dr, computed in the variable
/// t = log r so that f is never evaluated at r = 0. Throws divergence_error
/// when the integral does not settle.
inline double integrate_radial(const RadialProfile& f, int N, const QuadratureOptions& opts = {}) {
  if (N < 1) throw std::invalid_argument("integrate_radial: dimension must be >= 1");
  if (!(opts.tol >= 1e-14 && opts.tol <= 1e-4))
    throw std::invalid_argument("integrate_radial: tol must lie in [1e-14, 1e-4]");
  const double lo = std::max(f.support_lo(), opts.inner_cutoff);
  const double hi = std::min(f.support_hi(), opts.outer_cutoff);
  if (!(hi > lo)) return 0.0;

  const double t_lo = lo > 0.0 ? std::log(lo) : -inf;
  const double t_hi = std::isfinite(hi) ? std::log(hi) : inf;
  const double t_bound = 700.0 / double(N);
  std::vector<double> interior;
  for (double b : f.breakpoints())
    if (b > lo && b < hi) interior.push_back(std::log(b));

  const double omega = unit_sphere_area(N);
  auto g = [&f, N](double t) {
    const double v = f(std::exp(t));
    if (v == 0.0) return 0.0;
    return v * std::exp(double(N) * t);
  };
  return omega * detail::integrate_window(g, t_lo, t_hi, std::move(interior), t_bound, opts.tol);
}

namespace detail {

// Ridders' extrapolation of central differences (first or second order).
template <class F>
double ridders(const F& f, double x, double h, int order) {
  constexpr int ntab = 12;
  constexpr double con = 1.4, con2 = con * con, safe = 2.0;
  auto stencil = [&](double step) {
    if (order == 1) return (f(x + step) - f(x - step)) / (2.0 * step);
    return (f(x + step) - 2.0 * f(x) + f(x - step)) / (step * step);
  };
  double a[ntab][ntab];
  double err = std::numeric_limits<double>::max();
  double ans = 0.0;
  a[0][0] = stencil(h);
  ans = a[0][0];
  for (int i = 1; i < ntab; ++i) {
    h /= con;
    a[0][i] = stencil(h);
    double fac = con2;
    for (int j = 1; j <= i; ++j) {
      a[j][i] = (a[j - 1][i] * fac - a[j - 1][i - 1]) / (fac - 1.0);
      fac *= con2;
      const double errt = std::max(std::abs(a[j][i] - a[j - 1][i]), std::abs(a[j][i] - a[j - 1][i - 1]));
      if (errt <= err) {
        err = errt;
        ans = a[j][i];
      }
    }
    if (std::abs(a[i][i] - a[i - 1][i - 1]) >= safe * err) break;
  }
  return ans;
}

} // namespace detail

/// Derivative of order 1 or 2. Analytic profiles are differentiated with
/// Ridders-extrapolated central differences whose stencil never reaches the
/// origin or a breakpoint; sampled profiles use five-point Lagrange stencils
/// on their grid (at least 32 nodes).
inline RadialProfile differentiate(const RadialProfile& f, int order) {
  if (order != 1 && order != 2) throw std::invalid_argument("differentiate: order must be 1 or 2");
  const std::string name = (order == 1 ? "d/dr " : "d2/dr2 ") + f.name();
  if (f.is_sampled()) {
    if (f.grid().size() < 32) throw std::invalid_argument("differentiate: grid too coarse (need >= 32 nodes)");
    const auto x = f.grid().nodes();
    const auto y = f.values();
    std::vector<double> d(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) d[k] = detail::lagrange5_derivative(x, y, k, order);
    return RadialProfile::sampled(f.grid(), std::move(d), name);
  }
  std::vector<double> bps(f.breakpoints().begin(), f.breakpoints().end());
  const double lo = f.support_lo();
  return RadialProfile::analytic(
      name, std::vector<double>(f.parameters().begin(), f.parameters().end()),
      [f, bps, lo, order](double r) {
        double h = 0.1 * r;
        h = std::min(h, 0.5 * (r - lo));
        for (double b : bps)
          if (b != r) h = std::min(h, 0.5 * std::abs(r - b));
        if (!(h > 0.0)) h = 1e-3 * std::max(r, 1e-300);
        return detail::ridders(f, r, h, order);
      },
      bps, f.support_lo(), f.support_hi());
}

/// Error function.
inline double erf(double x) { return std::erf(x); }

} // namespace zmlab
