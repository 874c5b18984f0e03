#pragma once

// Radial zero modes of the two-dimensional Dirac-Weyl operator
// sigma.(p + A) with p = -i grad. Every mode here has the form
// psi = (0, f(|x|)), A = a(|x|) e_theta, curl A = B, with f = C exp(-phi),
// Laplacian(phi) = B and a = phi'.

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "zmlab/errors.hpp"
#include "zmlab/radial.hpp"

namespace zmlab {

struct ZeroMode {
  std::string family;
  std::vector<double> parameters;
  RadialProfile f;    // lower spinor component; the upper one is identically zero
  RadialProfile a;    // tangential vector potential magnitude, A = a(r) e_theta
  RadialProfile B;    // magnetic field
  RadialProfile phi;  // generating potential, Laplacian(phi) = B
  double flux = 0.0;  // (1/2pi) int B
  double amplitude = 1.0;
  bool normalized = false;
};

/// phi together with the field it was generated from.
struct PotentialProfile {
  RadialProfile phi;
  RadialProfile source;
};

inline PotentialProfile potential(const ZeroMode& mode) { return {mode.phi, mode.B}; }

inline double l2_norm_sq_of(const RadialProfile& f, const QuadratureOptions& opts = {}) {
  return integrate_radial(f.transform("f^2", [](double, double v) { return v * v; }), 2, opts);
}

/// Multiplies the spinor by c.
inline ZeroMode with_amplitude(ZeroMode mode, double c) {
  mode.f = mode.f.scaled(1.0, c, mode.f.name());
  mode.amplitude *= c;
  if (c != 1.0) mode.normalized = false;
  return mode;
}

/// Rescales f so that 2pi int f^2 r dr = 1.
inline ZeroMode normalize(ZeroMode mode, const QuadratureOptions& opts = {}) {
  const double norm_sq = l2_norm_sq_of(mode.f, opts);
  mode = with_amplitude(std::move(mode), 1.0 / std::sqrt(norm_sq));
  mode.normalized = true;
  return mode;
}

namespace detail {

// Tables of the enclosed flux M(r) = int_0^r B(s) s ds and of phi on a fine
// logarithmic grid, interpolated by cubic Hermite polynomials whose slopes
// are known exactly (M' = B r, phi' = M / r). Power laws continue the tables
// below the first and beyond the last node.
class PotentialTables {
public:
  PotentialTables(const RadialProfile& B, double flux, double t_min = -23.0, double t_max = 23.0,
                  double dt = 0.01)
      : flux_(flux) {
    const double r_lo = std::exp(t_min), r_hi = std::exp(t_max);
    std::vector<double> bps;
    for (double b : B.breakpoints())
      if (b > r_lo && b < r_hi) bps.push_back(b);
    for (double t = t_min; t <= t_max + 1e-12; t += dt) {
      const double r = std::exp(t);
      bool near = false;
      for (double b : bps) near = near || std::abs(r - b) < 1e-9 * b;
      if (!near) r_.push_back(r);
    }
    r_.insert(r_.end(), bps.begin(), bps.end());
    std::sort(r_.begin(), r_.end());

    const std::size_t n = r_.size();
    using gk = boost::math::quadrature::gauss_kronrod<double, 21>;
    auto below = [](double x) { return std::nextafter(x, 0.0); };
    auto above = [](double x) { return std::nextafter(x, inf); };

    QuadratureOptions head;
    head.tol = 1e-13;
    head.outer_cutoff = r_.front();
    M_.resize(n);
    M_[0] = integrate_radial(B, 2, head) / (2.0 * pi);
    slope_right_.resize(n);  // M' at the left end of interval i, from inside
    slope_left_.resize(n);   // M' at the right end of interval i-1, from inside
    for (std::size_t i = 0; i < n; ++i) {
      slope_right_[i] = B(above(r_[i])) * r_[i];
      slope_left_[i] = B(below(r_[i])) * r_[i];
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double piece =
          gk::integrate([&B](double s) { return B(s) * s; }, r_[i], r_[i + 1], 10, 1e-14);
      M_[i + 1] = M_[i] + piece;
    }

    const double b_lo = B(r_.front());
    kappa_ = (M_[0] > 0.0 && b_lo > 0.0) ? r_.front() * r_.front() * b_lo / M_[0] : 2.0;
    if (!(kappa_ > 0.0) || !std::isfinite(kappa_)) kappa_ = 2.0;
    const double deficit = flux_ - M_.back();
    const double b_hi = B(r_.back());
    lambda_ = (deficit > 0.0 && b_hi > 0.0) ? r_.back() * r_.back() * b_hi / deficit : 0.0;

    phi_.resize(n);
    phi_[0] = M_[0] / kappa_;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double piece = gk::integrate([this, i](double s) { return hermite_M(i, s) / s; }, r_[i], r_[i + 1], 10,
                                         1e-14);
      phi_[i + 1] = phi_[i] + piece;
    }
  }

  double enclosed(double r) const {
    if (r <= r_.front()) return M_.front() * std::pow(r / r_.front(), kappa_);
    if (r >= r_.back()) {
      if (lambda_ > 0.0) return flux_ - (flux_ - M_.back()) * std::pow(r_.back() / r, lambda_);
      return M_.back();
    }
    return hermite_M(interval(r), r);
  }

  double phi(double r) const {
    if (r <= r_.front()) return phi_.front() * std::pow(r / r_.front(), kappa_);
    if (r >= r_.back()) {
      const double x = std::log(r / r_.back());
      if (lambda_ > 0.0) {
        const double deficit = flux_ - M_.back();
        return phi_.back() + flux_ * x - deficit / lambda_ * (1.0 - std::pow(r_.back() / r, lambda_));
      }
      return phi_.back() + M_.back() * x;
    }
    const std::size_t i = interval(r);
    const double x0 = r_[i], x1 = r_[i + 1], h = x1 - x0;
    return hermite(phi_[i], M_[i] / x0, phi_[i + 1], M_[i + 1] / x1, h, (r - x0) / h);
  }

private:
  static double hermite(double y0, double m0, double y1, double m1, double h, double s) {
    const double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * h * m0 + (-2 * s3 + 3 * s2) * y1 + (s3 - s2) * h * m1;
  }

  std::size_t interval(double r) const {
    auto it = std::upper_bound(r_.begin(), r_.end(), r);
    std::size_t hi = std::size_t(it - r_.begin());
    return std::min(hi == 0 ? 0 : hi - 1, r_.size() - 2);
  }

  double hermite_M(std::size_t i, double r) const {
    const double x0 = r_[i], x1 = r_[i + 1], h = x1 - x0;
    return hermite(M_[i], slope_right_[i], M_[i + 1], slope_left_[i + 1], h, (r - x0) / h);
  }

  double flux_;
  double kappa_ = 2.0;
  double lambda_ = 0.0;
  std::vector<double> r_, M_, slope_right_, slope_left_, phi_;
};

} // namespace detail

/// Aharonov-Casher construction with constant polynomial factor: from a
/// radial field B builds phi with phi'(r) = (1/r) int_0^r B(s) s ds,
/// a = phi' and f = exp(-phi).
inline ZeroMode ac_construct(const RadialProfile& B, bool normalize_mode, const QuadratureOptions& opts = {}) {
  const double flux = integrate_radial(B, 2, opts) / (2.0 * pi);
  if (!(flux > 1.0))
    throw no_zero_mode_error("ac_construct: flux " + std::to_string(flux) +
                             " <= 1 admits no square-integrable zero mode");
  auto tables = std::make_shared<const detail::PotentialTables>(B, flux);
  std::vector<double> bps(B.breakpoints().begin(), B.breakpoints().end());

  ZeroMode mode;
  mode.family = "ac(" + B.name() + ")";
  mode.parameters.assign(B.parameters().begin(), B.parameters().end());
  mode.B = B;
  mode.flux = flux;
  mode.phi = RadialProfile::analytic("phi", mode.parameters, [tables](double r) { return tables->phi(r); }, bps);
  mode.a = RadialProfile::analytic("a", mode.parameters, [tables](double r) { return tables->enclosed(r) / r; }, bps);
  mode.f = RadialProfile::analytic("f", mode.parameters, [tables](double r) { return std::exp(-tables->phi(r)); }, bps);
  mode.amplitude = 1.0;
  if (normalize_mode) mode = normalize(std::move(mode), opts);
  return mode;
}

/// psi = (1/sqrt(pi)) (0, 1/(1+r^2)), A = 2r/(1+r^2) e_theta, B = 4/(1+r^2)^2.
inline ZeroMode family_historical() {
  const double c = 1.0 / std::sqrt(pi);
  ZeroMode m;
  m.family = "historical";
  m.f = RadialProfile::analytic("historical f", {}, [c](double r) { return c / (1.0 + r * r); });
  m.a = RadialProfile::analytic("historical a", {}, [](double r) { return 2.0 * r / (1.0 + r * r); });
  m.B = RadialProfile::analytic("historical B", {}, [](double r) {
    const double d = 1.0 + r * r;
    return 4.0 / (d * d);
  });
  m.phi = RadialProfile::analytic("historical phi", {}, [](double r) { return std::log1p(r * r); });
  m.flux = 2.0;
  m.amplitude = c;
  m.normalized = true;
  return m;
}

/// f = C (1 + r^beta)^(-alpha), i.e. phi = alpha log(1 + r^beta).
inline ZeroMode family_power(double alpha, double beta, bool normalize_mode = true, const QuadratureOptions& opts = {}) {
  if (!(alpha > 0.0) || !(beta > 0.0)) throw std::invalid_argument("family_power: need alpha > 0 and beta > 0");
  if (!(alpha * beta > 1.0))
    throw no_zero_mode_error("family_power: alpha*beta <= 1, the spinor is not square-integrable");
  ZeroMode m;
  m.family = "power";
  m.parameters = {alpha, beta};
  m.phi = RadialProfile::analytic("power phi", m.parameters,
                                  [alpha, beta](double r) { return alpha * std::log1p(std::pow(r, beta)); });
  m.f = RadialProfile::analytic("power f", m.parameters,
                                [alpha, beta](double r) { return std::exp(-alpha * std::log1p(std::pow(r, beta))); });
  m.a = RadialProfile::analytic("power a", m.parameters, [alpha, beta](double r) {
    const double rb = std::pow(r, beta);
    return alpha * beta * rb / (r * (1.0 + rb));
  });
  m.B = RadialProfile::analytic("power B", m.parameters, [alpha, beta](double r) {
    const double rb = std::pow(r, beta);
    const double d = 1.0 + rb;
    return alpha * beta * beta * rb / (r * r * d * d);
  });
  m.flux = alpha * beta;
  m.amplitude = 1.0;
  if (normalize_mode) m = normalize(std::move(m), opts);
  return m;
}

/// Constant field b on the unit disk.
inline ZeroMode family_step(double b, bool normalize_mode = true, const QuadratureOptions& opts = {}) {
  if (!(b > 2.0)) throw no_zero_mode_error("family_step: need b > 2 for a square-integrable mode");
  const std::vector<double> bp{1.0};
  ZeroMode m;
  m.family = "step";
  m.parameters = {b};
  m.f = RadialProfile::analytic(
      "step f", m.parameters,
      [b](double r) { return r <= 1.0 ? std::exp(-0.25 * b * r * r) : std::exp(-0.25 * b) * std::pow(r, -0.5 * b); },
      bp);
  m.a = RadialProfile::analytic(
      "step a", m.parameters, [b](double r) { return r <= 1.0 ? 0.5 * b * r : 0.5 * b / r; }, bp);
  m.B = RadialProfile::analytic("step B", m.parameters, [b](double r) { return r <= 1.0 ? b : 0.0; }, bp);
  m.phi = RadialProfile::analytic(
      "step phi", m.parameters,
      [b](double r) { return r <= 1.0 ? 0.25 * b * r * r : 0.25 * b + 0.5 * b * std::log(r); }, bp);
  m.flux = 0.5 * b;
  m.amplitude = 1.0;
  if (normalize_mode) m = normalize(std::move(m), opts);
  return m;
}

/// psi_n(x) = n psi(n x), A_n(x) = n A(n x), B_n(x) = n^2 B(n x).
inline ZeroMode rescale(const ZeroMode& mode, double n) {
  if (!(n > 0.0)) throw std::invalid_argument("rescale: n must be > 0");
  ZeroMode m = mode;
  m.f = mode.f.scaled(n, n, mode.f.name());
  m.a = mode.a.scaled(n, n, mode.a.name());
  m.B = mode.B.scaled(n, n * n, mode.B.name());
  m.phi = mode.phi.scaled(n, 1.0, mode.phi.name());
  m.amplitude = mode.amplitude * n;
  return m;
}

/// max over the nodes of |r a(r) - int_0^r B(s) s ds|, the enclosed flux
/// taken by direct quadrature.
inline double stokes_defect(const ZeroMode& mode, const RadialGrid& grid) {
  double worst = 0.0;
  QuadratureOptions opts;
  opts.tol = 1e-12;
  for (double r : grid.nodes()) {
    opts.outer_cutoff = r;
    const double enclosed = integrate_radial(mode.B, 2, opts) / (2.0 * pi);
    worst = std::max(worst, std::abs(r * mode.a(r) - enclosed));
  }
  return worst;
}

/// max over the nodes of |phi'' + phi'/r - B| / |B|, skipping nodes within
/// `window` of a breakpoint. Where B vanishes the defect is absolute.
inline double laplacian_defect(const PotentialProfile& pot, const RadialGrid& grid, double window = 1e-3) {
  const RadialProfile d1 = differentiate(pot.phi, 1);
  const RadialProfile d2 = differentiate(pot.phi, 2);
  double worst = 0.0;
  for (double r : grid.nodes()) {
    bool skip = false;
    for (double b : pot.source.breakpoints()) skip = skip || std::abs(r - b) < window;
    const double src = pot.source(r);
    if (skip) continue;
    // measured against the largest term: far out phi'' and phi'/r nearly cancel
    const double u = d2(r), v = d1(r) / r;
    const double scale = std::max({std::abs(src), std::abs(u), std::abs(v)});
    worst = std::max(worst, std::abs(u + v - src) / (scale > 0.0 ? scale : 1.0));
  }
  return worst;
}

} // namespace zmlab
