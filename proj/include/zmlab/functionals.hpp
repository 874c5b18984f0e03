#pragma once

// Scalar functionals of a zero mode: Coulomb attraction, L^2 norm, L^p
// magnetic energy, the lower-bound functional K_l, the energy along the
// scaling sequence and the radial Euler-Lagrange residual.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "zmlab/radial.hpp"
#include "zmlab/zero_mode.hpp"

namespace zmlab {

struct FunctionalReport {
  double coulomb = 0.0;    // int |psi|^2 / |x|
  double l2 = 0.0;         // int |psi|^2
  double magnetic = 0.0;   // int |B|^p
  double p = 1.5;
  double kl_over_z = 0.0;  // coulomb / (magnetic_{3/2} * l2)
  double tol = 0.0;
  double inner_cutoff = 0.0;
};

inline double coulomb(const ZeroMode& mode, const QuadratureOptions& opts = {}) {
  return integrate_radial(mode.f.transform("f^2/r", [](double r, double v) { return v * v / r; }), 2, opts);
}

inline double l2_norm_sq(const ZeroMode& mode, const QuadratureOptions& opts = {}) {
  return l2_norm_sq_of(mode.f, opts);
}

inline double magnetic_energy(const ZeroMode& mode, double p, const QuadratureOptions& opts = {}) {
  if (!(p >= 1.0)) throw std::invalid_argument("magnetic_energy: p must be >= 1");
  return integrate_radial(mode.B.transform("|B|^p", [p](double, double v) { return std::pow(std::abs(v), p); }), 2,
                          opts);
}

/// z int|psi|^2/|x| / (int|B|^{3/2} int|psi|^2). Dividing by the L^2 norm
/// makes it independent of the spinor amplitude.
inline double kl(const ZeroMode& mode, double z = 1.0, const QuadratureOptions& opts = {}) {
  if (!(z > 0.0)) throw std::invalid_argument("kl: z must be > 0");
  const double mag = magnetic_energy(mode, 1.5, opts);
  return z * coulomb(mode, opts) / (mag * l2_norm_sq(mode, opts));
}

/// All functionals of the mode, reported per unit nuclear charge.
inline FunctionalReport evaluate(const ZeroMode& mode, const QuadratureOptions& opts = {}) {
  FunctionalReport rep;
  rep.magnetic = magnetic_energy(mode, 1.5, opts);
  rep.coulomb = coulomb(mode, opts);
  rep.l2 = l2_norm_sq(mode, opts);
  rep.kl_over_z = rep.coulomb / (rep.magnetic * rep.l2);
  rep.tol = opts.tol;
  rep.inner_cutoff = opts.inner_cutoff;
  return rep;
}

/// Energy of the n-th member of the scaling sequence built from a zero mode,
/// written with the exponents of the instability argument:
/// -n^2 z coulomb + n^{2p-1} K magnetic_p. This is n times the energy of
/// rescale(mode, n) evaluated directly; both have the same sign for every n.
inline double scaled_energy(const ZeroMode& mode, double z, double K, double p, double n,
                            const QuadratureOptions& opts = {}) {
  if (!(n > 0.0)) throw std::invalid_argument("scaled_energy: n must be > 0");
  return -n * n * z * coulomb(mode, opts) + std::pow(n, 2.0 * p - 1.0) * K * magnetic_energy(mode, p, opts);
}

struct ELCoefficients {
  double alpha = 0.0;  // 2 (int|B|^{3/2}) (int|psi|^2)
  double beta = 0.0;   // 2 (int|B|^{3/2}) (int|psi|^2/|x|)
  double gamma = 0.0;  // (3/2) (int|psi|^2/|x|) (int|psi|^2)
};

inline ELCoefficients el_coefficients(const ZeroMode& mode, const QuadratureOptions& opts = {}) {
  const double mag = magnetic_energy(mode, 1.5, opts);
  const double c = coulomb(mode, opts);
  const double n = l2_norm_sq(mode, opts);
  return {2.0 * mag * n, 2.0 * mag * c, 1.5 * c * n};
}

struct ELOptions {
  double inner_cutoff = 1e-3;     // the norm integrates over r >= inner_cutoff
  double exclusion = 1e-3;        // half-width of the window dropped around each kink of B
};

struct ELResidual {
  ELCoefficients coefficients;
  RadialProfile residual;
  double norm = 0.0;               // (int R(r)^2 r dr)^{1/2} over the admitted radii
  double inner_cutoff = 0.0;
  std::vector<double> excluded;    // centres of the excluded windows
  std::vector<std::string> warnings;
};

/// Radial Euler-Lagrange residual
///   R(r) = alpha f^2/r - beta f^2 + gamma (d2 sqrt|B| + (1/r) d sqrt|B|).
/// R vanishes inside the exclusion windows around kinks of B.
inline ELResidual el_residual(const ZeroMode& mode, const QuadratureOptions& opts = {}, const ELOptions& el = {}) {
  ELResidual out;
  out.coefficients = el_coefficients(mode, opts);
  out.inner_cutoff = el.inner_cutoff;
  const RadialProfile root = mode.B.transform("sqrt|B|", [](double, double v) { return std::sqrt(std::abs(v)); });
  const RadialProfile d1 = differentiate(root, 1);
  const RadialProfile d2 = differentiate(root, 2);
  std::vector<double> kinks(mode.B.breakpoints().begin(), mode.B.breakpoints().end());
  std::vector<double> edges;
  for (double k : kinks) {
    out.excluded.push_back(k);
    out.warnings.push_back("sqrt|B| is not differentiable at r = " + std::to_string(k) +
                           "; excluded window of half-width " + std::to_string(el.exclusion));
    edges.push_back(k - el.exclusion);
    edges.push_back(k + el.exclusion);
  }
  const ELCoefficients c = out.coefficients;
  const RadialProfile f = mode.f;
  const double w = el.exclusion;
  out.residual = RadialProfile::analytic(
      "EL residual", mode.parameters,
      [=](double r) {
        for (double k : kinks)
          if (std::abs(r - k) < w) return 0.0;
        const double f2 = f(r) * f(r);
        return c.alpha * f2 / r - c.beta * f2 + c.gamma * (d2(r) + d1(r) / r);
      },
      edges);
  // R carries numerical second derivatives, so its square is only smooth to
  // roughly 1e-8 relative; a fixed composite Simpson rule in log r is steadier
  // here than adaptive quadrature, which chases the differentiation noise.
  const double lo = std::max({opts.inner_cutoff, el.inner_cutoff, mode.B.support_lo()});
  const double hi = std::min(mode.B.support_hi(), 1e6);
  std::vector<double> cuts{std::log(lo)};
  for (double e : edges)
    if (e > lo && e < hi) cuts.push_back(std::log(e));
  cuts.push_back(std::log(hi));
  std::sort(cuts.begin(), cuts.end());
  double sq = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i], b = cuts[i + 1];
    if (b <= a) continue;
    const int n = 2 * std::max(8, static_cast<int>(std::ceil((b - a) / 0.004 / 2.0)));
    const double h = (b - a) / n;
    double acc = 0.0;
    for (int k = 0; k <= n; ++k) {
      const double t = a + k * h;
      // keep the endpoints strictly inside the panel so the exclusion windows stay excluded
      const double r = std::exp(k == 0 ? t + 1e-12 : (k == n ? t - 1e-12 : t));
      const double v = out.residual(r);
      const double w = (k == 0 || k == n) ? 1.0 : (k % 2 ? 4.0 : 2.0);
      acc += w * v * v * r * r;
    }
    sq += acc * h / 3.0;
  }
  out.norm = std::sqrt(sq);
  return out;
}

/// Closed forms for the unit-disk step field with spinor amplitude 1.
/// `l2_paper` carries pi exp(-b/2)/(b-2) for the outer part, as in the
/// symbolic evaluation that accompanies the K(b) curve; direct integration of
/// the displayed spinor gives twice that (`l2_quadrature`).
struct StepClosedForm {
  double b = 0.0;
  double coulomb = 0.0;
  double l2_quadrature = 0.0;
  double l2_paper = 0.0;
  double magnetic32 = 0.0;
  double kl_paper_form = 0.0;
  double kl_quadrature = 0.0;
};

inline StepClosedForm step_closed_form(double b) {
  if (!(b > 2.0)) throw no_zero_mode_error("step_closed_form: need b > 2");
  StepClosedForm s;
  s.b = b;
  const double e = std::exp(-0.5 * b);
  s.coulomb = pi * std::sqrt(2.0 * pi / b) * zmlab::erf(std::sqrt(0.5 * b)) + 2.0 * pi * e / (b - 1.0);
  s.l2_quadrature = 2.0 * pi / b * (1.0 - e) + 2.0 * pi * e / (b - 2.0);
  s.l2_paper = 2.0 * pi / b * (1.0 - e) + pi * e / (b - 2.0);
  s.magnetic32 = pi * std::pow(b, 1.5);
  s.kl_paper_form = s.coulomb / (s.magnetic32 * s.l2_paper);
  s.kl_quadrature = s.coulomb / (s.magnetic32 * s.l2_quadrature);
  return s;
}

/// One row of a cutoff-sensitivity study: the magnetic energy is integrated
/// over r >= cutoff only.
struct CutoffRow {
  double cutoff = 0.0;
  std::optional<double> magnetic32;
  std::optional<double> kl_over_z;
};

inline std::vector<CutoffRow> cutoff_sensitivity(const ZeroMode& mode, const std::vector<double>& cutoffs,
                                                 const QuadratureOptions& opts = {}) {
  std::vector<CutoffRow> rows;
  const double c = coulomb(mode, opts);
  const double n = l2_norm_sq(mode, opts);
  for (double cut : cutoffs) {
    CutoffRow row;
    row.cutoff = cut;
    QuadratureOptions o = opts;
    o.inner_cutoff = cut;
    try {
      row.magnetic32 = magnetic_energy(mode, 1.5, o);
      row.kl_over_z = c / (*row.magnetic32 * n);
    } catch (const divergence_error&) {
    }
    rows.push_back(row);
  }
  return rows;
}

} // namespace zmlab
