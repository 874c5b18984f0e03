#pragma once

// Cartesian-grid checks of radial zero modes: the Dirac-Weyl residual, the
// improved diamagnetic inequality and the 4x4 projector used to prove it.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "zmlab/radial.hpp"
#include "zmlab/zero_mode.hpp"

namespace zmlab {

using cplx = std::complex<double>;

/// Samples on the square [-L, L]^2 with M x M nodes, node (i, j) at
/// x = (-L + i h, -L + j h), stored row-major in j.
struct PlanarFieldSet {
  double L = 0.0;
  int M = 0;
  double h = 0.0;
  std::vector<cplx> psi1, psi2;
  std::vector<double> A1, A2, B;
  std::vector<double> exclusion_radii;  // nodes with |r - radius| < 2h are left out of every check

  std::size_t index(int i, int j) const { return std::size_t(j) * std::size_t(M) + std::size_t(i); }
  double coord(int i) const { return -L + i * h; }

  /// Interior node that is not inside an exclusion band.
  bool admitted(int i, int j) const {
    if (i < 1 || j < 1 || i > M - 2 || j > M - 2) return false;
    const double r = std::hypot(coord(i), coord(j));
    for (double c : exclusion_radii)
      if (std::abs(r - c) < 2.0 * h) return false;
    return true;
  }
};

namespace detail {

inline void check_grid(double L, int M) {
  if (!(L > 0.0)) throw std::invalid_argument("planar grid: L must be > 0");
  if (M < 65 || M % 2 == 0) throw std::invalid_argument("planar grid: M must be odd and >= 65");
}

// Radii below this are treated as the origin when evaluating profiles.
inline constexpr double origin_radius = 1e-12;

} // namespace detail

/// psi = (0, f), A = a(r) (-x2, x1)/r, B = B(r) from arbitrary radial
/// profiles. Empty profiles for a or B stand for zero.
inline PlanarFieldSet sample_profiles(const RadialProfile& f, const RadialProfile& a, const RadialProfile& B, double L,
                                      int M, std::vector<double> exclusion_radii = {}) {
  detail::check_grid(L, M);
  PlanarFieldSet fs;
  fs.L = L;
  fs.M = M;
  fs.h = 2.0 * L / (M - 1);
  const std::size_t n = std::size_t(M) * std::size_t(M);
  fs.psi1.assign(n, cplx{});
  fs.psi2.assign(n, cplx{});
  fs.A1.assign(n, 0.0);
  fs.A2.assign(n, 0.0);
  fs.B.assign(n, 0.0);
  fs.exclusion_radii = std::move(exclusion_radii);
  const int c = (M - 1) / 2;
  try {
    for (int j = 0; j < M; ++j) {
      for (int i = 0; i < M; ++i) {
        const std::size_t k = fs.index(i, j);
        const bool origin = (i == c && j == c);
        const double x1 = origin ? 0.0 : fs.coord(i), x2 = origin ? 0.0 : fs.coord(j);
        const double r = origin ? detail::origin_radius : std::hypot(x1, x2);
        fs.psi2[k] = f(r);
        if (!a.empty() && !origin) {
          const double ar = a(r) / r;
          fs.A1[k] = -ar * x2;
          fs.A2[k] = ar * x1;
        }
        if (!B.empty()) fs.B[k] = B(r);
      }
    }
  } catch (const std::out_of_range& e) {
    throw std::invalid_argument(std::string("planar sample: profile not evaluable on [0, sqrt(2) L]: ") + e.what());
  }
  return fs;
}

/// Kinks of an analytic B; a sampled profile lists every node, which says
/// nothing about regularity.
inline std::vector<double> kinks_of(const ZeroMode& mode) {
  if (mode.B.is_sampled()) return {};
  return {mode.B.breakpoints().begin(), mode.B.breakpoints().end()};
}

inline PlanarFieldSet sample(const ZeroMode& mode, double L, int M) {
  return sample_profiles(mode.f, mode.a, mode.B, L, M, kinks_of(mode));
}

/// Same spinor, opposite vector potential and field.
inline PlanarFieldSet negate_potential(PlanarFieldSet fs) {
  for (auto& v : fs.A1) v = -v;
  for (auto& v : fs.A2) v = -v;
  for (auto& v : fs.B) v = -v;
  return fs;
}

/// A -> A + grad(c x1), psi -> exp(-i c x1) psi.
inline PlanarFieldSet gauge_shift(PlanarFieldSet fs, double c) {
  for (int j = 0; j < fs.M; ++j)
    for (int i = 0; i < fs.M; ++i) {
      const std::size_t k = fs.index(i, j);
      const cplx phase = std::polar(1.0, -c * fs.coord(i));
      fs.psi1[k] *= phase;
      fs.psi2[k] *= phase;
      fs.A1[k] += c;
    }
  return fs;
}

namespace detail {

// (p_k + A_k) psi at an interior node by a central difference whose two
// neighbours are transported with link phases exp(+-i int A_k) (trapezoid
// rule along the link). This makes the stencil exactly gauge covariant and
// still second order.
struct Covariant {
  cplx d1_up, d1_dn, d2_up, d2_dn;  // (p1+A1) psi1, (p1+A1) psi2, (p2+A2) psi1, (p2+A2) psi2
};

inline Covariant covariant(const PlanarFieldSet& fs, int i, int j) {
  const double h = fs.h;
  const std::size_t k = fs.index(i, j);
  const std::size_t e = fs.index(i + 1, j), w = fs.index(i - 1, j);
  const std::size_t nn = fs.index(i, j + 1), s = fs.index(i, j - 1);
  const cplx ue = std::polar(1.0, 0.5 * h * (fs.A1[k] + fs.A1[e]));
  const cplx uw = std::polar(1.0, -0.5 * h * (fs.A1[k] + fs.A1[w]));
  const cplx un = std::polar(1.0, 0.5 * h * (fs.A2[k] + fs.A2[nn]));
  const cplx us = std::polar(1.0, -0.5 * h * (fs.A2[k] + fs.A2[s]));
  const cplx mi_over = cplx(0.0, -1.0) / (2.0 * h);
  return {mi_over * (ue * fs.psi1[e] - uw * fs.psi1[w]), mi_over * (ue * fs.psi2[e] - uw * fs.psi2[w]),
          mi_over * (un * fs.psi1[nn] - us * fs.psi1[s]), mi_over * (un * fs.psi2[nn] - us * fs.psi2[s])};
}

// sigma1 D1 psi + sigma2 D2 psi
inline std::array<cplx, 2> pauli_at(const Covariant& d) {
  const cplx I(0.0, 1.0);
  return {d.d1_dn - I * d.d2_dn, d.d1_up + I * d.d2_up};
}

inline double modulus(const PlanarFieldSet& fs, std::size_t k) {
  return std::sqrt(std::norm(fs.psi1[k]) + std::norm(fs.psi2[k]));
}

} // namespace detail

/// Discrete L^2 norm of sigma.(p + A) psi over the admitted nodes.
inline double pauli_residual(const PlanarFieldSet& fs) {
  detail::check_grid(fs.L, fs.M);
  double acc = 0.0;
  for (int j = 1; j < fs.M - 1; ++j)
    for (int i = 1; i < fs.M - 1; ++i) {
      if (!fs.admitted(i, j)) continue;
      const auto r = detail::pauli_at(detail::covariant(fs, i, j));
      acc += std::norm(r[0]) + std::norm(r[1]);
    }
  return std::sqrt(acc) * fs.h;
}

/// Discrete L^2 norm of grad psi (plain central differences) over the
/// admitted nodes; the scale the residual is compared against.
inline double gradient_norm(const PlanarFieldSet& fs) {
  double acc = 0.0;
  const double s = 1.0 / (2.0 * fs.h);
  for (int j = 1; j < fs.M - 1; ++j)
    for (int i = 1; i < fs.M - 1; ++i) {
      if (!fs.admitted(i, j)) continue;
      const std::size_t e = fs.index(i + 1, j), w = fs.index(i - 1, j);
      const std::size_t n = fs.index(i, j + 1), so = fs.index(i, j - 1);
      acc += std::norm(s * (fs.psi1[e] - fs.psi1[w])) + std::norm(s * (fs.psi2[e] - fs.psi2[w])) +
             std::norm(s * (fs.psi1[n] - fs.psi1[so])) + std::norm(s * (fs.psi2[n] - fs.psi2[so]));
    }
  return std::sqrt(acc) * fs.h;
}

struct SlackResult {
  double min_slack = 0.0;
  int argmin_i = -1, argmin_j = -1;
  std::vector<double> field;  // NaN at nodes that are not admitted
};

/// s = |(p + A) psi|^2 - 2 |grad |psi||^2 at every admitted node.
inline SlackResult diamagnetic_slack(const PlanarFieldSet& fs) {
  SlackResult out;
  out.field.assign(fs.psi1.size(), std::numeric_limits<double>::quiet_NaN());
  out.min_slack = inf;
  const double s = 1.0 / (2.0 * fs.h);
  for (int j = 1; j < fs.M - 1; ++j)
    for (int i = 1; i < fs.M - 1; ++i) {
      if (!fs.admitted(i, j)) continue;
      const auto d = detail::covariant(fs, i, j);
      const double kinetic = std::norm(d.d1_up) + std::norm(d.d1_dn) + std::norm(d.d2_up) + std::norm(d.d2_dn);
      const double g1 = s * (detail::modulus(fs, fs.index(i + 1, j)) - detail::modulus(fs, fs.index(i - 1, j)));
      const double g2 = s * (detail::modulus(fs, fs.index(i, j + 1)) - detail::modulus(fs, fs.index(i, j - 1)));
      const double v = kinetic - 2.0 * (g1 * g1 + g2 * g2);
      out.field[fs.index(i, j)] = v;
      if (v < out.min_slack) {
        out.min_slack = v;
        out.argmin_i = i;
        out.argmin_j = j;
      }
    }
  return out;
}

inline void write_slack_csv(std::ostream& os, const PlanarFieldSet& fs, const SlackResult& slack) {
  os << "x1,x2,slack\n";
  os.precision(12);
  for (int j = 0; j < fs.M; ++j)
    for (int i = 0; i < fs.M; ++i) {
      const double v = slack.field[fs.index(i, j)];
      if (std::isnan(v)) continue;
      os << fs.coord(i) << ',' << fs.coord(j) << ',' << v << '\n';
    }
}

/// Discrete sides of int |sigma.(p+A)psi|^2 = int |(p+A)psi|^2 + int B <psi, sigma3 psi>.
/// Boundary terms are not included, so spinors that have not decayed at
/// the edge of the box leave a defect of that size.
struct EnergyIdentity {
  double pauli = 0.0;
  double kinetic = 0.0;
  double field_term = 0.0;
  double defect = 0.0;  // pauli - kinetic - field_term
};

inline EnergyIdentity energy_identity(const PlanarFieldSet& fs) {
  EnergyIdentity e;
  const double h2 = fs.h * fs.h;
  for (int j = 1; j < fs.M - 1; ++j)
    for (int i = 1; i < fs.M - 1; ++i) {
      if (!fs.admitted(i, j)) continue;
      const std::size_t k = fs.index(i, j);
      const auto d = detail::covariant(fs, i, j);
      const auto r = detail::pauli_at(d);
      e.pauli += (std::norm(r[0]) + std::norm(r[1])) * h2;
      e.kinetic += (std::norm(d.d1_up) + std::norm(d.d1_dn) + std::norm(d.d2_up) + std::norm(d.d2_dn)) * h2;
      e.field_term += fs.B[k] * (std::norm(fs.psi1[k]) - std::norm(fs.psi2[k])) * h2;
    }
  e.defect = e.pauli - e.kinetic - e.field_term;
  return e;
}

// ---------------------------------------------------------------------------
// The projector on R^2 (x) C^2, coordinates (u1 xi1, u1 xi2, u2 xi1, u2 xi2).

using Vec4 = std::array<cplx, 4>;

struct ProjectorMatrix {
  std::array<std::array<cplx, 4>, 4> m{};

  static ProjectorMatrix standard() {
    const cplx I(0.0, 1.0);
    ProjectorMatrix p;
    p.m = {{{0.5, 0.0, -0.5 * I, 0.0}, {0.0, 0.5, 0.0, 0.5 * I}, {0.5 * I, 0.0, 0.5, 0.0}, {0.0, -0.5 * I, 0.0, 0.5}}};
    return p;
  }

  Vec4 apply(const Vec4& v) const {
    Vec4 out{};
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) out[r] += m[r][c] * v[c];
    return out;
  }

  ProjectorMatrix operator*(const ProjectorMatrix& o) const {
    ProjectorMatrix p;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c)
        for (int k = 0; k < 4; ++k) p.m[r][c] += m[r][k] * o.m[k][c];
    return p;
  }

  ProjectorMatrix adjoint() const {
    ProjectorMatrix p;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) p.m[r][c] = std::conj(m[c][r]);
    return p;
  }

  double max_abs_diff(const ProjectorMatrix& o) const {
    double d = 0.0;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) d = std::max(d, std::abs(m[r][c] - o.m[r][c]));
    return d;
  }
};

inline Vec4 tensor(const std::array<double, 2>& u, const std::array<cplx, 2>& xi) {
  return {u[0] * xi[0], u[0] * xi[1], u[1] * xi[0], u[1] * xi[1]};
}

inline double norm_sq(const Vec4& v) {
  double s = 0.0;
  for (const auto& c : v) s += std::norm(c);
  return s;
}

struct ProjectorReport {
  double idempotency = 0.0;  // max |P^2 - P|
  double hermiticity = 0.0;  // max |P - P^dagger|
  double half_norm = 0.0;    // max | |P(u (x) xi)|^2 - |u|^2 |xi|^2 / 2 | over all pairs
  int pairs = 0;
  std::uint64_t seed = 0;
};

inline constexpr std::uint64_t default_projector_seed = 20240531;

/// Uniform double in [0, 1) from the top 53 bits, so the sequence does not
/// depend on the standard library's distribution implementation.
inline double unit_uniform(std::mt19937_64& rng) { return double(rng() >> 11) * 0x1.0p-53; }

inline ProjectorReport projector_checks(int random_pairs = 100, std::uint64_t seed = default_projector_seed) {
  const ProjectorMatrix P = ProjectorMatrix::standard();
  ProjectorReport rep;
  rep.seed = seed;
  rep.idempotency = (P * P).max_abs_diff(P);
  rep.hermiticity = P.adjoint().max_abs_diff(P);

  std::vector<std::pair<std::array<double, 2>, std::array<cplx, 2>>> cases{
      {{1.0, 0.0}, {1.0, 0.0}},
      {{0.0, 1.0}, {1.0, 0.0}},
      {{1.0, 0.0}, {0.0, 1.0}},
      {{0.0, 1.0}, {cplx(0.0, 1.0), 0.0}},
  };
  std::mt19937_64 rng(seed);
  for (int k = 0; k < random_pairs; ++k) {
    const double th = 2.0 * pi * unit_uniform(rng);
    const double eta = 0.5 * pi * unit_uniform(rng);
    const double mu1 = 2.0 * pi * unit_uniform(rng), mu2 = 2.0 * pi * unit_uniform(rng);
    cases.push_back({{std::cos(th), std::sin(th)}, {std::polar(std::cos(eta), mu1), std::polar(std::sin(eta), mu2)}});
  }
  for (const auto& [u, xi] : cases) {
    const double expect = 0.5 * (u[0] * u[0] + u[1] * u[1]) * (std::norm(xi[0]) + std::norm(xi[1]));
    rep.half_norm = std::max(rep.half_norm, std::abs(norm_sq(P.apply(tensor(u, xi))) - expect));
  }
  rep.pairs = int(cases.size());
  return rep;
}

/// max over admitted nodes of |P v - v| / |v| with v = ((p+A)_k psi)_k, the
/// covariant gradient arranged on R^2 (x) C^2. Zero modes have v in the
/// range of P, up to discretization error.
inline double projector_defect(const PlanarFieldSet& fs) {
  const ProjectorMatrix P = ProjectorMatrix::standard();
  double worst = 0.0;
  for (int j = 1; j < fs.M - 1; ++j)
    for (int i = 1; i < fs.M - 1; ++i) {
      if (!fs.admitted(i, j)) continue;
      const auto d = detail::covariant(fs, i, j);
      const Vec4 v{d.d1_up, d.d1_dn, d.d2_up, d.d2_dn};
      const double nv = norm_sq(v);
      if (nv < 1e-20) continue;
      const Vec4 pv = P.apply(v);
      Vec4 diff;
      for (int c = 0; c < 4; ++c) diff[c] = pv[c] - v[c];
      worst = std::max(worst, std::sqrt(norm_sq(diff) / nv));
    }
  return worst;
}

} // namespace zmlab
