#pragma once

// Closed-form constants: Sobolev lower bounds from Lieb-Thirring constants,
// the upper bound on the critical coupling, the instability threshold, the
// 3D critical charge and the stability envelope g_p.

#include <cmath>
#include <stdexcept>

#include "zmlab/radial.hpp"

namespace zmlab {

inline constexpr double default_L2 = 0.09;
inline constexpr double default_L3 = 0.0135;
inline constexpr double default_fine_structure = 1.0 / 137.035999;

/// N^{N/(N-1)} / ((1+N)^{(N+1)/(N-1)} L_N^{2/(N-1)})
inline double sobolev_lower(int N, double LN) {
  if (N != 2 && N != 3) throw std::invalid_argument("sobolev_lower: N must be 2 or 3");
  if (!(LN > 0.0)) throw std::invalid_argument("sobolev_lower: L_N must be > 0");
  const double n = N;
  return std::pow(n, n / (n - 1.0)) / (std::pow(1.0 + n, (n + 1.0) / (n - 1.0)) * std::pow(LN, 2.0 / (n - 1.0)));
}

inline double kc_upper(double z, double S2) {
  if (!(S2 > 0.0)) throw std::invalid_argument("kc_upper: S2 must be > 0");
  return z / std::sqrt(2.0 * S2);
}

inline double ku(double z, double S2) {
  if (!(S2 > 0.0)) throw std::invalid_argument("ku: S2 must be > 0");
  return 2.0 * z / std::sqrt(S2);
}

/// (9/4) S3 / (8 pi alpha^2)
inline double zc_3d(double S3, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("zc_3d: need 0 < alpha < 1");
  if (!(S3 > 0.0)) throw std::invalid_argument("zc_3d: S3 must be > 0");
  return 2.25 * S3 / (8.0 * pi * alpha * alpha);
}

struct BoundInputs {
  double z = 1.0;
  double L2 = default_L2;
  double L3 = default_L3;
  double alpha = default_fine_structure;
};

struct BoundReport {
  BoundInputs inputs;
  double S2 = 0.0;
  double S3 = 0.0;
  double kc_upper_over_z = 0.0;
  double ku_over_z = 0.0;
  double zc3d = 0.0;
};

inline BoundReport bound_report(const BoundInputs& in = {}) {
  if (!(in.z > 0.0)) throw std::invalid_argument("bounds: z must be > 0");
  BoundReport r;
  r.inputs = in;
  r.S2 = sobolev_lower(2, in.L2);
  r.S3 = sobolev_lower(3, in.L3);
  r.kc_upper_over_z = kc_upper(1.0, r.S2);
  r.ku_over_z = ku(1.0, r.S2);
  r.zc3d = zc_3d(r.S3, in.alpha);
  return r;
}

/// f_p(alpha, x) = (1 - alpha) x^2 + C alpha^p x^{2p-2} - 2 z x
inline double stability_f(double p, double C, double z, double alpha, double x) {
  if (!(p > 1.0)) throw std::invalid_argument("stability_f: p must be > 1");
  const double ap = alpha == 0.0 ? 0.0 : std::pow(alpha, p);
  return (1.0 - alpha) * x * x + C * ap * std::pow(x, 2.0 * p - 2.0) - 2.0 * z * x;
}

/// Lower envelope of f_p(., x) over alpha in [0, 1]. Below the switch point
/// the minimizing alpha is interior and the minimum is
/// x^2 - C' x^{2/(p-1)} - 2 z x; above it alpha = 1 wins.
inline double stability_envelope(double p, double C, double z, double x) {
  if (!(p > 1.0)) throw std::invalid_argument("stability_envelope: p must be > 1");
  if (!(C > 0.0)) throw std::invalid_argument("stability_envelope: C must be > 0");
  if (!(x >= 0.0)) throw std::invalid_argument("stability_envelope: x must be >= 0");
  const double q = 1.0 / (p - 1.0);
  const double Cp = (p - 1.0) / (std::pow(p, p * q) * std::pow(C, q));
  if (std::pow(x, 2.0 * (2.0 - p)) <= p * C) return x * x - Cp * std::pow(x, 2.0 * q) - 2.0 * z * x;
  return C * std::pow(x, 2.0 * (p - 1.0)) - 2.0 * z * x;
}

} // namespace zmlab
