#pragma once

// Uncertainty-type inequalities for radial functions on R^N, all generated
// by one weighted inequality
//   (int |grad psi|^2)(int |x|^2 g^2 psi^2) >= (1/4)(int [N g + |x| G'] psi^2)^2,
// g(x) = G(|x|).

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "zmlab/radial.hpp"

namespace zmlab {

enum class InequalityKind { heisenberg, hydrogen, hardy, lin_sobolev, general };

inline std::string to_string(InequalityKind k) {
  switch (k) {
  case InequalityKind::heisenberg: return "heisenberg";
  case InequalityKind::hydrogen: return "hydrogen";
  case InequalityKind::hardy: return "hardy";
  case InequalityKind::lin_sobolev: return "lin_sobolev";
  case InequalityKind::general: return "general";
  }
  return "?";
}

inline InequalityKind parse_inequality_kind(const std::string& s) {
  for (auto k : {InequalityKind::heisenberg, InequalityKind::hydrogen, InequalityKind::hardy,
                 InequalityKind::lin_sobolev, InequalityKind::general})
    if (to_string(k) == s) return k;
  throw std::invalid_argument("unknown inequality kind: " + s);
}

/// Smallest dimension for which the kind holds.
inline int minimal_dimension(InequalityKind k) {
  switch (k) {
  case InequalityKind::heisenberg: return 1;
  case InequalityKind::hydrogen: return 2;
  case InequalityKind::hardy:
  case InequalityKind::lin_sobolev: return 3;
  case InequalityKind::general: return 2;
  }
  return 2;
}

/// A radial test function with an optional exact derivative; without one
/// the derivative is taken numerically.
struct TestFunction {
  RadialProfile psi;
  RadialProfile dpsi;

  RadialProfile derivative() const { return dpsi.empty() ? differentiate(psi, 1) : dpsi; }
};

/// A weight G with an optional exact derivative.
struct Weight {
  RadialProfile G;
  RadialProfile dG;

  RadialProfile derivative() const { return dG.empty() ? differentiate(G, 1) : dG; }
};

struct InequalitySides {
  InequalityKind kind = InequalityKind::general;
  int N = 2;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
};

namespace detail {

inline double weighted(const RadialProfile& psi, int N, const QuadratureOptions& opts,
                       std::function<double(double, double)> w) {
  return integrate_radial(psi.transform("weighted", [w](double r, double v) { return w(r, v); }), N, opts);
}

struct LemmaIntegrals {
  double gradient = 0.0;  // int |grad psi|^2
  double moment = 0.0;    // int r^2 G^2 psi^2
  double drift = 0.0;     // int [N G + r G'] psi^2
};

inline LemmaIntegrals lemma_integrals(const TestFunction& tf, const Weight& w, int N, const QuadratureOptions& opts) {
  const RadialProfile d = tf.derivative();
  const RadialProfile G = w.G, dG = w.derivative();
  LemmaIntegrals I;
  I.gradient = weighted(d, N, opts, [](double, double v) { return v * v; });
  I.moment = weighted(tf.psi, N, opts, [G](double r, double v) {
    const double g = G(r);
    return r * r * g * g * v * v;
  });
  I.drift = weighted(tf.psi, N, opts, [G, dG, N](double r, double v) { return (N * G(r) + r * dG(r)) * v * v; });
  return I;
}

} // namespace detail

inline InequalitySides lemma_check(const TestFunction& tf, const Weight& w, int N, const QuadratureOptions& opts = {}) {
  if (N < 1) throw std::invalid_argument("lemma_check: N must be >= 1");
  const auto I = detail::lemma_integrals(tf, w, N, opts);
  InequalitySides s;
  s.N = N;
  s.lhs = I.gradient * I.moment;
  s.rhs = 0.25 * I.drift * I.drift;
  s.slack = s.lhs - s.rhs;
  return s;
}

/// Minimizer of lambda -> int |grad psi + lambda x g psi|^2.
inline double optimal_lambda(const TestFunction& tf, const Weight& w, int N, const QuadratureOptions& opts = {}) {
  const auto I = detail::lemma_integrals(tf, w, N, opts);
  if (!(I.moment > 0.0)) throw std::domain_error("optimal_lambda: int |x|^2 g^2 psi^2 vanishes");
  return I.drift / (2.0 * I.moment);
}

/// int |grad psi + lambda x g psi|^2, which is int (psi' + lambda r G psi)^2
/// for radial psi. Its value at the optimal lambda times int r^2 G^2 psi^2
/// is the slack of the lemma.
inline double lambda_quadratic(const TestFunction& tf, const Weight& w, int N, double lambda,
                               const QuadratureOptions& opts = {}) {
  const RadialProfile d = tf.derivative(), psi = tf.psi, G = w.G;
  const auto integrand = RadialProfile::analytic("quadratic", {}, [=](double r) {
    const double v = d(r) + lambda * r * G(r) * psi(r);
    return v * v;
  });
  return integrate_radial(integrand, N, opts);
}

inline Weight weight_for(InequalityKind kind) {
  switch (kind) {
  case InequalityKind::heisenberg:
    return {RadialProfile::analytic("1", {}, [](double) { return 1.0; }),
            RadialProfile::analytic("0", {}, [](double) { return 0.0; })};
  case InequalityKind::hydrogen:
    return {RadialProfile::analytic("1/r", {}, [](double r) { return 1.0 / r; }),
            RadialProfile::analytic("-1/r^2", {}, [](double r) { return -1.0 / (r * r); })};
  case InequalityKind::hardy:
    return {RadialProfile::analytic("1/r^2", {}, [](double r) { return 1.0 / (r * r); }),
            RadialProfile::analytic("-2/r^3", {}, [](double r) { return -2.0 / (r * r * r); })};
  case InequalityKind::lin_sobolev:
    return {RadialProfile::analytic("1/(1+r^2)", {}, [](double r) { return 1.0 / (1.0 + r * r); }),
            RadialProfile::analytic("-2r/(1+r^2)^2", {}, [](double r) {
              const double q = 1.0 + r * r;
              return -2.0 * r / (q * q);
            })};
  case InequalityKind::general: break;
  }
  throw std::invalid_argument("weight_for: the general kind has no fixed weight");
}

/// The named inequality in its usual form, for psi rescaled to unit L^2 norm:
///   heisenberg   (int|grad psi|^2)(int|x|^2 psi^2) >= N^2/4
///   hydrogen     int|grad psi|^2 >= ((N-1)^2/4)(int psi^2/|x|)^2
///   hardy        int|grad psi|^2 >= ((N-2)^2/4) int psi^2/|x|^2
///   lin_sobolev  int|grad psi|^2 >= N(N-2) int psi^2/(1+|x|^2)^2
inline InequalitySides named_inequality(InequalityKind kind, const TestFunction& tf, int N,
                                        const QuadratureOptions& opts = {}) {
  if (kind == InequalityKind::general) throw std::invalid_argument("named_inequality: general needs a weight");
  if (N < minimal_dimension(kind))
    throw std::invalid_argument("named_inequality: " + to_string(kind) + " needs N >= " +
                                std::to_string(minimal_dimension(kind)));
  const double norm_sq = detail::weighted(tf.psi, N, opts, [](double, double v) { return v * v; });
  if (!(norm_sq > 0.0)) throw std::domain_error("named_inequality: psi vanishes");
  const double c = 1.0 / std::sqrt(norm_sq);
  const RadialProfile psi = tf.psi.scaled(1.0, c, tf.psi.name());
  const RadialProfile d = tf.derivative().scaled(1.0, c, "dpsi");
  const double grad = detail::weighted(d, N, opts, [](double, double v) { return v * v; });

  InequalitySides s;
  s.kind = kind;
  s.N = N;
  const double n = N;
  switch (kind) {
  case InequalityKind::heisenberg:
    s.lhs = grad * detail::weighted(psi, N, opts, [](double r, double v) { return r * r * v * v; });
    s.rhs = 0.25 * n * n;
    break;
  case InequalityKind::hydrogen: {
    const double inv = detail::weighted(psi, N, opts, [](double r, double v) { return v * v / r; });
    s.lhs = grad;
    s.rhs = 0.25 * (n - 1.0) * (n - 1.0) * inv * inv;
    break;
  }
  case InequalityKind::hardy:
    s.lhs = grad;
    s.rhs = 0.25 * (n - 2.0) * (n - 2.0) * detail::weighted(psi, N, opts, [](double r, double v) { return v * v / (r * r); });
    break;
  case InequalityKind::lin_sobolev:
    s.lhs = grad;
    s.rhs = n * (n - 2.0) * detail::weighted(psi, N, opts, [](double r, double v) {
              const double q = 1.0 + r * r;
              return v * v / (q * q);
            });
    break;
  case InequalityKind::general: break;
  }
  s.slack = s.lhs - s.rhs;
  return s;
}

/// (a + b r) exp(-c r) with its exact derivative.
inline TestFunction linear_exponential(double a, double b, double c) {
  return {RadialProfile::analytic("(a+br)exp(-cr)", {a, b, c}, [a, b, c](double r) { return (a + b * r) * std::exp(-c * r); }),
          RadialProfile::analytic("d/dr (a+br)exp(-cr)", {a, b, c},
                                  [a, b, c](double r) { return (b - c * (a + b * r)) * std::exp(-c * r); })};
}

struct RandomCase {
  double a = 0.0, b = 0.0, c = 0.0;
  InequalitySides sides;
  bool pass = false;
};

inline constexpr std::uint64_t default_inequality_seed = 1234567;

/// `count` functions (a + b r) exp(-c r) with a, b in [0, 1], c in [0.5, 2]
/// from a fixed seed, each tested against every named kind at its minimal
/// dimension. Pass means slack >= -1e-8 lhs.
inline std::vector<RandomCase> random_batch(int count = 100, std::uint64_t seed = default_inequality_seed,
                                            const QuadratureOptions& opts = {}) {
  std::mt19937_64 rng(seed);
  auto uniform = [&rng] { return double(rng() >> 11) * 0x1.0p-53; };
  std::vector<RandomCase> out;
  for (int i = 0; i < count; ++i) {
    const double a = uniform(), b = uniform(), c = 0.5 + 1.5 * uniform();
    const TestFunction tf = linear_exponential(a, b, c);
    for (auto kind : {InequalityKind::heisenberg, InequalityKind::hydrogen, InequalityKind::hardy,
                      InequalityKind::lin_sobolev}) {
      RandomCase rc{a, b, c, named_inequality(kind, tf, minimal_dimension(kind), opts), false};
      rc.pass = rc.sides.slack >= -1e-8 * rc.sides.lhs;
      out.push_back(rc);
    }
  }
  return out;
}

} // namespace zmlab
