// Gaussian collective phase noise with an exponentially correlated field.
//
// A coherence between basis vectors whose collective z-weights differ by dm
// is damped by exp(-dm^2 C(T) / 2) with
//   C(T) = (gamma dB tau_c)^2 [exp(-T/tau_c) + T/tau_c - 1].
// Every variant below uses the same kernel normalization: a uniform weight
// function over [0, T] reproduces C(T).

#pragma once

#include "colqfi/basis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace colqfi {

struct NoiseParams {
  double gamma_delta_b = 2.0 * std::numbers::pi * 50.0;  // rad/s
  double tau_c = 1.0;                                     // s

  NoiseParams() = default;
  NoiseParams(double gdb, double tau) : gamma_delta_b(gdb), tau_c(tau) { validate(); }

  void validate() const {
    if (!(gamma_delta_b > 0.0) || !std::isfinite(gamma_delta_b) || !(tau_c > 0.0) ||
        !std::isfinite(tau_c))
      throw std::domain_error("noise parameters must be positive and finite");
  }
};

enum class NoiseVariant { IdealCollective, SpinEcho, IndependentRepeat };

inline std::string to_string(NoiseVariant v) {
  switch (v) {
    case NoiseVariant::IdealCollective: return "IDEAL_COLLECTIVE";
    case NoiseVariant::SpinEcho: return "SPIN_ECHO";
    case NoiseVariant::IndependentRepeat: return "INDEPENDENT_REPEAT";
  }
  return "?";
}

namespace detail {
inline void require_time(double t) {
  if (!(t >= 0.0)) throw std::domain_error("evolution time must be >= 0");
}

// exp(-x) + x - 1 without cancellation for small x.
inline double ou_shape(double x) {
  if (x < 1e-3) {
    // x^2/2 - x^3/6 + x^4/24 - x^5/120
    return x * x * (0.5 - x * (1.0 / 6.0 - x * (1.0 / 24.0 - x / 120.0)));
  }
  return std::expm1(-x) + x;
}
}  // namespace detail

inline double phase_variance_c(double t, const NoiseParams& p) {
  detail::require_time(t);
  const double s = p.gamma_delta_b * p.tau_c;
  return s * s * detail::ou_shape(t / p.tau_c);
}

// Normalized variance of a * gamma (I1 - I2) + b * gamma (I1 + I2), where I1
// and I2 are the field integrals over the first and second half of [0, T].
// With h = T/2 each half contributes v = C(h) and the cross term is
// c = (gamma dB tau_c)^2 (1 - exp(-h/tau_c))^2 / 2, so that
//   Var = (a+b)^2 v + (b-a)^2 v + 2 (a+b)(b-a) c.
// For a = 0 this collapses to b^2 C(T).
inline double spin_echo_weights_variance(double a, double b, double t, const NoiseParams& p) {
  detail::require_time(t);
  const double h = 0.5 * t;
  const double s = p.gamma_delta_b * p.tau_c;
  const double v = phase_variance_c(h, p);
  const double e = -std::expm1(-h / p.tau_c);
  const double c = 0.5 * s * s * e * e;
  const double first = a + b;
  const double second = b - a;
  return first * first * v + second * second * v + 2.0 * first * second * c;
}

inline StateMatrix apply_collective_dephasing(const StateMatrix& rho, double t,
                                              const NoiseParams& p) {
  detail::require_time(t);
  if (t == 0.0) return rho;
  const double c = phase_variance_c(t, p);
  const Basis& b = rho.basis;
  CMatrix out = rho.matrix;
  for (int i = 0; i < b.dim(); ++i) {
    for (int j = 0; j < b.dim(); ++j) {
      const double dm = b.total_weight(i) - b.total_weight(j);
      if (dm != 0.0) out(i, j) *= std::exp(-0.5 * dm * dm * c);
    }
  }
  return StateMatrix(b, std::move(out));
}

// Infinite-time limit: keep only blocks of equal total excitation number.
inline StateMatrix steady_state(const StateMatrix& rho) {
  const Basis& b = rho.basis;
  CMatrix out = rho.matrix;
  for (int i = 0; i < b.dim(); ++i)
    for (int j = 0; j < b.dim(); ++j)
      if (b.total_excitations(i) != b.total_excitations(j)) out(i, j) = 0.0;
  return StateMatrix(b, std::move(out));
}

inline StateMatrix apply_variant_dephasing(const StateMatrix& rho, double t, const NoiseParams& p,
                                           NoiseVariant variant) {
  if (variant == NoiseVariant::IdealCollective) return apply_collective_dephasing(rho, t, p);
  const Basis& b = rho.basis;
  if (!b.is_bipartite())
    throw std::domain_error(to_string(variant) + " dephasing requires a bipartite basis");
  detail::require_time(t);
  if (t == 0.0) return rho;

  const double c = phase_variance_c(t, p);
  CMatrix out = rho.matrix;
  for (int i = 0; i < b.dim(); ++i) {
    for (int j = 0; j < b.dim(); ++j) {
      const double dm1 = b.weight1(i) - b.weight1(j);
      const double dm2 = b.weight2(i) - b.weight2(j);
      if (dm1 == 0.0 && dm2 == 0.0) continue;
      const double var = variant == NoiseVariant::SpinEcho
                             ? spin_echo_weights_variance(dm1, dm2, t, p)
                             : (dm1 * dm1 + dm2 * dm2) * c;
      out(i, j) *= std::exp(-0.5 * var);
    }
  }
  return StateMatrix(b, std::move(out));
}

}  // namespace colqfi
