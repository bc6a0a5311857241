#pragma once

// Zero-temperature escape rate out of the washboard well, including the
// renormalization of the Josephson coupling by zero-point motion of the
// relative phase (Josephson-Leggett mode).
//
// All rates are carried as natural logarithms; nothing here exponentiates
// the instanton exponent.

#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

#include "mqt/errors.hpp"
#include "mqt/model.hpp"

namespace mqt::escape {

using model::JunctionParams;

/// Above this epsilon the psi^2 truncation of the interaction is strained.
inline constexpr double kEpsilonStrainThreshold = 0.2;

struct FluctuationRenorm {
  double psi_variance;       ///< <psi^2> at T = 0
  double epsilon;            ///< g+ <psi^2>
  double epsilon_scale_form; ///< (g+/sqrt2)(a1+a2)(omega_p/omega_jl)sqrt(E_C/E_J); equals epsilon
  bool valid;                ///< epsilon < 1: a barrier can survive renormalization
  bool strained;             ///< epsilon > kEpsilonStrainThreshold
};

struct BarrierParams {
  double theta0;    ///< well minimum, (1 - eps) sin theta0 = bias
  double omega_p_i; ///< bias-dependent plasma frequency
  double v0;        ///< cubic barrier height
};

struct EscapeResult {
  double omega_p_i;
  double theta0;
  double v0;
  double exponent_b;   ///< 36 V0 / (5 omega_p_i)
  double ln_prefactor; ///< ln[12 omega_p_i sqrt(3 V0 / (2 pi omega_p_i))]
  double ln_gamma;     ///< ln Gamma, Gamma in units of E_C / hbar
};

/// <psi^2> = hbar / (2 m_rlt omega_jl) = (a1 + a2) / omega_jl.
inline double zero_point_variance(const JunctionParams& params) {
  const auto d = model::derive(params);
  return 1.0 / (2.0 * d.m_rlt * d.omega_jl);
}

/// Computes epsilon twice: as g+ <psi^2> and from the frequency-ratio form.
/// The two agree identically once omega_p = sqrt(2 E_J) is substituted.
inline FluctuationRenorm epsilon(const JunctionParams& params) {
  const auto d = model::derive(params);
  FluctuationRenorm r{};
  r.psi_variance = zero_point_variance(params);
  r.epsilon = d.g_plus * r.psi_variance;
  r.epsilon_scale_form = d.g_plus / std::numbers::sqrt2 * (params.alpha1 + params.alpha2) *
                         (d.omega_p / d.omega_jl) * std::sqrt(1.0 / d.ej_sum);
  r.valid = r.epsilon < 1.0;
  r.strained = r.epsilon > kEpsilonStrainThreshold;
  return r;
}

namespace detail {
inline void check_epsilon(double eps) {
  if (!std::isfinite(eps) || eps < 0.0 || eps >= 1.0) {
    std::ostringstream os;
    os << "epsilon " << eps << " outside [0, 1)";
    throw domain_error(os.str());
  }
}
} // namespace detail

/// -E_J[(1 - eps) cos theta + bias theta] with E_J = E_J1 + E_J2.
inline double effective_potential(double theta, const JunctionParams& params, double eps) {
  detail::check_epsilon(eps);
  const double ej = params.ej1 + params.ej2;
  return -ej * ((1.0 - eps) * std::cos(theta) + params.bias * theta);
}

inline BarrierParams barrier_params(const JunctionParams& params, double eps) {
  model::validate(params);
  detail::check_epsilon(eps);
  const double reduced = 1.0 - eps;
  if (!(params.bias < reduced)) {
    std::ostringstream os;
    os << "no barrier: bias " << params.bias << " >= 1 - epsilon = " << reduced;
    throw no_barrier(os.str());
  }
  if (!(params.bias > 0.0)) {
    // theta0 = 0 makes the cubic barrier height diverge.
    throw invalid_parameter("cubic barrier requires bias > 0");
  }
  const double omega_p = std::sqrt(2.0 * (params.ej1 + params.ej2));
  BarrierParams b{};
  b.theta0 = std::asin(params.bias / reduced);
  b.omega_p_i = omega_p * std::pow(reduced * reduced - params.bias * params.bias, 0.25);
  const double cot = 1.0 / std::tan(b.theta0);
  b.v0 = b.omega_p_i * b.omega_p_i * cot * cot / 3.0;
  return b;
}

inline EscapeResult escape_rate_ln(const JunctionParams& params, double eps) {
  const auto b = barrier_params(params, eps);
  EscapeResult r{};
  r.omega_p_i = b.omega_p_i;
  r.theta0 = b.theta0;
  r.v0 = b.v0;
  r.exponent_b = 36.0 * b.v0 / (5.0 * b.omega_p_i);
  r.ln_prefactor = std::log(12.0) + std::log(b.omega_p_i) +
                   0.5 * std::log(3.0 * b.v0 / (2.0 * std::numbers::pi * b.omega_p_i));
  r.ln_gamma = r.ln_prefactor - r.exponent_b;
  return r;
}

/// ln(Gamma / Gamma0) for a given epsilon; Gamma0 keeps ej_sum and bias, eps = 0.
inline double enhancement_ratio_ln(const JunctionParams& params, double eps) {
  if (eps == 0.0) {
    barrier_params(params, 0.0);
    return 0.0;
  }
  return escape_rate_ln(params, eps).ln_gamma - escape_rate_ln(params, 0.0).ln_gamma;
}

inline double enhancement_ratio_ln(const JunctionParams& params) {
  const auto renorm = epsilon(params);
  if (!renorm.valid) {
    std::ostringstream os;
    os << "no barrier: epsilon " << renorm.epsilon << " >= 1";
    throw no_barrier(os.str());
  }
  return enhancement_ratio_ln(params, renorm.epsilon);
}

} // namespace mqt::escape
