#pragma once

// Two-channel junction model: parameters, derived scales, phase coordinates
// and the tilted two-phase potential.
//
// Units throughout the library: hbar = 1, E_C = 1. Energies are in E_C,
// frequencies in E_C/hbar, times in hbar/E_C, phases in radians.

#include <cmath>
#include <sstream>
#include <string>

#include "mqt/errors.hpp"

namespace mqt::model {

struct JunctionParams {
  double ej1 = 50.0;   ///< Josephson energy of channel 1
  double ej2 = 50.0;   ///< Josephson energy of channel 2
  double ein = 125.0;  ///< inter-band coupling magnitude
  double alpha1 = 0.1; ///< charge-screening constant of band 1
  double alpha2 = 0.1; ///< charge-screening constant of band 2
  int kappa = 1;       ///< sign of the inter-band current, +1 or -1
  double bias = 0.0;   ///< I_ex / I_c
};

struct DerivedScales {
  double lambda_cap; ///< 1 + a1 a2 / (a1 + a2)
  double ej_sum;     ///< E_J1 + E_J2; feeds omega_p, g+-, epsilon and the escape rate
  double ej_tilt;    ///< |E_J1 + kappa E_J2|; scales the bias tilt of the exact potential
  double omega_p;
  double omega_p1;
  double omega_p2;
  double omega_jl;
  double m_cm;
  double m_rlt;
  double g_plus;
  double g_minus;
};

/// Center-of-mass and relative phase.
struct ModePhases {
  double theta;
  double psi;
};

/// Gauge-invariant phase drop across each tunneling channel.
struct ChannelPhases {
  double theta1;
  double theta2;
};

struct Gradient {
  double d_theta;
  double d_psi;
};

struct Hessian {
  double theta_theta;
  double theta_psi;
  double psi_psi;
};

/// Throws invalid_parameter naming the first violated invariant.
inline void validate(const JunctionParams& p) {
  auto fail = [](const std::string& msg) { throw invalid_parameter(msg); };
  auto finite = [](double v) { return std::isfinite(v); };
  if (!finite(p.ej1) || !(p.ej1 > 0.0)) fail("ej1 must be finite and > 0");
  if (!finite(p.ej2) || !(p.ej2 > 0.0)) fail("ej2 must be finite and > 0");
  if (!finite(p.ein) || !(p.ein > 0.0)) fail("ein must be finite and > 0");
  if (!finite(p.alpha1) || !(p.alpha1 > 0.0)) fail("alpha1 must be finite and > 0");
  if (!finite(p.alpha2) || !(p.alpha2 > 0.0)) fail("alpha2 must be finite and > 0");
  if (p.kappa != 1 && p.kappa != -1) {
    std::ostringstream os;
    os << "kappa must be +1 or -1 (got " << p.kappa << ")";
    fail(os.str());
  }
  if (!finite(p.bias) || !(p.bias >= 0.0)) fail("bias must be finite and >= 0");
}

inline DerivedScales derive(const JunctionParams& p) {
  validate(p);
  const double a_sum = p.alpha1 + p.alpha2;
  const double w1 = p.alpha1 / a_sum;
  const double w2 = p.alpha2 / a_sum;

  DerivedScales d{};
  d.lambda_cap = 1.0 + p.alpha1 * p.alpha2 / a_sum;
  d.ej_sum = p.ej1 + p.ej2;
  d.ej_tilt = std::abs(p.ej1 + p.kappa * p.ej2);
  d.omega_p = std::sqrt(2.0 * d.ej_sum);
  d.omega_p1 = std::sqrt(2.0 * p.ej1);
  d.omega_p2 = std::sqrt(2.0 * p.ej2);
  d.omega_jl = std::sqrt(2.0 * a_sum * p.ein);
  d.m_cm = 0.5;
  d.m_rlt = 1.0 / (2.0 * a_sum);
  d.g_plus = (p.ej1 / (2.0 * d.ej_sum)) * w1 * w1 + (p.ej2 / (2.0 * d.ej_sum)) * w2 * w2;
  // Written as a single difference so that ej1*a1 == ej2*a2 gives exactly zero.
  d.g_minus = (p.ej1 * p.alpha1 - p.ej2 * p.alpha2) / (d.ej_sum * a_sum);
  return d;
}

inline ChannelPhases split_phases(double theta, double psi, const JunctionParams& p) {
  const double a_sum = p.alpha1 + p.alpha2;
  return {theta + p.alpha1 * psi / a_sum, theta - p.alpha2 * psi / a_sum};
}

inline ModePhases combine_phases(double theta1, double theta2, const JunctionParams& p) {
  const double a_sum = p.alpha1 + p.alpha2;
  return {(p.alpha2 * theta1 + p.alpha1 * theta2) / a_sum, theta1 - theta2};
}

/// Exact potential including the bias tilt:
/// -E_J1 cos th1 - E_J2 cos th2 - kappa E_in cos psi - ej_tilt * bias * theta.
inline double potential(double theta, double psi, const JunctionParams& p) {
  const auto [t1, t2] = split_phases(theta, psi, p);
  const double ej_tilt = std::abs(p.ej1 + p.kappa * p.ej2);
  return -p.ej1 * std::cos(t1) - p.ej2 * std::cos(t2) - p.kappa * p.ein * std::cos(psi) -
         ej_tilt * p.bias * theta;
}

inline Gradient potential_gradient(double theta, double psi, const JunctionParams& p) {
  const double a_sum = p.alpha1 + p.alpha2;
  const auto [t1, t2] = split_phases(theta, psi, p);
  const double f1 = p.ej1 * std::sin(t1);
  const double f2 = p.ej2 * std::sin(t2);
  const double ej_tilt = std::abs(p.ej1 + p.kappa * p.ej2);
  return {f1 + f2 - ej_tilt * p.bias,
          (p.alpha1 * f1 - p.alpha2 * f2) / a_sum + p.kappa * p.ein * std::sin(psi)};
}

inline Hessian potential_hessian(double theta, double psi, const JunctionParams& p) {
  const double w1 = p.alpha1 / (p.alpha1 + p.alpha2);
  const double w2 = p.alpha2 / (p.alpha1 + p.alpha2);
  const auto [t1, t2] = split_phases(theta, psi, p);
  const double c1 = p.ej1 * std::cos(t1);
  const double c2 = p.ej2 * std::cos(t2);
  return {c1 + c2, w1 * c1 - w2 * c2, w1 * w1 * c1 + w2 * w2 * c2 + p.kappa * p.ein * std::cos(psi)};
}

/// Inverse of the omega_ratio = omega_p / omega_jl parameterization: the E_in
/// that places the JL mode at omega_p / ratio for the current E_J1 + E_J2 and alphas.
inline double ein_for_omega_ratio(const JunctionParams& p, double omega_ratio) {
  const double ej_sum = p.ej1 + p.ej2;
  return ej_sum / ((p.alpha1 + p.alpha2) * omega_ratio * omega_ratio);
}

} // namespace mqt::model
