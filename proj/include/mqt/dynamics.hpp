#pragma once

// Classical dynamics of the coupled (theta, psi) phases: equations of motion,
// fixed-step RK4 trajectories, static equilibria, normal modes and the
// reduced junction voltage.

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <sstream>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "mqt/errors.hpp"
#include "mqt/model.hpp"

namespace mqt::dynamics {

using model::JunctionParams;

struct PhaseState {
  double theta = 0.0;
  double psi = 0.0;
  double theta_dot = 0.0;
  double psi_dot = 0.0;
  double tau = 0.0;
};

struct Acceleration {
  double theta_ddot;
  double psi_ddot;
};

/// Time series produced by integrate(). Samples are spaced by sample_dt()
/// (= step dt * stride); energy()[k] belongs to states()[k].
class Trajectory {
public:
  Trajectory(JunctionParams params, double step_dt, std::size_t stride, std::vector<PhaseState> states,
             std::vector<double> energy)
      : params_(params), step_dt_(step_dt), stride_(stride), states_(std::move(states)),
        energy_(std::move(energy)) {}

  const JunctionParams& params() const noexcept { return params_; }
  double step_dt() const noexcept { return step_dt_; }
  std::size_t stride() const noexcept { return stride_; }
  double sample_dt() const noexcept { return step_dt_ * static_cast<double>(stride_); }
  std::span<const PhaseState> states() const noexcept { return states_; }
  std::span<const double> energy() const noexcept { return energy_; }
  std::size_t size() const noexcept { return states_.size(); }
  const PhaseState& front() const { return states_.front(); }
  const PhaseState& back() const { return states_.back(); }

  /// max_k |E_k - E_0| / |E_0| over the stored samples.
  double max_relative_energy_drift() const {
    double worst = 0.0;
    const double e0 = energy_.front();
    for (double e : energy_) worst = std::max(worst, std::abs(e - e0));
    return e0 != 0.0 ? worst / std::abs(e0) : worst;
  }

private:
  JunctionParams params_;
  double step_dt_;
  std::size_t stride_;
  std::vector<PhaseState> states_;
  std::vector<double> energy_;
};

namespace detail {

// Constants of the equations of motion, evaluated once per trajectory.
struct EquationsOfMotion {
  explicit EquationsOfMotion(const JunctionParams& p) : params(p) {
    const auto d = model::derive(p);
    lambda_cap = d.lambda_cap;
    a_sum = p.alpha1 + p.alpha2;
    w1_sq = d.omega_p1 * d.omega_p1;
    w2_sq = d.omega_p2 * d.omega_p2;
    wjl_sq = d.omega_jl * d.omega_jl;
    drive = 2.0 * d.ej_tilt * p.bias;
  }

  Acceleration operator()(double theta, double psi) const {
    const auto [t1, t2] = model::split_phases(theta, psi, params);
    const double s1 = std::sin(t1);
    const double s2 = std::sin(t2);
    return {lambda_cap * (drive - w1_sq * s1 - w2_sq * s2),
            -params.kappa * wjl_sq * std::sin(psi) - params.alpha1 * w1_sq * s1 + params.alpha2 * w2_sq * s2};
  }

  double energy(const PhaseState& s) const {
    const double kinetic =
        s.theta_dot * s.theta_dot / (4.0 * lambda_cap) + s.psi_dot * s.psi_dot / (4.0 * a_sum);
    return kinetic + model::potential(s.theta, s.psi, params);
  }

  JunctionParams params;
  double lambda_cap, a_sum, w1_sq, w2_sq, wjl_sq, drive;
};

inline bool finite(const PhaseState& s) {
  return std::isfinite(s.theta) && std::isfinite(s.psi) && std::isfinite(s.theta_dot) &&
         std::isfinite(s.psi_dot);
}

} // namespace detail

/// (theta'', psi'') from the Euler-Lagrange equations of the two-phase Lagrangian.
/// The channel frequencies of the psi equation are taken equal to omega_Pi.
inline Acceleration acceleration(const PhaseState& state, const JunctionParams& params) {
  return detail::EquationsOfMotion(params)(state.theta, state.psi);
}

/// Kinetic plus tilted potential energy of a state.
inline double total_energy(const PhaseState& state, const JunctionParams& params) {
  return detail::EquationsOfMotion(params).energy(state);
}

/// Classic fixed-step RK4. Every `stride`-th step is stored, plus the initial state.
inline Trajectory integrate(const PhaseState& initial, double dt, std::size_t n_steps,
                            const JunctionParams& params, std::size_t stride = 1) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw invalid_parameter("dt must be finite and > 0");
  if (n_steps < 1) throw invalid_parameter("n_steps must be >= 1");
  if (stride < 1) throw invalid_parameter("stride must be >= 1");
  if (!detail::finite(initial)) throw numeric_error("non-finite initial state", 0);

  const detail::EquationsOfMotion eom(params);
  std::vector<PhaseState> states;
  std::vector<double> energy;
  states.reserve(n_steps / stride + 1);
  energy.reserve(n_steps / stride + 1);
  states.push_back(initial);
  energy.push_back(eom.energy(initial));

  PhaseState y = initial;
  const double h = dt;
  for (std::size_t step = 1; step <= n_steps; ++step) {
    const auto k1a = eom(y.theta, y.psi);
    const double k1t = y.theta_dot, k1p = y.psi_dot;

    const double t2 = y.theta + 0.5 * h * k1t, p2 = y.psi + 0.5 * h * k1p;
    const double k2t = y.theta_dot + 0.5 * h * k1a.theta_ddot, k2p = y.psi_dot + 0.5 * h * k1a.psi_ddot;
    const auto k2a = eom(t2, p2);

    const double t3 = y.theta + 0.5 * h * k2t, p3 = y.psi + 0.5 * h * k2p;
    const double k3t = y.theta_dot + 0.5 * h * k2a.theta_ddot, k3p = y.psi_dot + 0.5 * h * k2a.psi_ddot;
    const auto k3a = eom(t3, p3);

    const double t4 = y.theta + h * k3t, p4 = y.psi + h * k3p;
    const double k4t = y.theta_dot + h * k3a.theta_ddot, k4p = y.psi_dot + h * k3a.psi_ddot;
    const auto k4a = eom(t4, p4);

    y.theta += h / 6.0 * (k1t + 2.0 * k2t + 2.0 * k3t + k4t);
    y.psi += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
    y.theta_dot += h / 6.0 * (k1a.theta_ddot + 2.0 * k2a.theta_ddot + 2.0 * k3a.theta_ddot + k4a.theta_ddot);
    y.psi_dot += h / 6.0 * (k1a.psi_ddot + 2.0 * k2a.psi_ddot + 2.0 * k3a.psi_ddot + k4a.psi_ddot);
    // Multiply rather than accumulate so sample spacing stays uniform.
    y.tau = initial.tau + static_cast<double>(step) * h;

    if (!detail::finite(y)) throw numeric_error("non-finite state during integration", step);
    if (step % stride == 0) {
      states.push_back(y);
      energy.push_back(eom.energy(y));
    }
  }
  return Trajectory(params, dt, stride, std::move(states), std::move(energy));
}

/// Static minimum of the tilted two-phase potential, found by Newton
/// iteration from (asin(min(bias, 1)), 0).
inline model::ModePhases equilibrium(const JunctionParams& params) {
  const auto d = model::derive(params);
  // |dV/dtheta + tilt| <= ej_sum, so no stationary point can exist past this.
  if (d.ej_tilt * params.bias >= d.ej_sum) {
    std::ostringstream os;
    os << "bias " << params.bias << " is at or above the classical critical tilt";
    throw no_equilibrium(os.str());
  }

  Eigen::Vector2d x(std::asin(std::min(params.bias, 1.0)), 0.0);
  const double scale = d.ej_sum + params.ein;
  double best_norm = INFINITY;
  Eigen::Vector2d best = x;
  for (int iter = 0; iter < 200; ++iter) {
    const auto g = model::potential_gradient(x[0], x[1], params);
    const Eigen::Vector2d grad(g.d_theta, g.d_psi);
    const double norm = grad.norm();
    if (norm < best_norm) {
      best_norm = norm;
      best = x;
    }
    if (norm < 1e-12) break;
    const auto h = model::potential_hessian(x[0], x[1], params);
    Eigen::Matrix2d hess;
    hess << h.theta_theta, h.theta_psi, h.theta_psi, h.psi_psi;
    Eigen::Vector2d step = hess.fullPivLu().solve(-grad);
    if (!step.allFinite()) break;
    // Keep steps inside one washboard cell.
    const double len = step.norm();
    if (len > 0.5) step *= 0.5 / len;
    x += step;
    if (step.norm() < 1e-16 * (1.0 + x.norm())) break;
  }

  // Roundoff floor: the gradient is a difference of O(scale) terms.
  if (!(best_norm < std::max(1e-12, 64.0 * 2.2e-16 * scale))) {
    // Also reached below ej_tilt * bias < ej_sum when the psi equation cannot
    // balance the channel currents (weak E_in, strongly unequal channels).
    throw no_equilibrium("no stationary point found: bias exceeds the critical tilt of the two-channel potential");
  }
  const auto h = model::potential_hessian(best[0], best[1], params);
  if (!(h.theta_theta > 0.0 && h.theta_theta * h.psi_psi - h.theta_psi * h.theta_psi > 0.0)) {
    throw no_equilibrium("stationary point is not a minimum");
  }
  return {best[0], best[1]};
}

/// Normal modes of the linearized motion about the equilibrium.
struct NormalModes {
  double f_low;
  double f_high;
  std::array<double, 2> shape_low;  ///< (theta, psi) amplitude, unit norm
  std::array<double, 2> shape_high; ///< (theta, psi) amplitude, unit norm
};

inline NormalModes small_oscillation_frequencies(const JunctionParams& params) {
  const auto eq = equilibrium(params);
  const auto d = model::derive(params);
  const auto h = model::potential_hessian(eq.theta, eq.psi, params);
  // Inverse masses from T = theta'^2 / (4 Lambda) + psi'^2 / (4 (a1 + a2)).
  const double inv_m_theta = 2.0 * d.lambda_cap;
  const double inv_m_psi = 2.0 * (params.alpha1 + params.alpha2);

  Eigen::Matrix2d sym;
  const double off = std::sqrt(inv_m_theta * inv_m_psi) * h.theta_psi;
  sym << inv_m_theta * h.theta_theta, off, off, inv_m_psi * h.psi_psi;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> solver(sym);
  const auto& evals = solver.eigenvalues();
  if (!(evals[0] > 0.0)) throw no_equilibrium("linearization is not positive definite");

  auto shape = [&](int k) {
    // Back from mass-weighted to (theta, psi) coordinates.
    Eigen::Vector2d v(solver.eigenvectors()(0, k) * std::sqrt(inv_m_theta),
                      solver.eigenvectors()(1, k) * std::sqrt(inv_m_psi));
    v.normalize();
    return std::array<double, 2>{v[0], v[1]};
  };
  return {std::sqrt(evals[0]), std::sqrt(evals[1]), shape(0), shape(1)};
}

/// 2ev/hbar in reduced form. Only theta carries voltage.
inline double reduced_voltage(const PhaseState& state, const JunctionParams& params) {
  return state.theta_dot / model::derive(params).lambda_cap;
}

/// Earliest sample time at which theta exceeds its initial value by more than `window`.
inline std::optional<double> detect_switching(const Trajectory& trajectory,
                                              double window = 2.0 * std::numbers::pi) {
  if (!(window > 0.0)) throw invalid_parameter("switching window must be > 0");
  if (trajectory.size() == 0) return std::nullopt;
  const double reference = trajectory.front().theta;
  for (const auto& s : trajectory.states()) {
    if (s.theta - reference > window) return s.tau;
  }
  return std::nullopt;
}

} // namespace mqt::dynamics
