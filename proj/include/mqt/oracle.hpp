#pragma once

// Independent numerical checks for the closed forms in escape.hpp:
//  - finite-difference quantization of the harmonic relative-phase well,
//  - bounce action by quadrature between turning points,
//  - Taylor (cubic) expansion of the renormalized washboard at its well.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <sstream>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include "mqt/errors.hpp"
#include "mqt/model.hpp"

namespace mqt::oracle {

using model::JunctionParams;

struct SpectrumResult {
  std::vector<double> eigenvalues; ///< ascending
  double ground_psi_variance;
  double ground_psi_mean;
  double half_width; ///< L
  std::size_t points; ///< N interior grid points
};

struct BounceResult {
  double action_b;
  double theta_a; ///< inner turning point (the well minimum)
  double theta_b; ///< outer turning point
  double error_estimate;
};

/// Cubic model of the renormalized potential around its well minimum:
/// U(theta0 + x) ~ well_energy + quadratic x^2 / 2 + cubic x^3 / 6.
struct CubicFit {
  double theta_min;
  double well_energy;
  double quadratic; ///< U''(theta0)
  double cubic;     ///< U'''(theta0), negative for a forward-tilted well
  double barrier_height;
  double exit_point; ///< theta where the cubic returns to well_energy

  double operator()(double theta) const {
    const double x = theta - theta_min;
    return well_energy + 0.5 * quadratic * x * x + cubic * x * x * x / 6.0;
  }
};

namespace detail {

/// Lowest n eigenvalues of H = -(1/2m) d^2/dx^2 + k x^2 / 2 on [-L, L] with
/// Dirichlet ends and N interior points.
inline std::vector<double> harmonic_levels(double mass, double spring, double half_width, std::size_t n_points,
                                           std::size_t n_levels) {
  const double h = 2.0 * half_width / static_cast<double>(n_points + 1);
  const double kin = 1.0 / (2.0 * mass * h * h);
  Eigen::VectorXd diag(static_cast<Eigen::Index>(n_points));
  Eigen::VectorXd sub = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n_points - 1), -kin);
  for (std::size_t i = 0; i < n_points; ++i) {
    const double x = -half_width + h * static_cast<double>(i + 1);
    diag[static_cast<Eigen::Index>(i)] = 2.0 * kin + 0.5 * spring * x * x;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw convergence_error("tridiagonal eigensolve failed");
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + std::min<std::size_t>(n_levels, n_points)};
}

/// Normalized ground-state vector by shifted inverse iteration. The shift is
/// below the ground level, so H - shift is positive definite and the
/// tridiagonal (Thomas) solve needs no pivoting.
inline std::vector<double> harmonic_ground_vector(double mass, double spring, double half_width,
                                                  std::size_t n_points, double shift) {
  const double h = 2.0 * half_width / static_cast<double>(n_points + 1);
  const double kin = 1.0 / (2.0 * mass * h * h);
  std::vector<double> diag(n_points), cprime(n_points), v(n_points, 1.0), rhs(n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    const double x = -half_width + h * static_cast<double>(i + 1);
    diag[i] = 2.0 * kin + 0.5 * spring * x * x - shift;
  }
  for (int iter = 0; iter < 50; ++iter) {
    rhs = v;
    // Forward sweep with constant off-diagonal -kin.
    cprime[0] = -kin / diag[0];
    rhs[0] /= diag[0];
    for (std::size_t i = 1; i < n_points; ++i) {
      const double denom = diag[i] + kin * cprime[i - 1];
      cprime[i] = -kin / denom;
      rhs[i] = (rhs[i] + kin * rhs[i - 1]) / denom;
    }
    for (std::size_t i = n_points - 1; i-- > 0;) rhs[i] -= cprime[i] * rhs[i + 1];

    double norm = 0.0;
    for (double r : rhs) norm += r * r;
    norm = std::sqrt(norm);
    double change = 0.0;
    for (std::size_t i = 0; i < n_points; ++i) {
      const double next = rhs[i] / norm;
      change = std::max(change, std::abs(next - v[i]));
      v[i] = next;
    }
    if (change < 1e-15) break;
  }
  return v;
}

} // namespace detail

/// Finite-difference spectrum of the quantized relative phase,
/// H = -(1/(2 m_rlt)) d^2/dpsi^2 + E_in psi^2 / 2 on [-L, L].
/// The run is repeated at 2N points; any of the lowest level spacings moving
/// by more than 0.1% raises convergence_error.
inline SpectrumResult harmonic_spectrum(const JunctionParams& params, double half_width, std::size_t n_points,
                                        std::size_t n_levels) {
  const auto d = model::derive(params);
  const double sigma = std::sqrt(1.0 / (2.0 * d.m_rlt * d.omega_jl));
  if (!(half_width >= 8.0 * sigma)) {
    std::ostringstream os;
    os << "half width " << half_width << " is below 8 sigma = " << 8.0 * sigma;
    throw invalid_parameter(os.str());
  }
  if (n_levels < 1) throw invalid_parameter("n_levels must be >= 1");
  if (n_points < n_levels + 2) throw invalid_parameter("too few grid points for the requested levels");

  const std::size_t wanted = std::max<std::size_t>(n_levels, 2);
  const auto coarse = detail::harmonic_levels(d.m_rlt, params.ein, half_width, n_points, wanted);
  const auto fine = detail::harmonic_levels(d.m_rlt, params.ein, half_width, 2 * n_points, wanted);

  for (std::size_t k = 0; k + 1 < wanted; ++k) {
    const double gap_coarse = coarse[k + 1] - coarse[k];
    const double gap_fine = fine[k + 1] - fine[k];
    const double change = std::abs(gap_coarse - gap_fine) / std::abs(gap_fine);
    if (!(change <= 1e-3)) {
      std::ostringstream os;
      os << "level spacing " << k << " changes by " << change * 100.0 << "% from N=" << n_points
         << " to N=" << 2 * n_points;
      throw convergence_error(os.str());
    }
  }

  const double shift = coarse[0] - 1e-2 * (coarse[1] - coarse[0]);
  const auto ground = detail::harmonic_ground_vector(d.m_rlt, params.ein, half_width, n_points, shift);
  const double h = 2.0 * half_width / static_cast<double>(n_points + 1);
  double first_moment = 0.0, second_moment = 0.0, norm = 0.0;
  for (std::size_t i = 0; i < n_points; ++i) {
    const double x = -half_width + h * static_cast<double>(i + 1);
    const double w = ground[i] * ground[i];
    first_moment += x * w;
    second_moment += x * x * w;
    norm += w;
  }

  SpectrumResult r;
  r.eigenvalues.assign(coarse.begin(), coarse.begin() + static_cast<std::ptrdiff_t>(n_levels));
  r.ground_psi_mean = first_moment / norm;
  r.ground_psi_variance = second_moment / norm - r.ground_psi_mean * r.ground_psi_mean;
  r.half_width = half_width;
  r.points = n_points;
  return r;
}

/// B = 2 * integral of sqrt(2 m (V - V(theta_min))) from theta_min to the
/// outer turning point. The turning point is searched in the +theta
/// direction within one washboard period. The square-root zero at the
/// turning point is removed by theta = theta_b - s^2.
template <class Potential>
BounceResult bounce_action(const Potential& potential, double mass, double theta_min, double tol) {
  if (!(mass > 0.0)) throw invalid_parameter("mass must be > 0");
  if (!(tol > 0.0)) throw invalid_parameter("tolerance must be > 0");

  const double v_min = potential(theta_min);
  auto excess = [&](double theta) { return potential(theta) - v_min; };

  constexpr int kScanSteps = 1 << 14;
  const double step = 2.0 * std::numbers::pi / kScanSteps;
  if (!(excess(theta_min + step) > 0.0)) throw no_barrier("theta_min is not a local minimum of the profile");

  double lo = theta_min + step;
  double hi = lo;
  bool bracketed = false;
  for (int k = 2; k <= kScanSteps; ++k) {
    hi = theta_min + step * k;
    if (!(excess(hi) > 0.0)) {
      bracketed = true;
      break;
    }
    lo = hi;
  }
  if (!bracketed) throw no_barrier("no outer turning point within one washboard period");

  double theta_b = hi;
  if (excess(hi) != 0.0) {
    std::uintmax_t max_iter = 200;
    const auto root = boost::math::tools::toms748_solve(excess, lo, hi, boost::math::tools::eps_tolerance<double>(),
                                                        max_iter);
    // Take the side still inside the barrier region.
    theta_b = excess(root.second) >= 0.0 ? root.second : root.first;
  }

  const double span = std::sqrt(theta_b - theta_min);
  auto integrand = [&](double s) {
    const double theta = theta_b - s * s;
    const double e = std::max(0.0, excess(theta));
    return 2.0 * s * std::sqrt(2.0 * mass * e);
  };

  using boost::math::quadrature::gauss_kronrod;
  // Absolute tolerance -> relative tolerance for the adaptive rule.
  const double magnitude = std::abs(gauss_kronrod<double, 31>::integrate(integrand, 0.0, span, 0));
  const double rel_tol = magnitude > 0.0 ? std::max(0.5 * tol / (2.0 * magnitude), 1e-15) : 1e-15;
  double error = 0.0;
  const double integral = gauss_kronrod<double, 31>::integrate(integrand, 0.0, span, 20, rel_tol, &error);
  if (!(integral > 0.0)) throw no_barrier("bounce integral vanished");
  return {2.0 * integral, theta_min, theta_b, 2.0 * error};
}

/// Analytic second and third derivatives of -E_J[(1 - eps) cos theta + bias theta]
/// at its well minimum, and the cubic barrier they imply.
inline CubicFit cubic_fit(const JunctionParams& params, double eps) {
  model::validate(params);
  if (!std::isfinite(eps) || eps < 0.0 || eps >= 1.0) throw domain_error("epsilon outside [0, 1)");
  const double reduced = 1.0 - eps;
  if (!(params.bias < reduced)) throw no_barrier("no barrier: bias >= 1 - epsilon");
  if (!(params.bias > 0.0)) throw invalid_parameter("cubic fit requires bias > 0");

  const double ej = params.ej1 + params.ej2;
  CubicFit fit{};
  fit.theta_min = std::asin(params.bias / reduced);
  fit.well_energy = -ej * (reduced * std::cos(fit.theta_min) + params.bias * fit.theta_min);
  fit.quadratic = ej * reduced * std::cos(fit.theta_min);
  fit.cubic = -ej * reduced * std::sin(fit.theta_min);
  const double k = fit.quadratic;
  const double c = -fit.cubic;
  fit.barrier_height = 2.0 * k * k * k / (3.0 * c * c);
  fit.exit_point = fit.theta_min + 3.0 * k / c;
  return fit;
}

} // namespace mqt::oracle
