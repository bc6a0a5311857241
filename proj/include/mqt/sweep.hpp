#pragma once

// Rectangular parameter sweeps of ln(Gamma / Gamma0).

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mqt/errors.hpp"
#include "mqt/escape.hpp"
#include "mqt/model.hpp"

namespace mqt::escape {

enum class Axis { bias, omega_ratio, ej_over_ec, alpha };

inline std::string_view axis_name(Axis a) {
  switch (a) {
  case Axis::bias: return "bias";
  case Axis::omega_ratio: return "omega_ratio";
  case Axis::ej_over_ec: return "ej_over_ec";
  case Axis::alpha: return "alpha";
  }
  return "?";
}

inline Axis parse_axis(std::string_view name) {
  if (name == "bias") return Axis::bias;
  if (name == "omega_ratio") return Axis::omega_ratio;
  if (name == "ej_over_ec") return Axis::ej_over_ec;
  if (name == "alpha") return Axis::alpha;
  throw invalid_axis("unknown sweep axis '" + std::string(name) +
                     "' (expected bias, omega_ratio, ej_over_ec or alpha)");
}

struct AxisSpec {
  Axis axis = Axis::bias;
  double min = 0.0;
  double max = 1.0;
  std::size_t count = 2;

  double value(std::size_t i) const {
    if (i + 1 == count) return max;
    return min + (max - min) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
};

/// Fixed parameters of a sweep. When omega_ratio is set, E_in is re-derived
/// from it after the axis values are applied, so E_in tracks E_J and alpha.
struct SweepBase {
  JunctionParams params;
  std::optional<double> omega_ratio;
};

struct SweepOptions {
  /// Replaces the computed epsilon in every cell (0 gives an all-zero grid).
  std::optional<double> epsilon_override;
};

struct SweepCell {
  double axis1;
  double axis2;
  double ln_ratio; ///< NaN when !valid
  double epsilon;  ///< NaN when parameters are invalid
  bool valid;
};

struct SweepGrid {
  AxisSpec axis1;
  AxisSpec axis2;
  SweepBase base;
  SweepOptions options;
  std::vector<SweepCell> cells; ///< row-major, axis1 outer

  const SweepCell& at(std::size_t i1, std::size_t i2) const { return cells.at(i1 * axis2.count + i2); }
  std::size_t valid_count() const {
    std::size_t n = 0;
    for (const auto& c : cells) n += c.valid ? 1 : 0;
    return n;
  }
};

inline void validate_axis(const AxisSpec& a) {
  const std::string name(axis_name(a.axis));
  if (a.count < 2) throw invalid_axis("axis " + name + ": count must be >= 2");
  if (!std::isfinite(a.min) || !std::isfinite(a.max)) throw invalid_axis("axis " + name + ": non-finite range");
  if (!(a.min < a.max)) throw invalid_axis("axis " + name + ": range is empty or inverted (min >= max)");
  const bool positive_only = a.axis != Axis::bias;
  if (positive_only ? !(a.min > 0.0) : !(a.min >= 0.0)) {
    throw invalid_axis("axis " + name + ": range leaves the physical domain");
  }
}

/// Applies one axis value. ej_over_ec rescales E_J1, E_J2 keeping their ratio;
/// alpha sets alpha1 and rescales alpha2 keeping their ratio.
inline void apply_axis(SweepBase& cell, Axis axis, double value) {
  auto& p = cell.params;
  switch (axis) {
  case Axis::bias: p.bias = value; break;
  case Axis::omega_ratio: cell.omega_ratio = value; break;
  case Axis::ej_over_ec: {
    const double scale = value / (p.ej1 + p.ej2);
    p.ej1 *= scale;
    p.ej2 *= scale;
    break;
  }
  case Axis::alpha: {
    const double ratio = p.alpha2 / p.alpha1;
    p.alpha1 = value;
    p.alpha2 = value * ratio;
    break;
  }
  }
}

inline SweepCell evaluate_cell(const SweepBase& base, const AxisSpec& a1, double v1, const AxisSpec& a2, double v2,
                               const SweepOptions& options) {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  SweepCell out{v1, v2, nan, nan, false};
  SweepBase cell = base;
  apply_axis(cell, a1.axis, v1);
  apply_axis(cell, a2.axis, v2);
  if (cell.omega_ratio) cell.params.ein = model::ein_for_omega_ratio(cell.params, *cell.omega_ratio);
  try {
    const double eps = options.epsilon_override ? *options.epsilon_override : epsilon(cell.params).epsilon;
    out.epsilon = eps;
    if (!(eps < 1.0)) return out;
    out.ln_ratio = enhancement_ratio_ln(cell.params, eps);
    out.valid = std::isfinite(out.ln_ratio);
    if (!out.valid) out.ln_ratio = nan;
  } catch (const error&) {
    out.ln_ratio = nan;
    out.valid = false;
  }
  return out;
}

/// Cells that violate bias < 1 - epsilon are flagged invalid, never fatal.
inline SweepGrid sweep_grid(const SweepBase& base, const AxisSpec& axis1, const AxisSpec& axis2,
                            const SweepOptions& options = {}) {
  validate_axis(axis1);
  validate_axis(axis2);
  if (axis1.axis == axis2.axis) throw invalid_axis("axis1 and axis2 must differ");
  if (base.omega_ratio && !(*base.omega_ratio > 0.0)) throw invalid_parameter("omega_ratio must be > 0");
  if (options.epsilon_override) escape::detail::check_epsilon(*options.epsilon_override);

  SweepGrid grid{axis1, axis2, base, options, {}};
  grid.cells.reserve(axis1.count * axis2.count);
  for (std::size_t i = 0; i < axis1.count; ++i) {
    for (std::size_t j = 0; j < axis2.count; ++j) {
      grid.cells.push_back(evaluate_cell(base, axis1, axis1.value(i), axis2, axis2.value(j), options));
    }
  }
  return grid;
}

} // namespace mqt::escape
