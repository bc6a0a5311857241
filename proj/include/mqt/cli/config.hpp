#pragma once

// Run configuration: flat key=value text with '#' comments and two
// sections, [junction] and [run].
//
//   [junction]
//   ej_over_ec = 100      # or ej1/ej2/ein
//   omega_ratio = 2
//   alpha1 = 0.1
//   alpha2 = 0.1
//   bias = 0.95
//
//   [run]
//   axis1 = bias:0.90:0.99:50

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>

#include "mqt/errors.hpp"
#include "mqt/model.hpp"

namespace mqt::cli {

/// Malformed config text, unknown or missing keys, unreadable files.
class config_error : public error {
public:
  using error::error;
};

/// Round-trip exact text form of a double (17 significant digits).
inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

inline double parse_number(std::string_view text, std::string_view key) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw config_error("key '" + std::string(key) + "': '" + t + "' is not a number");
  }
  return v;
}

inline std::size_t parse_count(std::string_view text, std::string_view key) {
  const double v = parse_number(text, key);
  if (!(v >= 0.0) || v != std::floor(v) || v > 1e15) {
    throw config_error("key '" + std::string(key) + "': expected a non-negative integer");
  }
  return static_cast<std::size_t>(v);
}

class Section {
public:
  explicit Section(std::string name) : name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }

  /// False if the key was already present.
  bool insert(const std::string& key, const std::string& value) { return values_.emplace(key, value).second; }

  bool has(const std::string& key) const { return values_.count(key) != 0; }

  const std::string& raw(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw config_error("missing key '" + key + "' in [" + name_ + "]");
    return it->second;
  }

  double number(const std::string& key) const { return parse_number(raw(key), key); }
  double number(const std::string& key, double fallback) const { return has(key) ? number(key) : fallback; }
  std::size_t count(const std::string& key, std::size_t fallback) const {
    return has(key) ? parse_count(raw(key), key) : fallback;
  }
  std::optional<double> optional_number(const std::string& key) const {
    return has(key) ? std::optional<double>(number(key)) : std::nullopt;
  }
  std::optional<std::string> optional_text(const std::string& key) const {
    return has(key) ? std::optional<std::string>(raw(key)) : std::nullopt;
  }

private:
  std::string name_;
  std::map<std::string, std::string> values_;
};

struct RawConfig {
  Section junction{"junction"};
  Section run{"run"};
};

inline const std::set<std::string>& junction_keys() {
  static const std::set<std::string> keys{"ej1",   "ej2",  "ein",        "alpha1",      "alpha2",
                                          "kappa", "bias", "ej_over_ec", "omega_ratio", "j_ratio"};
  return keys;
}

inline const std::set<std::string>& run_keys() {
  static const std::set<std::string> keys{
      "dt",          "n_steps",        "stride",      "theta0",         "psi0",
      "theta_dot0",  "psi_dot0",       "window",      "epsilon",        "axis1",
      "axis2",       "out",            "json_out",    "spectrum_points", "spectrum_half_width_sigma",
      "spectrum_levels", "bounce_bias", "bounce_tol", "drift_steps",    "drift_dt",
      "drift_amplitude"};
  return keys;
}

inline RawConfig parse_config_text(std::string_view text) {
  RawConfig cfg;
  Section* current = nullptr;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  auto where = [&] { return "line " + std::to_string(line_no) + ": "; };
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    if (body.front() == '[') {
      if (body == "[junction]") current = &cfg.junction;
      else if (body == "[run]") current = &cfg.run;
      else throw config_error(where() + "unknown section " + body);
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw config_error(where() + "expected key = value");
    if (current == nullptr) throw config_error(where() + "key outside of a section");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    const auto& allowed = current == &cfg.junction ? junction_keys() : run_keys();
    if (!allowed.count(key)) throw config_error(where() + "unknown key '" + key + "' in [" + current->name() + "]");
    if (!current->insert(key, value)) throw config_error(where() + "duplicate key '" + key + "'");
  }
  return cfg;
}

inline RawConfig load_config(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw config_error("cannot read config file '" + path + "'");
  std::ostringstream text;
  text << file.rdbuf();
  return parse_config_text(text.str());
}

/// Junction parameters plus the omega_ratio they were built from, if any.
struct JunctionSpec {
  model::JunctionParams params;
  std::optional<double> omega_ratio;
};

/// Resolves the [junction] block. Explicit style: ej1, ej2, ein.
/// Ratio style: ej_over_ec, omega_ratio, optional j_ratio = E_J2/E_J1 (default 1).
/// Both styles take alpha1, alpha2, optional kappa (default +1) and bias (default 0).
/// Text errors raise config_error; physical invariant violations raise invalid_parameter.
inline JunctionSpec resolve_junction(const Section& j) {
  const bool explicit_style = j.has("ej1") || j.has("ej2") || j.has("ein");
  const bool ratio_style = j.has("ej_over_ec") || j.has("omega_ratio") || j.has("j_ratio");
  if (explicit_style && ratio_style) {
    throw config_error("[junction] mixes ej1/ej2/ein with ej_over_ec/omega_ratio/j_ratio; use one style");
  }

  JunctionSpec spec;
  auto& p = spec.params;
  p.alpha1 = j.number("alpha1");
  p.alpha2 = j.number("alpha2");
  const double kappa = j.number("kappa", 1.0);
  p.bias = j.number("bias", 0.0);

  if (ratio_style) {
    const double ej = j.number("ej_over_ec");
    const double ratio = j.number("omega_ratio");
    const double j_ratio = j.number("j_ratio", 1.0);
    if (!(j_ratio > 0.0) || !std::isfinite(j_ratio)) throw invalid_parameter("j_ratio must be finite and > 0");
    if (!(ratio > 0.0) || !std::isfinite(ratio)) throw invalid_parameter("omega_ratio must be finite and > 0");
    p.ej1 = ej / (1.0 + j_ratio);
    p.ej2 = ej * j_ratio / (1.0 + j_ratio);
    spec.omega_ratio = ratio;
  } else {
    p.ej1 = j.number("ej1");
    p.ej2 = j.number("ej2");
    p.ein = j.number("ein");
  }

  if (kappa != 1.0 && kappa != -1.0) {
    throw invalid_parameter("kappa must be +1 or -1 (got " + j.raw("kappa") + ")");
  }
  p.kappa = static_cast<int>(kappa);

  if (spec.omega_ratio) {
    // ein_for_omega_ratio needs valid alphas and energies first.
    p.ein = 1.0;
    model::validate(p);
    p.ein = model::ein_for_omega_ratio(p, *spec.omega_ratio);
  }
  model::validate(p);
  return spec;
}

} // namespace mqt::cli
