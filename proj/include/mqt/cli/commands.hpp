#pragma once

// Subcommands of the `mqt` tool. run() is the whole CLI; main() only forwards argv.
//
// Exit codes: 0 ok, 1 verify failure, 2 config/usage, 3 invariant violation,
// 4 numerical failure, 5 no barrier, 6 bad sweep axis.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mqt/cli/config.hpp"
#include "mqt/dynamics.hpp"
#include "mqt/errors.hpp"
#include "mqt/escape.hpp"
#include "mqt/model.hpp"
#include "mqt/sweep.hpp"
#include "mqt/verify.hpp"

namespace mqt::cli {

enum ExitCode : int {
  kOk = 0,
  kVerifyFailed = 1,
  kConfigError = 2,
  kInvariant = 3,
  kNumeric = 4,
  kNoBarrier = 5,
  kBadAxis = 6,
};

struct Options {
  std::string config_path;
  bool json = false;
  std::optional<std::string> out;
  std::optional<std::size_t> stride;
  bool seedless = false;
  std::string fault;
};

using nlohmann::ordered_json;

namespace detail {

/// key=value lines, one per entry, insertion order.
class KeyValueReport {
public:
  void add(const std::string& key, double value) { entries_.emplace_back(key, format_number(value)); json_[key] = value; }
  void add(const std::string& key, bool value) {
    entries_.emplace_back(key, value ? "1" : "0");
    json_[key] = value;
  }
  void add(const std::string& key, int value) {
    entries_.emplace_back(key, std::to_string(value));
    json_[key] = value;
  }

  void write(std::ostream& out, bool as_json) const {
    if (as_json) {
      out << json_.dump(2) << '\n';
      return;
    }
    for (const auto& [k, v] : entries_) out << k << '=' << v << '\n';
  }

private:
  std::vector<std::pair<std::string, std::string>> entries_;
  ordered_json json_ = ordered_json::object();
};

inline void add_params(KeyValueReport& r, const model::JunctionParams& p) {
  r.add("ej1", p.ej1);
  r.add("ej2", p.ej2);
  r.add("ein", p.ein);
  r.add("alpha1", p.alpha1);
  r.add("alpha2", p.alpha2);
  r.add("kappa", p.kappa);
  r.add("bias", p.bias);
}

inline void add_escape(KeyValueReport& r, const std::string& prefix, const escape::EscapeResult& e) {
  r.add(prefix + ".omega_p_i", e.omega_p_i);
  r.add(prefix + ".theta0", e.theta0);
  r.add(prefix + ".v0", e.v0);
  r.add(prefix + ".exponent_b", e.exponent_b);
  r.add(prefix + ".ln_prefactor", e.ln_prefactor);
  r.add(prefix + ".ln_gamma", e.ln_gamma);
}

inline ordered_json params_json(const model::JunctionParams& p, std::optional<double> omega_ratio) {
  ordered_json j;
  j["ej1"] = p.ej1;
  j["ej2"] = p.ej2;
  j["ein"] = p.ein;
  j["alpha1"] = p.alpha1;
  j["alpha2"] = p.alpha2;
  j["kappa"] = p.kappa;
  j["bias"] = p.bias;
  j["omega_ratio"] = omega_ratio ? ordered_json(*omega_ratio) : ordered_json(nullptr);
  return j;
}

inline std::ofstream open_output(const std::string& path) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw config_error("cannot write output file '" + path + "'");
  return file;
}

/// "name:min:max:count"
inline escape::AxisSpec parse_axis_spec(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(trim(part));
  if (parts.size() != 4) throw invalid_axis("axis spec '" + text + "' must be name:min:max:count");
  escape::AxisSpec a;
  a.axis = escape::parse_axis(parts[0]);
  try {
    a.min = parse_number(parts[1], "axis min");
    a.max = parse_number(parts[2], "axis max");
    a.count = parse_count(parts[3], "axis count");
  } catch (const config_error& e) {
    throw invalid_axis("axis spec '" + text + "': " + e.what());
  }
  return a;
}

/// Escape quantities use E_J1 + E_J2 even when the channels enter with
/// opposite sign; the tilt reading for kappa = -1 is unsettled.
inline void note_kappa(const model::JunctionParams& p, std::ostream& err) {
  if (p.kappa == -1) err << "note: kappa = -1 results are provisional (tilt scale |E_J1 - E_J2| vs E_J1 + E_J2)\n";
}
} // namespace detail

inline int cmd_derive(const RawConfig& cfg, const Options& opt, std::ostream& out, std::ostream& err) {
  const auto spec = resolve_junction(cfg.junction);
  detail::note_kappa(spec.params, err);
  const auto d = model::derive(spec.params);
  const auto renorm = escape::epsilon(spec.params);

  detail::KeyValueReport r;
  detail::add_params(r, spec.params);
  r.add("lambda_cap", d.lambda_cap);
  r.add("ej_sum", d.ej_sum);
  r.add("ej_tilt", d.ej_tilt);
  r.add("omega_p", d.omega_p);
  r.add("omega_p1", d.omega_p1);
  r.add("omega_p2", d.omega_p2);
  r.add("omega_jl", d.omega_jl);
  r.add("omega_ratio", d.omega_p / d.omega_jl);
  r.add("m_cm", d.m_cm);
  r.add("m_rlt", d.m_rlt);
  r.add("g_plus", d.g_plus);
  r.add("g_minus", d.g_minus);
  r.add("psi_variance", renorm.psi_variance);
  r.add("epsilon", renorm.epsilon);
  r.add("epsilon_scale_form", renorm.epsilon_scale_form);
  r.add("epsilon_valid", renorm.valid);
  r.add("epsilon_strained", renorm.strained);
  r.write(out, opt.json);
  return kOk;
}

namespace detail {
/// Re-runs a thinned simulation step by step in bounded chunks so that the
/// switching time does not depend on the output stride.
inline std::optional<double> switching_at_full_resolution(const dynamics::PhaseState& start, double dt,
                                                          std::size_t n_steps, const model::JunctionParams& params,
                                                          double window) {
  constexpr std::size_t kChunk = 1 << 16;
  auto state = start;
  for (std::size_t done = 0; done < n_steps;) {
    const std::size_t m = std::min(kChunk, n_steps - done);
    const auto part = dynamics::integrate(state, dt, m, params);
    for (const auto& s : part.states()) {
      if (s.theta - start.theta > window) return s.tau;
    }
    state = part.states().back();
    done += m;
  }
  return std::nullopt;
}
} // namespace detail

inline int cmd_simulate(const RawConfig& cfg, const Options& opt, std::ostream& out, std::ostream& err) {
  const auto spec = resolve_junction(cfg.junction);
  const auto& run = cfg.run;
  const double dt = run.number("dt", 1e-3);
  const std::size_t n_steps = run.count("n_steps", 10000);
  const std::size_t stride = opt.stride ? *opt.stride : run.count("stride", 1);
  const double window = run.number("window", 2.0 * std::numbers::pi);
  const dynamics::PhaseState start{run.number("theta0", 0.0), run.number("psi0", 0.0),
                                   run.number("theta_dot0", 0.0), run.number("psi_dot0", 0.0), 0.0};

  const auto traj = dynamics::integrate(start, dt, n_steps, spec.params, stride);
  const double lambda_cap = model::derive(spec.params).lambda_cap;

  std::ostringstream csv;
  csv << "tau,theta,psi,theta_dot,psi_dot,energy,reduced_voltage\n";
  const auto states = traj.states();
  const auto energy = traj.energy();
  for (std::size_t k = 0; k < states.size(); ++k) {
    const auto& s = states[k];
    csv << format_number(s.tau) << ',' << format_number(s.theta) << ',' << format_number(s.psi) << ','
        << format_number(s.theta_dot) << ',' << format_number(s.psi_dot) << ',' << format_number(energy[k]) << ','
        << format_number(s.theta_dot / lambda_cap) << '\n';
  }
  double max_drift = 0.0;
  for (double e : energy) max_drift = std::max(max_drift, std::abs(e - energy.front()));
  csv << "# max_energy_drift=" << format_number(max_drift) << '\n';
  csv << "# max_relative_energy_drift=" << format_number(traj.max_relative_energy_drift()) << '\n';
  if (const auto tau = stride == 1 ? dynamics::detect_switching(traj, window)
                                   : detail::switching_at_full_resolution(start, dt, n_steps, spec.params, window)) {
    csv << "# switch_tau=" << format_number(*tau) << '\n';
  }

  const auto path = opt.out ? opt.out : run.optional_text("out");
  if (path) {
    auto file = detail::open_output(*path);
    file << csv.str();
    err << "wrote " << states.size() << " samples to " << *path << '\n';
  } else {
    out << csv.str();
  }
  return kOk;
}

inline int cmd_escape(const RawConfig& cfg, const Options& opt, std::ostream& out, std::ostream& err) {
  const auto spec = resolve_junction(cfg.junction);
  detail::note_kappa(spec.params, err);
  const auto renorm = escape::epsilon(spec.params);
  const auto forced = cfg.run.optional_number("epsilon");
  const double eps = forced ? *forced : renorm.epsilon;
  if (!(eps < 1.0)) {
    throw no_barrier("epsilon " + format_number(eps) + " >= 1 removes the barrier");
  }
  if (eps > escape::kEpsilonStrainThreshold) {
    err << "warning: epsilon " << format_number(eps) << " exceeds " << escape::kEpsilonStrainThreshold
        << "; the psi^2 expansion is strained\n";
  }

  const auto corrected = escape::escape_rate_ln(spec.params, eps);
  const auto bare = escape::escape_rate_ln(spec.params, 0.0);
  const double ln_ratio = eps == 0.0 ? 0.0 : corrected.ln_gamma - bare.ln_gamma;

  detail::KeyValueReport r;
  detail::add_params(r, spec.params);
  r.add("epsilon", eps);
  r.add("epsilon_forced", forced.has_value());
  detail::add_escape(r, "corrected", corrected);
  detail::add_escape(r, "bare", bare);
  r.add("ln_ratio", ln_ratio);
  if (std::abs(ln_ratio) < 700.0) r.add("ratio", std::exp(ln_ratio));
  r.write(out, opt.json);
  return kOk;
}

inline int cmd_sweep(const RawConfig& cfg, const Options& opt, std::ostream& out, std::ostream& err) {
  const auto spec = resolve_junction(cfg.junction);
  detail::note_kappa(spec.params, err);
  const auto axis1 = detail::parse_axis_spec(cfg.run.raw("axis1"));
  const auto axis2 = detail::parse_axis_spec(cfg.run.raw("axis2"));
  escape::SweepOptions options;
  options.epsilon_override = cfg.run.optional_number("epsilon");

  const auto grid = escape::sweep_grid({spec.params, spec.omega_ratio}, axis1, axis2, options);

  const std::string csv_path = opt.out ? *opt.out : cfg.run.optional_text("out").value_or("sweep.csv");
  std::string json_path;
  if (const auto j = cfg.run.optional_text("json_out")) {
    json_path = *j;
  } else {
    json_path = std::filesystem::path(csv_path).replace_extension(".json").string();
  }

  std::ostringstream csv;
  csv << "axis1,axis2,ln_ratio,valid\n";
  for (const auto& c : grid.cells) {
    csv << format_number(c.axis1) << ',' << format_number(c.axis2) << ',' << format_number(c.ln_ratio) << ','
        << (c.valid ? 1 : 0) << '\n';
  }

  auto axis_json = [](const escape::AxisSpec& a) {
    ordered_json j;
    j["name"] = std::string(escape::axis_name(a.axis));
    j["min"] = a.min;
    j["max"] = a.max;
    j["count"] = a.count;
    return j;
  };
  ordered_json doc;
  doc["axis1"] = axis_json(axis1);
  doc["axis2"] = axis_json(axis2);
  doc["fixed"] = detail::params_json(spec.params, spec.omega_ratio);
  doc["epsilon_override"] =
      options.epsilon_override ? ordered_json(*options.epsilon_override) : ordered_json(nullptr);
  doc["order"] = "row-major, axis1 outer";
  doc["valid_count"] = grid.valid_count();
  ordered_json cells = ordered_json::array();
  for (const auto& c : grid.cells) {
    ordered_json cell;
    cell["axis1"] = c.axis1;
    cell["axis2"] = c.axis2;
    cell["ln_ratio"] = c.valid ? ordered_json(c.ln_ratio) : ordered_json(nullptr);
    cell["epsilon"] = std::isfinite(c.epsilon) ? ordered_json(c.epsilon) : ordered_json(nullptr);
    cell["valid"] = c.valid;
    cells.push_back(std::move(cell));
  }
  doc["cells"] = std::move(cells);

  {
    auto file = detail::open_output(csv_path);
    file << csv.str();
  }
  {
    auto file = detail::open_output(json_path);
    file << doc.dump(2) << '\n';
  }

  if (grid.valid_count() == 0) err << "warning: no valid cells (bias >= 1 - epsilon everywhere)\n";
  out << "wrote " << csv_path << " and " << json_path << " (" << grid.valid_count() << '/' << grid.cells.size()
      << " valid cells)\n";
  return kOk;
}

inline int cmd_verify(const RawConfig& cfg, const Options& opt, std::ostream& out) {
  const auto spec = resolve_junction(cfg.junction);
  const auto& run = cfg.run;
  oracle::VerifySettings s;
  s.spectrum_points = run.count("spectrum_points", s.spectrum_points);
  s.spectrum_half_width_sigma = run.number("spectrum_half_width_sigma", s.spectrum_half_width_sigma);
  s.spectrum_levels = run.count("spectrum_levels", s.spectrum_levels);
  s.bounce_bias = run.number("bounce_bias", s.bounce_bias);
  s.bounce_tol = run.number("bounce_tol", s.bounce_tol);
  s.drift_steps = run.count("drift_steps", s.drift_steps);
  s.drift_dt = run.number("drift_dt", s.drift_dt);
  s.drift_amplitude = run.number("drift_amplitude", s.drift_amplitude);
  if (opt.fault == "g_plus_sign") {
    s.fault_flip_g_plus = true;
  } else if (!opt.fault.empty()) {
    throw config_error("unknown fault '" + opt.fault + "'");
  }

  const auto rows = oracle::run_verification(spec.params, s);
  const bool ok = oracle::all_passed(rows);
  if (opt.json) {
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows) {
      ordered_json j;
      j["check"] = r.name;
      j["computed"] = std::isfinite(r.computed) ? ordered_json(r.computed) : ordered_json(nullptr);
      j["reference"] = std::isfinite(r.reference) ? ordered_json(r.reference) : ordered_json(nullptr);
      j["tolerance"] = r.tolerance;
      j["status"] = r.passed ? "pass" : "fail";
      if (!r.note.empty()) j["note"] = r.note;
      arr.push_back(std::move(j));
    }
    out << arr.dump(2) << '\n';
  } else {
    out << std::left << std::setw(24) << "check" << std::setw(26) << "computed" << std::setw(26) << "reference"
        << std::setw(10) << "tolerance" << "  status\n";
    for (const auto& r : rows) {
      std::ostringstream tol;
      tol << std::setprecision(1) << std::scientific << r.tolerance;
      out << std::left << std::setw(24) << r.name << std::setw(26) << format_number(r.computed) << std::setw(26)
          << format_number(r.reference) << std::setw(10) << tol.str() << "  " << (r.passed ? "pass" : "FAIL");
      if (!r.note.empty()) out << "  (" << r.note << ')';
      out << '\n';
    }
    out << (ok ? "all checks passed\n" : "verification FAILED\n");
  }
  return ok ? kOk : kVerifyFailed;
}

/// Full command line. args[0] is the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Macroscopic quantum tunneling in two-channel Josephson junctions", "mqt"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config_path, "Config file ([junction] and [run] sections)")->required();
    sub->add_flag("--json", opt.json, "JSON output instead of key=value");
    sub->add_option("--out", opt.out, "Output path");
    sub->add_option("--stride", opt.stride, "Keep every n-th integration step")->check(CLI::PositiveNumber);
    sub->add_flag("--seedless", opt.seedless, "Reserved (the tool uses no random numbers)");
  };
  auto* derive = app.add_subcommand("derive", "Print derived scales, <psi^2> and epsilon");
  auto* simulate = app.add_subcommand("simulate", "Integrate the classical phase dynamics to CSV");
  auto* escape_cmd = app.add_subcommand("escape", "Corrected and bare escape rates at one point");
  auto* sweep = app.add_subcommand("sweep", "ln(Gamma/Gamma0) over a 2-D parameter grid to CSV + JSON");
  auto* verify = app.add_subcommand("verify", "Run the oracle checks");
  for (auto* sub : {derive, simulate, escape_cmd, sweep, verify}) add_common(sub);
  verify->add_option("--inject-fault", opt.fault, "Test hook")->group("");

  std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  try {
    if (opt.seedless) throw config_error("--seedless is reserved and not accepted");
    const auto cfg = load_config(opt.config_path);
    if (derive->parsed()) return cmd_derive(cfg, opt, out, err);
    if (simulate->parsed()) return cmd_simulate(cfg, opt, out, err);
    if (escape_cmd->parsed()) return cmd_escape(cfg, opt, out, err);
    if (sweep->parsed()) return cmd_sweep(cfg, opt, out, err);
    return cmd_verify(cfg, opt, out);
  } catch (const config_error& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const invalid_axis& e) {
    err << "axis error: " << e.what() << '\n';
    return kBadAxis;
  } catch (const no_barrier& e) {
    err << "no barrier: " << e.what() << '\n';
    return kNoBarrier;
  } catch (const invalid_parameter& e) {
    err << "invalid parameter: " << e.what() << '\n';
    return kInvariant;
  } catch (const domain_error& e) {
    err << "invalid parameter: " << e.what() << '\n';
    return kInvariant;
  } catch (const error& e) {
    err << "numerical error: " << e.what() << '\n';
    return kNumeric;
  }
}

} // namespace mqt::cli
