#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hybridsim/coherence.hpp"
#include "hybridsim/config.hpp"
#include "hybridsim/csv.hpp"
#include "hybridsim/parallel.hpp"
#include "hybridsim/probe_response.hpp"
#include "hybridsim/time_domain.hpp"

namespace {

using namespace hybridsim;

struct GlobalOpts {
  std::string config_path;
  bool chi_literal = false;
  int threads = 0;
  long seed = 0;  // reserved; the pipeline is deterministic
};

struct Resolved {
  SystemParams params;
  DriveConfig drive;
  GridSpec grid;
  std::string preset_label;
  std::string variant_label;
};

/// Parameter resolution order: preset variant (if any), then config file
/// overrides, then the chi-literal flag already folded into both.
Resolved resolve(const GlobalOpts& g, const std::string& preset_name,
                 const std::string& variant_label) {
  Resolved r;
  r.preset_label = preset_name;
  r.variant_label = variant_label;
  if (!preset_name.empty()) {
    const Preset pre = load_preset(preset_name, g.chi_literal);
    const PresetVariant& v = pre.variant(variant_label);
    r.params = v.params;
    r.drive = v.drive;
    r.grid = pre.grid;
  }
  if (!g.config_path.empty()) {
    const ConfigFile cfg = load_config(g.config_path, r.params, r.drive, g.chi_literal);
    r.params = cfg.params;
    r.drive = cfg.drive;
  }
  const auto diags = validate_params(r.params, r.drive);
  for (const auto& d : diags) {
    std::cerr << (d.severity == Severity::error ? "error: " : "warning: ") << d.message
              << "\n";
  }
  if (has_errors(diags)) throw std::runtime_error("invalid parameter set");
  return r;
}

RunManifest make_manifest(const std::string& command, const Resolved& r,
                          const SteadyState& steady) {
  RunManifest m;
  m.command = command;
  m.preset = r.preset_label;
  m.variant = r.variant_label;
  m.params = r.params;
  m.drive = r.drive;
  m.det = derive_detunings(r.params, r.drive);
  m.steady = steady;
  return m;
}

std::string manifest_path(const std::string& csv_path) {
  return csv_path + ".manifest.json";
}

bool parse_triple(const std::string& s, double& a, double& b, long& c) {
  char extra;
  return std::sscanf(s.c_str(), "%lf,%lf,%ld%c", &a, &b, &c, &extra) == 3;
}

int run_presets() {
  for (const std::string& name : preset_names()) {
    const Preset pre = load_preset(name);
    std::cout << name << ": " << pre.summary << "\n";
  }
  return 0;
}

int run_steady_impl(const GlobalOpts& g, const std::string& preset,
                    const std::string& variant, const std::string& out_path) {
  const Resolved r = resolve(g, preset, variant);
  const SteadyState s = solve_steady_state(r.params, r.drive);
  const BistabilityBranches branches = analyze_branches(r.params, r.drive);

  std::vector<bool> flags(branches.stability_flags.begin(), branches.stability_flags.end());
  const Detunings det = derive_detunings(r.params, r.drive);
  if (!out_path.empty()) {
    write_steady_csv(out_path, s, r.params, det, branches.intensities, flags);
    write_manifest(manifest_path(out_path), make_manifest("steady", r, s));
  }
  std::cout << "re_c0,im_c0,intensity,q0,delta3,residual,n_branches\n";
  std::cout << format_double(s.c0.real()) << ',' << format_double(s.c0.imag()) << ','
            << format_double(s.intensity()) << ',' << format_double(s.q0) << ','
            << format_double(s.delta3) << ',' << format_double(s.residual) << ','
            << s.n_real_roots << "\n";
  return 0;
}

int run_response(const GlobalOpts& g, const std::string& preset, const std::string& variant,
                 const std::string& method_name, const std::string& grid_spec,
                 const std::string& out_path, bool serial) {
  Resolved r = resolve(g, preset, variant);
  if (!grid_spec.empty()) {
    double center, span;
    long npts;
    if (!parse_triple(grid_spec, center, span, npts) || npts < 1) {
      throw CLI::ValidationError("--grid expects center,span,npoints");
    }
    r.grid = GridSpec{center, span, static_cast<int>(npts)};
  }
  ResponseMethod method = ResponseMethod::closed_form;
  if (method_name == "solve") method = ResponseMethod::linear_solve;
  else if (method_name == "both") method = ResponseMethod::both;
  else if (method_name != "closed") throw CLI::ValidationError("--method expects closed|solve|both");

  SweepGrid grid{r.grid.center, r.grid.span, r.grid.npoints};
  const ResponseSweep sweep = sweep_response(r.params, r.drive, grid, method,
                                             serial ? Exec::serial : Exec::parallel);
  write_response_csv(out_path, sweep, r.params.omega_mech);
  RunManifest m = make_manifest("response", r, sweep.steady);
  m.extra["method"] = method_name;
  std::ostringstream gs;
  gs << format_double(grid.center) << ',' << format_double(grid.span) << ',' << grid.npoints;
  m.extra["grid"] = gs.str();
  m.extra["output"] = out_path;
  write_manifest(manifest_path(out_path), m);
  std::cout << "wrote " << sweep.responses.size() << " rows to " << out_path << "\n";
  return 0;
}

int run_g2(const GlobalOpts& g, const std::string& preset, const std::string& variant,
           const std::string& tau_spec, std::optional<double> temperature,
           const std::string& out_path, bool serial) {
  Resolved r = resolve(g, preset, variant);
  if (temperature) r.drive.temperature = *temperature;

  double tau_max = 2e-6;
  long npts = 200;
  bool log_grid = false;
  if (!tau_spec.empty()) {
    std::string spec = tau_spec;
    const auto pos = spec.rfind(",log");
    if (pos != std::string::npos && pos == spec.size() - 4) {
      log_grid = true;
      spec = spec.substr(0, pos);
    }
    char extra;
    if (std::sscanf(spec.c_str(), "%lf,%ld%c", &tau_max, &npts, &extra) != 2 ||
        tau_max <= 0.0 || npts < 1) {
      throw CLI::ValidationError("--tau expects max,npoints[,log]");
    }
  }
  std::vector<double> taus;
  if (log_grid) {
    // Log grid from tau_max/1000 up to tau_max, with tau = 0 prepended.
    taus.push_back(0.0);
    const std::vector<double> exps = linspace_grid(-3.0, 0.0, static_cast<int>(npts) - 1);
    for (double e : exps) taus.push_back(tau_max * std::pow(10.0, e));
  } else {
    taus = linspace_grid(0.0, tau_max, static_cast<int>(npts));
  }

  const SteadyState s = solve_steady_state(r.params, r.drive);
  const Detunings det = derive_detunings(r.params, r.drive);
  CoherenceCalculator calc(s, r.params, r.drive, det);
  CoherenceOptions copts;
  copts.exec = serial ? Exec::serial : Exec::parallel;
  const std::vector<CorrelatorPoint> pts = calc.sweep(taus, copts);

  write_g2_csv(out_path, pts);
  RunManifest m = make_manifest("g2", r, s);
  m.extra["tau"] = tau_spec.empty() ? std::string("2e-06,200") : tau_spec;
  m.extra["output"] = out_path;
  write_manifest(manifest_path(out_path), m);
  std::cout << "wrote " << pts.size() << " rows to " << out_path << "\n";
  return 0;
}

struct ValidateRow {
  std::string preset, variant, quantity;
  double reference, oracle, deviation;
  bool pass;
};

void validate_preset(const GlobalOpts& g, const std::string& name,
                     std::vector<ValidateRow>& rows) {
  const Preset pre = load_preset(name, g.chi_literal);
  for (const PresetVariant& v : pre.variants) {
    const SteadyState freq = solve_steady_state(v.params, v.drive);
    TimeDomainOracle oracle(v.params, v.drive);
    const SteadyState ode = oracle.settle();
    const double dev = std::abs(ode.intensity() - freq.intensity()) /
                       std::max(freq.intensity(), 1e-300);
    rows.push_back({name, v.label, "intensity", freq.intensity(), ode.intensity(), dev,
                    dev <= 1e-3});
  }
  // Probe-response cross-check on the last (full-coupling) variant.
  const PresetVariant& v = pre.variants.back();
  const SteadyState freq = solve_steady_state(v.params, v.drive);
  const Detunings base = derive_detunings(v.params, v.drive);
  TimeDomainOracle oracle(v.params, v.drive);
  // Stay off the grid edges: offset -0.5 would put delta at 0 for the
  // omega_m-centered grids, where the demodulation basis degenerates.
  const std::vector<double> offsets = {-0.4, -0.2, 0.0, 0.2, 0.4};
  for (double o : offsets) {
    const double delta = pre.grid.center + o * pre.grid.span;
    Detunings det = base;
    det.delta = delta;
    const ProbeResponse pr = response_linear_solve(freq, v.params, det, v.drive.epsilon);
    const DemodulationResult dm = oracle.demodulate(delta);
    const double dev = std::abs(dm.c_minus - pr.c_minus) / std::max(std::abs(pr.c_minus), 1e-300);
    rows.push_back({name, v.label, "c_minus@" + format_double(delta), std::abs(pr.c_minus),
                    std::abs(dm.c_minus), dev, dev <= 1e-3});
  }
}

int run_validate(const GlobalOpts& g, const std::string& preset, const std::string& out_path) {
  std::vector<ValidateRow> rows;
  if (preset == "all") {
    for (const std::string& name : preset_names()) validate_preset(g, name, rows);
  } else {
    validate_preset(g, preset, rows);
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot open output file: " + out_path);
  out << "preset,variant,quantity,reference,oracle,rel_deviation,pass\n";
  bool all_pass = true;
  for (const ValidateRow& r : rows) {
    out << r.preset << ',' << r.variant << ',' << r.quantity << ','
        << format_double(r.reference) << ',' << format_double(r.oracle) << ','
        << format_double(r.deviation) << ',' << (r.pass ? 1 : 0) << '\n';
    all_pass = all_pass && r.pass;
  }
  std::cout << (all_pass ? "validate: all rows pass" : "validate: FAIL") << " ("
            << rows.size() << " rows, " << out_path << ")\n";
  if (!all_pass) throw std::runtime_error("validation deviations above tolerance");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hybrid cavity-mechanics-qubit simulator"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--config", g.config_path, "JSON parameter file overriding the preset");
  app.add_flag("--chi-literal", g.chi_literal, "read quoted chi values without the 2*pi factor");
  app.add_option("--threads", g.threads, "OpenMP thread count (0 = runtime default)");
  app.add_option("--seed", g.seed, "reserved; the pipeline is deterministic");

  auto* sub_presets = app.add_subcommand("presets", "list named figure presets");

  std::string preset, variant = "iii", out_path;
  auto* sub_steady = app.add_subcommand("steady", "solve the probe-off steady state");
  sub_steady->add_option("--preset", preset, "preset name");
  sub_steady->add_option("--variant", variant, "preset variant label");
  sub_steady->add_option("--out", out_path, "CSV output path");

  std::string method = "closed", grid_spec;
  bool serial = false;
  auto* sub_response = app.add_subcommand("response", "weak-probe transmission sweep");
  sub_response->add_option("--preset", preset, "preset name");
  sub_response->add_option("--variant", variant, "preset variant label");
  sub_response->add_option("--method", method, "closed|solve|both");
  sub_response->add_option("--grid", grid_spec, "center,span,npoints (rad/s)");
  sub_response->add_option("--out", out_path, "CSV output path")->required();
  sub_response->add_flag("--serial", serial, "disable the parallel sweep");

  std::string tau_spec;
  std::optional<double> temperature;
  auto* sub_g2 = app.add_subcommand("g2", "second-order coherence of the output field");
  sub_g2->add_option("--preset", preset, "preset name");
  sub_g2->add_option("--variant", variant, "preset variant label");
  sub_g2->add_option("--tau", tau_spec, "max,npoints[,log] (seconds)");
  sub_g2->add_option("--temperature", temperature, "mechanical bath temperature (K)");
  sub_g2->add_option("--out", out_path, "CSV output path")->required();
  sub_g2->add_flag("--serial", serial, "disable the parallel sweep");

  std::string validate_preset_name = "all";
  auto* sub_validate = app.add_subcommand("validate", "time-domain cross-validation report");
  sub_validate->add_option("--preset", validate_preset_name, "all or a preset name");
  sub_validate->add_option("--out", out_path, "CSV report path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  set_threads(g.threads);

  try {
    if (sub_presets->parsed()) return run_presets();
    if (sub_steady->parsed()) return run_steady_impl(g, preset, variant, out_path);
    if (sub_response->parsed())
      return run_response(g, preset, variant, method, grid_spec, out_path, serial);
    if (sub_g2->parsed())
      return run_g2(g, preset, variant, tau_spec, temperature, out_path, serial);
    if (sub_validate->parsed()) return run_validate(g, validate_preset_name, out_path);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
