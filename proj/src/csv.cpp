#include "hybridsim/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace hybridsim {

namespace {

using nlohmann::ordered_json;

ordered_json params_json(const SystemParams& p) {
  return ordered_json{{"omega_cavity", p.omega_cavity},
                      {"omega_qubit", p.omega_qubit},
                      {"omega_mech", p.omega_mech},
                      {"gamma_cavity", p.gamma_cavity},
                      {"gamma_qubit", p.gamma_qubit},
                      {"gamma_mech", p.gamma_mech},
                      {"mass", p.mass},
                      {"chi", p.chi},
                      {"g_qubit", p.g_qubit},
                      {"sigma_z_ss", p.sigma_z_ss}};
}

ordered_json drive_json(const DriveConfig& d) {
  return ordered_json{{"omega_drive", d.omega_drive},
                      {"omega_probe", d.omega_probe},
                      {"big_omega", d.big_omega},
                      {"epsilon", d.epsilon},
                      {"temperature", d.temperature}};
}

std::ofstream open_or_throw(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  return out;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string RunManifest::to_json() const {
  ordered_json j;
  j["tool"] = "hybridsim";
  j["version"] = "1.0.0";
  j["command"] = command;
  if (!preset.empty()) j["preset"] = preset;
  if (!variant.empty()) j["variant"] = variant;
  j["system"] = params_json(params);
  j["drive"] = drive_json(drive);
  j["detunings"] = ordered_json{
      {"delta1", det.delta1}, {"delta2", det.delta2}, {"delta", det.delta}};
  j["steady_state"] = ordered_json{{"re_c0", steady.c0.real()},
                                   {"im_c0", steady.c0.imag()},
                                   {"intensity", steady.intensity()},
                                   {"q0", steady.q0},
                                   {"delta3", steady.delta3},
                                   {"residual", steady.residual},
                                   {"n_real_roots", steady.n_real_roots}};
  for (const auto& [k, v] : extra) j[k] = v;
  return j.dump(2);
}

void write_manifest(const std::string& path, const RunManifest& manifest) {
  std::ofstream out = open_or_throw(path);
  out << manifest.to_json() << "\n";
}

void write_response_csv(const std::string& path, const ResponseSweep& sweep,
                        double omega_mech) {
  std::ofstream out = open_or_throw(path);
  out << "delta_rad_s,delta_norm,mu_p,nu_p,re_c_minus,im_c_minus,re_c_plus,"
         "im_c_plus,method_deviation\n";
  for (std::size_t i = 0; i < sweep.detuning_grid.size(); ++i) {
    const double d = sweep.detuning_grid[i];
    const ProbeResponse& r = sweep.responses[i];
    out << format_double(d) << ',' << format_double((d - omega_mech) / omega_mech) << ','
        << format_double(r.mu_p) << ',' << format_double(r.nu_p) << ','
        << format_double(r.c_minus.real()) << ',' << format_double(r.c_minus.imag()) << ','
        << format_double(r.c_plus.real()) << ',' << format_double(r.c_plus.imag()) << ','
        << format_double(r.method_deviation) << '\n';
  }
}

void write_g2_csv(const std::string& path, const std::vector<CorrelatorPoint>& points) {
  std::ofstream out = open_or_throw(path);
  out << "tau_s,g2,y14,re_y13,im_y13,re_y12,im_y12,quad_err\n";
  for (const CorrelatorPoint& pt : points) {
    out << format_double(pt.tau) << ',' << format_double(pt.g2) << ','
        << format_double(pt.y14) << ',' << format_double(pt.y13.real()) << ','
        << format_double(pt.y13.imag()) << ',' << format_double(pt.y12.real()) << ','
        << format_double(pt.y12.imag()) << ',' << format_double(pt.quad_err) << '\n';
  }
}

void write_steady_csv(const std::string& path, const SteadyState& steady,
                      const SystemParams& params, const Detunings& det,
                      const std::vector<double>& all_intensities,
                      const std::vector<bool>& stability) {
  (void)params;
  (void)det;
  std::ofstream out = open_or_throw(path);
  out << "re_c0,im_c0,intensity,q0,delta3,residual,n_branches,branch_intensities,"
         "branch_stability\n";
  out << format_double(steady.c0.real()) << ',' << format_double(steady.c0.imag()) << ','
      << format_double(steady.intensity()) << ',' << format_double(steady.q0) << ','
      << format_double(steady.delta3) << ',' << format_double(steady.residual) << ','
      << all_intensities.size() << ',';
  for (std::size_t i = 0; i < all_intensities.size(); ++i) {
    if (i) out << ';';
    out << format_double(all_intensities[i]);
  }
  out << ',';
  for (std::size_t i = 0; i < stability.size(); ++i) {
    if (i) out << ';';
    out << (stability[i] ? 1 : 0);
  }
  out << '\n';
}

}  // namespace hybridsim
