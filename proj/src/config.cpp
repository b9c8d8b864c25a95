#include "hybridsim/config.hpp"

#include <fstream>
#include <set>

#include "json.hpp"

namespace hybridsim {

namespace {

using nlohmann::json;

double scaled(const json& v, bool angular, bool frequency_like) {
  const double raw = v.get<double>();
  return (frequency_like && !angular) ? kTwoPi * raw : raw;
}

void check_keys(const json& obj, const std::set<std::string>& allowed,
                const std::string& section) {
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) {
      throw ConfigError("unknown key '" + key + "' in section '" + section + "'");
    }
  }
}

}  // namespace

ConfigFile load_config(const std::string& path, const SystemParams& base_params,
                       const DriveConfig& base_drive, bool chi_literal) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("config parse error in " + path + ": " + e.what());
  }
  check_keys(j, {"angular", "system", "drive"}, "<root>");
  const bool angular = j.value("angular", false);

  ConfigFile cfg;
  cfg.params = base_params;
  cfg.drive = base_drive;

  if (j.contains("system")) {
    cfg.has_system = true;
    const json& s = j["system"];
    check_keys(s,
               {"omega_cavity", "omega_qubit", "omega_mech", "gamma_cavity",
                "gamma_qubit", "gamma_mech", "mass", "chi", "g_qubit", "sigma_z_ss"},
               "system");
    if (s.contains("omega_cavity")) cfg.params.omega_cavity = scaled(s["omega_cavity"], angular, true);
    if (s.contains("omega_qubit")) cfg.params.omega_qubit = scaled(s["omega_qubit"], angular, true);
    if (s.contains("omega_mech")) cfg.params.omega_mech = scaled(s["omega_mech"], angular, true);
    if (s.contains("gamma_cavity")) cfg.params.gamma_cavity = scaled(s["gamma_cavity"], angular, true);
    if (s.contains("gamma_qubit")) cfg.params.gamma_qubit = scaled(s["gamma_qubit"], angular, true);
    if (s.contains("gamma_mech")) cfg.params.gamma_mech = scaled(s["gamma_mech"], angular, true);
    if (s.contains("mass")) cfg.params.mass = s["mass"].get<double>();
    if (s.contains("chi")) cfg.params.chi = scaled(s["chi"], angular || chi_literal, true);
    if (s.contains("g_qubit")) cfg.params.g_qubit = scaled(s["g_qubit"], angular, true);
    if (s.contains("sigma_z_ss")) cfg.params.sigma_z_ss = s["sigma_z_ss"].get<double>();
  }

  if (j.contains("drive")) {
    cfg.has_drive = true;
    const json& d = j["drive"];
    check_keys(d, {"omega_drive", "omega_probe", "big_omega", "epsilon", "temperature"},
               "drive");
    if (d.contains("omega_drive")) cfg.drive.omega_drive = scaled(d["omega_drive"], angular, true);
    if (d.contains("omega_probe")) cfg.drive.omega_probe = scaled(d["omega_probe"], angular, true);
    if (d.contains("big_omega")) cfg.drive.big_omega = scaled(d["big_omega"], angular, true);
    if (d.contains("epsilon")) cfg.drive.epsilon = scaled(d["epsilon"], angular, true);
    if (d.contains("temperature")) cfg.drive.temperature = d["temperature"].get<double>();
  }

  return cfg;
}

}  // namespace hybridsim
