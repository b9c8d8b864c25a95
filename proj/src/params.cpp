#include "hybridsim/params.hpp"

#include <cmath>
#include <stdexcept>

namespace hybridsim {

Detunings derive_detunings(const SystemParams& params, const DriveConfig& drive) {
  Detunings d;
  d.delta1 = params.omega_cavity - drive.omega_drive;
  d.delta2 = params.omega_qubit - drive.omega_drive;
  d.delta = drive.omega_probe - drive.omega_drive;
  return d;
}

namespace {

void require_positive(std::vector<Diagnostic>& out, double v, const char* name) {
  if (!(v > 0.0)) {
    out.push_back({Severity::error, std::string(name) + " must be positive"});
  }
}

}  // namespace

std::vector<Diagnostic> validate_params(const SystemParams& p, const DriveConfig& d) {
  std::vector<Diagnostic> out;
  require_positive(out, p.omega_cavity, "omega_cavity");
  require_positive(out, p.omega_qubit, "omega_qubit");
  require_positive(out, p.omega_mech, "omega_mech");
  require_positive(out, p.gamma_cavity, "gamma_cavity");
  require_positive(out, p.gamma_qubit, "gamma_qubit");
  require_positive(out, p.gamma_mech, "gamma_mech");
  require_positive(out, p.mass, "mass");
  if (p.chi < 0.0) out.push_back({Severity::error, "chi must be nonnegative"});
  if (p.g_qubit < 0.0) out.push_back({Severity::error, "g_qubit must be nonnegative"});
  if (!(p.sigma_z_ss >= -1.0 && p.sigma_z_ss <= 1.0)) {
    out.push_back({Severity::error, "sigma_z_ss must lie in [-1, 1]"});
  }
  if (d.big_omega < 0.0) out.push_back({Severity::error, "big_omega must be nonnegative"});
  if (d.epsilon < 0.0) out.push_back({Severity::error, "epsilon must be nonnegative"});
  if (d.temperature < 0.0) out.push_back({Severity::error, "temperature must be nonnegative"});
  if (d.epsilon > 0.0 && d.big_omega > 0.0 && d.epsilon / d.big_omega > 0.1) {
    out.push_back({Severity::warning, "probe not weak relative to drive (epsilon/big_omega > 0.1)"});
  }
  return out;
}

bool has_errors(const std::vector<Diagnostic>& diags) {
  for (const auto& d : diags) {
    if (d.severity == Severity::error) return true;
  }
  return false;
}

const PresetVariant& Preset::variant(const std::string& label) const {
  for (const auto& v : variants) {
    if (v.label == label) return v;
  }
  std::string valid;
  for (const auto& v : variants) valid += (valid.empty() ? "" : ", ") + v.label;
  throw std::invalid_argument("preset '" + name + "' has no variant '" + label +
                              "' (valid: " + valid + ")");
}

}  // namespace hybridsim
