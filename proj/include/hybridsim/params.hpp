#pragma once

#include <complex>
#include <string>
#include <vector>

namespace hybridsim {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// CODATA values, fixed. Exposed as data so limit tests can read them,
/// never meant to be reassigned in normal operation.
struct PhysicalConstants {
  double hbar = 1.054571817e-34;        // J s
  double k_boltzmann = 1.380649e-23;    // J / K
};

inline constexpr PhysicalConstants kConstants{};

/// Physical parameters of the tripartite system. All frequencies and rates
/// are angular (rad/s); chi is a force per photon (N); mass in kg.
struct SystemParams {
  double omega_cavity = 0.0;
  double omega_qubit = 0.0;
  double omega_mech = 0.0;
  double gamma_cavity = 0.0;
  double gamma_qubit = 0.0;
  double gamma_mech = 0.0;
  double mass = 0.0;
  double chi = 0.0;      // cavity-mechanics coupling, N per photon
  double g_qubit = 0.0;  // cavity-qubit coupling, rad/s
  double sigma_z_ss = 1.0;

  bool operator==(const SystemParams&) const = default;
};

/// Drive and probe tones plus the mechanical bath temperature.
/// big_omega and epsilon are real and nonnegative: global phases are
/// absorbed into the field definitions.
struct DriveConfig {
  double omega_drive = 0.0;
  double omega_probe = 0.0;
  double big_omega = 0.0;  // drive amplitude, rad/s
  double epsilon = 0.0;    // probe amplitude, rad/s
  double temperature = 0.0;  // K

  bool operator==(const DriveConfig&) const = default;
};

struct Detunings {
  double delta1 = 0.0;  // omega_cavity - omega_drive
  double delta2 = 0.0;  // omega_qubit  - omega_drive
  double delta = 0.0;   // omega_probe  - omega_drive

  bool operator==(const Detunings&) const = default;
};

Detunings derive_detunings(const SystemParams& params, const DriveConfig& drive);

enum class Severity { error, warning };

struct Diagnostic {
  Severity severity;
  std::string message;
};

/// Invariant violations are errors, soft limits (probe/drive ratio, probe on
/// during a statistics run) are warnings. An empty list means clean.
std::vector<Diagnostic> validate_params(const SystemParams& params,
                                        const DriveConfig& drive);

bool has_errors(const std::vector<Diagnostic>& diags);

/// One labelled parameter override of a figure preset, e.g. curve (iii).
struct PresetVariant {
  std::string label;
  SystemParams params;
  DriveConfig drive;

  bool operator==(const PresetVariant&) const = default;
};

/// Default frequency grid a preset is plotted over.
struct GridSpec {
  double center = 0.0;  // rad/s
  double span = 0.0;    // full width, rad/s
  int npoints = 2001;

  bool operator==(const GridSpec&) const = default;
};

struct Preset {
  std::string name;
  std::string summary;
  SystemParams params;  // base parameters (variant-independent)
  DriveConfig drive;
  std::vector<PresetVariant> variants;
  GridSpec grid;

  const PresetVariant& variant(const std::string& label) const;

  bool operator==(const Preset&) const = default;
};

/// Named figure presets: fig2, fig3, fig4a, fig4b, fig5, fig6.
/// chi_literal = true reads caption "chi/2pi = v" entries as chi = v instead
/// of chi = 2*pi*v (the 2pi reading is the default, applied uniformly with
/// the other caption entries).
Preset load_preset(const std::string& name, bool chi_literal = false);

std::vector<std::string> preset_names();

}  // namespace hybridsim
