#include "hybridsim/params.hpp"

#include <stdexcept>

namespace hybridsim {

namespace {

// Caption entries are quoted as "X/2pi = v"; internally everything is angular.
double ang(double hz) { return kTwoPi * hz; }

SystemParams cavity_5ghz_qubit_4ghz() {
  SystemParams p;
  p.omega_cavity = ang(5e9);
  p.gamma_cavity = ang(0.5e6);
  p.omega_qubit = ang(4e9);
  p.gamma_qubit = ang(1e6);
  p.omega_mech = ang(8.5e6);
  p.gamma_mech = ang(25.0);
  p.mass = 2e-15;
  p.sigma_z_ss = 1.0;
  return p;
}

SystemParams cavity_5ghz_qubit_49ghz() {
  SystemParams p;
  p.omega_cavity = ang(5e9);
  p.gamma_cavity = ang(5e6);
  p.omega_qubit = ang(4.9e9);
  p.gamma_qubit = ang(2e6);
  p.omega_mech = ang(8.5e6);
  p.gamma_mech = ang(25.0);
  p.mass = 2e-15;
  p.sigma_z_ss = 1.0;
  return p;
}

PresetVariant make_variant(const std::string& label, SystemParams p,
                           const DriveConfig& d, double g_hz, double chi_quoted,
                           double chi_scale) {
  p.g_qubit = ang(g_hz);
  p.chi = chi_scale * chi_quoted;
  return PresetVariant{label, p, d};
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"fig2", "fig3", "fig4a", "fig4b", "fig5", "fig6"};
}

Preset load_preset(const std::string& name, bool chi_literal) {
  const double cs = chi_literal ? 1.0 : kTwoPi;  // scale applied to quoted chi

  Preset pre;
  pre.name = name;

  if (name == "fig2" || name == "fig4a" || name == "fig4b" || name == "fig5" ||
      name == "fig6") {
    SystemParams base = cavity_5ghz_qubit_4ghz();
    DriveConfig d;
    d.omega_drive = ang(4.99e9);
    d.omega_probe = base.omega_mech + d.omega_drive;  // probe at Delta = omega_m
    d.big_omega = (name == "fig6") ? ang(0.22e6) : ang(3.1e6);
    d.epsilon = 0.01 * d.big_omega;
    d.temperature = 0.0;
    pre.params = base;
    pre.drive = d;
    pre.grid = GridSpec{base.omega_mech, 2.0 * base.omega_mech, 2001};

    if (name == "fig4a") {
      pre.summary = "probe gain vs qubit coupling g, mechanics fixed";
      pre.variants = {
          make_variant("i", base, d, 21.7e6, 2.8e-14, cs),
          make_variant("ii", base, d, 31.7e6, 2.8e-14, cs),
          make_variant("iii", base, d, 41.7e6, 2.8e-14, cs),
      };
    } else if (name == "fig4b") {
      pre.summary = "probe gain vs optomechanical coupling chi, qubit fixed";
      pre.variants = {
          make_variant("i", base, d, 41.7e6, 2.0e-14, cs),
          make_variant("ii", base, d, 41.7e6, 2.4e-14, cs),
          make_variant("iii", base, d, 41.7e6, 2.8e-14, cs),
      };
    } else {
      if (name == "fig2") {
        pre.summary = "probe transparency/amplification, strong drive";
      } else if (name == "fig5") {
        pre.summary = "output g2(tau), strong drive (Omega/2pi = 3.1 MHz)";
      } else {
        pre.summary = "output g2(tau), weak drive (Omega/2pi = 0.22 MHz)";
      }
      pre.variants = {
          make_variant("i", base, d, 0.0, 2.8e-14, cs),
          make_variant("ii", base, d, 41.7e6, 0.0, cs),
          make_variant("iii", base, d, 41.7e6, 2.8e-14, cs),
      };
    }
    return pre;
  }

  if (name == "fig3") {
    SystemParams base = cavity_5ghz_qubit_49ghz();
    DriveConfig d;
    d.omega_drive = ang(4.965e9);
    d.omega_probe = d.omega_drive + ang(35e6);  // window center Delta/2pi = 35 MHz
    d.big_omega = ang(0.98e6);
    d.epsilon = 0.01 * d.big_omega;
    d.temperature = 0.0;
    pre.summary = "asymmetric lineshapes at larger g^2/(omega_0-omega_q)";
    pre.params = base;
    pre.drive = d;
    pre.grid = GridSpec{ang(35e6), ang(30e6), 2001};
    pre.variants = {
        make_variant("i", base, d, 30e6, 0.0, cs),
        make_variant("ii", base, d, 0.0, 3.0e-13, cs),
        make_variant("iii", base, d, 30e6, 3.0e-13, cs),
    };
    return pre;
  }

  std::string valid;
  for (const auto& n : preset_names()) valid += (valid.empty() ? "" : ", ") + n;
  throw std::invalid_argument("unknown preset '" + name + "' (valid: " + valid + ")");
}

}  // namespace hybridsim
