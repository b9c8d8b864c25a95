#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "hybridsim/params.hpp"

namespace hybridsim {

/// Probe-off steady state of the mean-field equations on the selected
/// bistability branch.
struct SteadyState {
  Complex c0;            // cavity amplitude
  double q0 = 0.0;       // static displacement, m
  double p0 = 0.0;       // identically zero
  Complex l0;            // qubit coherence
  double delta3 = 0.0;   // radiation-pressure shifted detuning, rad/s
  double residual = 0.0; // relative defect of the self-consistency equation
  int n_real_roots = 1;  // real nonnegative roots of the intensity cubic
  bool ambiguous = false;  // true when 3 real roots exist

  double intensity() const { return std::norm(c0); }
};

struct BistabilityBranches {
  double omega_drive = 0.0;
  std::vector<double> intensities;     // ascending, real nonnegative roots
  std::vector<bool> stability_flags;   // per root
  int selected_index = -1;             // lowest stable branch
};

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Real nonnegative roots of the intensity self-consistency cubic, ascending.
/// Cubic in x = |C0|^2 from Eq-level elimination of the qubit and mechanics;
/// degenerates to a linear equation when chi = 0.
std::vector<double> intensity_roots(const SystemParams& params, const DriveConfig& drive);

/// Steady state on the lowest-intensity stable branch. Throws
/// ConvergenceError when no root passes the residual check.
SteadyState solve_steady_state(const SystemParams& params, const DriveConfig& drive);

/// All branches with linear-stability flags over a drive-frequency scan.
/// Stability: every pole of the fluctuation transfer functions lies in the
/// lower half of the complex frequency plane.
std::vector<BistabilityBranches> bistability_scan(const SystemParams& params,
                                                  const DriveConfig& drive,
                                                  const std::vector<double>& omega_drive_range);

/// Single-frequency branch analysis (used by solve_steady_state and the scan).
BistabilityBranches analyze_branches(const SystemParams& params, const DriveConfig& drive);

}  // namespace hybridsim
