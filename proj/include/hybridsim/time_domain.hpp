#pragma once

#include <vector>

#include "hybridsim/params.hpp"
#include "hybridsim/steady_state.hpp"

namespace hybridsim {

/// Semiclassical mean-value trajectory sample: mechanical position/momentum
/// and the complex cavity / qubit-coherence amplitudes in the drive frame.
struct TrajectoryPoint {
  double t = 0.0;
  double q = 0.0;
  double p = 0.0;
  Complex c;
  Complex sigma;
};

struct IntegrationOptions {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  double ramp_periods = 25.0;    // drive turn-on length, in mechanical periods
  double settle_periods = 60.0;  // post-ramp evolution before sampling
  double sample_periods = 8.0;   // length of the demodulation window
  int samples_per_period = 64;
};

/// Demodulated cavity amplitude over the sampling window:
///   c(t) ~ c0 + c_plus e^{+i Delta t} + c_minus e^{-i Delta t}.
struct DemodulationResult {
  Complex c0;
  Complex c_minus;
  Complex c_plus;
  double fit_residual = 0.0;  // rms misfit relative to |c0|
};

/// Stiff time-domain integration of the mean-value Langevin equations with a
/// smooth drive turn-on; the independent oracle for the steady-state and
/// probe-response algebra. sigma_z is held at its configured value.
class TimeDomainOracle {
 public:
  TimeDomainOracle(const SystemParams& params, const DriveConfig& drive,
                   IntegrationOptions opts = {});

  /// Integrate with the probe off and return the final-time state cast as a
  /// SteadyState (residual = max relative drift over the last period).
  SteadyState settle() const;

  /// Integrate with the probe on at detuning delta = omega_p - omega_d and
  /// demodulate the sampled window into dc and sideband amplitudes.
  DemodulationResult demodulate(double delta) const;

  std::vector<TrajectoryPoint> trajectory(bool probe_on, double delta) const;

 private:
  SystemParams params_;
  DriveConfig drive_;
  Detunings det_;
  IntegrationOptions opts_;
};

}  // namespace hybridsim
