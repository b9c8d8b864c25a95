#pragma once

#include <utility>
#include <vector>

#include "hybridsim/params.hpp"
#include "hybridsim/steady_state.hpp"

namespace hybridsim {

/// Mechanical thermal bath.
struct NoiseModel {
  double temperature = 0.0;  // K
  double gamma_mech = 0.0;   // rad/s
  double mass = 0.0;         // kg
};

/// Spectral weight N(omega) of the thermal Langevin force.
/// omega = 0 and T = 0 are handled by their analytic limits.
double thermal_spectrum(const NoiseModel& noise, double omega);

/// Sign convention of the (Lambda1 x Lambda3) cross term in the spectral
/// denominator E(omega). `validated` is the form confirmed against the direct
/// linear solve of the fluctuation system; `as_printed` keeps the minus sign
/// of the published expression for reference.
enum class ESign { validated, as_printed };

/// Frequency-dependent building blocks of the fluctuation solution at a
/// single omega: the Lambda-set (the probe-response lambdas with the probe
/// detuning replaced by omega) and the E, F, R, S, T combinations.
struct FrequencyCoeffs {
  Complex lambda1, lambda2, lambda3;
  Complex lambda1_plus, lambda2_plus;
  Complex e, f, r, s, t;
  Complex m_reduced;  // omega_m^2 - i gamma_m omega - omega^2
};

FrequencyCoeffs frequency_coeffs(const SteadyState& steady, const SystemParams& params,
                                 const Detunings& det, double omega,
                                 ESign esign = ESign::validated);

/// Linear maps from the input noises (c_in, c_in^dag, d_in, d_in^dag, xi)
/// to the intracavity field fluctuation at omega.
struct TransferCoeffs {
  Complex c1, c2, c3, c4, c5;
};

TransferCoeffs transfer_coeffs(const SteadyState& steady, const SystemParams& params,
                               const Detunings& det, double omega,
                               ESign esign = ESign::validated);

/// Ground-truth oracle: assembles and solves the 6x6 frequency-domain
/// fluctuation system directly, without the closed-form coefficient
/// expressions.
TransferCoeffs transfer_linear_solve(const SteadyState& steady, const SystemParams& params,
                                     const Detunings& det, double omega);

/// Output-field coefficients: static coherent amplitude b0 plus the noise
/// transfer set b1..b5.
struct OutputCoeffs {
  Complex b0;
  Complex b1, b2, b3, b4, b5;
};

OutputCoeffs output_coeffs(const SteadyState& steady, const SystemParams& params,
                           const DriveConfig& drive, const Detunings& det, double omega,
                           ESign esign = ESign::validated);

/// Complex poles of the fluctuation transfer functions: roots of the
/// polynomial obtained by clearing all denominators of E(omega). The system
/// is linearly stable iff every pole has negative imaginary part.
std::vector<Complex> transfer_poles(const SystemParams& params, const Detunings& det,
                                    double intensity);

bool poles_stable(const std::vector<Complex>& poles);

/// Pointwise spectral kernels entering the y-integrals of g2(tau).
/// y13 and y14 share one kernel (printed identical); it is real and
/// nonnegative for every real omega.
class SpectralKernels {
 public:
  SpectralKernels(const SteadyState& steady, const SystemParams& params,
                  const DriveConfig& drive, const Detunings& det,
                  ESign esign = ESign::validated);

  Complex y12(double omega) const;
  double y13(double omega) const { return y14(omega); }
  double y14(double omega) const;

  Complex b0() const { return b0_; }
  const NoiseModel& noise() const { return noise_; }

  /// Real-axis panel anchors (center, half_width): pole projections with
  /// their half-widths, mirrored (the y12 kernel samples both +/- omega).
  std::vector<std::pair<double, double>> panel_anchors() const;

  /// Integration half-span beyond which the tail map takes over.
  double inner_halfspan() const;
  /// Hard cutoff for the mapped tails.
  double tail_cutoff() const;

 private:
  OutputCoeffs coeffs_at(double omega) const;

  SteadyState steady_;
  SystemParams params_;
  DriveConfig drive_;
  Detunings det_;
  NoiseModel noise_;
  ESign esign_;
  Complex b0_;
  std::vector<Complex> poles_;
};

}  // namespace hybridsim
