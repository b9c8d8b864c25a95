#pragma once

#include <vector>

#include "hybridsim/parallel.hpp"
#include "hybridsim/params.hpp"
#include "hybridsim/steady_state.hpp"

namespace hybridsim {

/// lambda-coefficients of the first-order probe response at probe detuning
/// Delta, plus the mechanical susceptibility denominator M(Delta).
struct LambdaSet {
  Complex lambda1, lambda2, lambda3;
  Complex lambda1_plus, lambda2_plus;
  Complex a_factor;    // (lambda1 - lambda3)(lambda1_plus + lambda3)
  Complex m_of_delta;  // m hbar (omega_m^2 - i gamma_m Delta - Delta^2)
};

enum class ResponseMethod { closed_form, linear_solve, both };

struct ProbeResponse {
  Complex c_minus;
  Complex c_plus;
  Complex eps_out;
  double mu_p = 0.0;
  double nu_p = 0.0;
  ResponseMethod method = ResponseMethod::closed_form;
  double method_deviation = 0.0;  // relative |closed - solve| when method == both
  bool valid = true;              // false rows carry NaNs in a sweep
};

struct ResponseSweep {
  std::vector<double> detuning_grid;      // rad/s, strictly increasing
  std::vector<ProbeResponse> responses;
  SteadyState steady;                     // shared across the sweep
};

class SingularResponseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

LambdaSet lambda_coeffs(const SteadyState& steady, const SystemParams& params,
                        const Detunings& det);

/// Printed closed form of the probe sideband amplitude; the denominator sign
/// convention was confirmed against the linear solve.
Complex c_minus_closed_form(const LambdaSet& lambda, const Detunings& det, double epsilon);

/// Direct solution of the 6x6 coefficient-matching linear system; ground
/// truth for the closed form, and the only route to C_plus.
ProbeResponse response_linear_solve(const SteadyState& steady, const SystemParams& params,
                                    const Detunings& det, double epsilon);

/// Rescaled output amplitude and its homodyne quadratures.
void epsilon_out(ProbeResponse& r, double gamma_cavity, double epsilon);

struct SweepGrid {
  double center = 0.0;  // rad/s
  double span = 0.0;    // full width
  int npoints = 2001;

  std::vector<double> detunings() const;
};

/// Frequency sweep of the probe response. The steady state is computed once.
/// With method == both, both routes run per point and the max relative
/// deviation is recorded per row. Per-point failures become NaN-flagged rows.
ResponseSweep sweep_response(const SystemParams& params, const DriveConfig& drive,
                             const SweepGrid& grid, ResponseMethod method,
                             Exec exec = Exec::parallel);

}  // namespace hybridsim
