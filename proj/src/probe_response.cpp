#include "hybridsim/probe_response.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Dense>

namespace hybridsim {

namespace {
constexpr double kHbar = 1.054571817e-34;
constexpr Complex kI{0.0, 1.0};
}  // namespace

LambdaSet lambda_coeffs(const SteadyState& steady, const SystemParams& params,
                        const Detunings& det) {
  const double d = det.delta;
  const double x = steady.intensity();
  LambdaSet l;
  l.m_of_delta = params.mass * kHbar *
                 Complex(params.omega_mech * params.omega_mech - d * d,
                         -params.gamma_mech * d);
  l.lambda3 = kI * params.chi * params.chi * x / l.m_of_delta;
  l.lambda1 = Complex(params.gamma_cavity, -(steady.delta3 + d)) + l.lambda3;
  l.lambda1_plus = Complex(params.gamma_cavity, steady.delta3 - d) - l.lambda3;
  const double g2sz = params.g_qubit * params.g_qubit * params.sigma_z_ss;
  l.lambda2 = g2sz / Complex(params.gamma_qubit, -(det.delta2 + d));
  l.lambda2_plus = g2sz / Complex(params.gamma_qubit, det.delta2 - d);
  l.a_factor = (l.lambda1 - l.lambda3) * (l.lambda1_plus + l.lambda3);
  return l;
}

Complex c_minus_closed_form(const LambdaSet& l, const Detunings& det, double epsilon) {
  (void)det;
  // Denominator A + 2i Delta3 lambda3 + lambda2+ lambda2 - lambda2+ lambda1
  // - lambda1+ lambda2 with A = (lambda1 - lambda3)(lambda1+ + lambda3);
  // evaluated in the algebraically identical factored form, which is better
  // conditioned near the mechanical line.
  const Complex den =
      (l.lambda1 - l.lambda2) * (l.lambda1_plus - l.lambda2_plus) + l.lambda3 * l.lambda3;
  if (std::abs(den) == 0.0) {
    throw SingularResponseError("singular response denominator");
  }
  return epsilon * (l.lambda1 - l.lambda2) / den;
}

ProbeResponse response_linear_solve(const SteadyState& steady, const SystemParams& params,
                                    const Detunings& det, double epsilon) {
  const double d = det.delta;
  const Complex c0 = steady.c0;
  const double q0 = steady.q0;

  // Unknowns: [C-, C+*, Q-, Q+*, L-, L+*]; Q+* = Q- closes the hierarchy
  // (Q is Hermitian, so its e^{+i Delta t} coefficient is the conjugate of
  // the e^{-i Delta t} one).
  Eigen::Matrix<Complex, 6, 6> mat = Eigen::Matrix<Complex, 6, 6>::Zero();
  Eigen::Matrix<Complex, 6, 1> rhs = Eigen::Matrix<Complex, 6, 1>::Zero();

  mat(0, 0) = Complex(params.gamma_cavity, det.delta1 - d) - kI * params.chi * q0 / kHbar;
  mat(0, 2) = -kI * params.chi * c0 / kHbar;
  mat(0, 4) = kI * params.g_qubit;
  rhs(0) = epsilon;

  mat(1, 1) = Complex(params.gamma_cavity, -det.delta1 - d) + kI * params.chi * q0 / kHbar;
  mat(1, 3) = kI * params.chi * std::conj(c0) / kHbar;
  mat(1, 5) = -kI * params.g_qubit;

  mat(2, 2) = params.mass * Complex(params.omega_mech * params.omega_mech - d * d,
                                    -params.gamma_mech * d);
  mat(2, 0) = -params.chi * std::conj(c0);
  mat(2, 1) = -params.chi * c0;

  mat(3, 3) = 1.0;
  mat(3, 2) = -1.0;

  mat(4, 4) = Complex(params.gamma_qubit, det.delta2 - d);
  mat(4, 0) = -kI * params.g_qubit * params.sigma_z_ss;

  mat(5, 5) = Complex(params.gamma_qubit, -det.delta2 - d);
  mat(5, 1) = kI * params.g_qubit * params.sigma_z_ss;

  Eigen::PartialPivLU<Eigen::Matrix<Complex, 6, 6>> lu(mat);
  const Eigen::Matrix<Complex, 6, 1> sol = lu.solve(rhs);
  const double defect = (mat * sol - rhs).norm();
  if (!(defect <= 1e-8 * rhs.norm()) || !std::isfinite(std::abs(sol(0)))) {
    throw SingularResponseError("singular first-order response system");
  }

  ProbeResponse r;
  r.c_minus = sol(0);
  r.c_plus = std::conj(sol(1));
  r.method = ResponseMethod::linear_solve;
  epsilon_out(r, params.gamma_cavity, epsilon);
  return r;
}

void epsilon_out(ProbeResponse& r, double gamma_cavity, double epsilon) {
  r.eps_out = 2.0 * gamma_cavity * r.c_minus / epsilon;
  r.mu_p = r.eps_out.real();
  r.nu_p = r.eps_out.imag();
}

std::vector<double> SweepGrid::detunings() const {
  std::vector<double> out;
  const int n = std::max(npoints, 1);
  out.reserve(static_cast<std::size_t>(n));
  if (n == 1) {
    out.push_back(center);
    return out;
  }
  const double lo = center - 0.5 * span;
  const double step = span / (n - 1);
  for (int i = 0; i < n; ++i) out.push_back(lo + step * i);
  return out;
}

ResponseSweep sweep_response(const SystemParams& params, const DriveConfig& drive,
                             const SweepGrid& grid, ResponseMethod method, Exec exec) {
  ResponseSweep sweep;
  sweep.steady = solve_steady_state(params, drive);
  sweep.detuning_grid = grid.detunings();
  sweep.responses.resize(sweep.detuning_grid.size());

  const Detunings base = derive_detunings(params, drive);
  const double eps = drive.epsilon > 0.0 ? drive.epsilon : 1.0;

  for_each_index(exec, static_cast<std::ptrdiff_t>(sweep.detuning_grid.size()),
                 [&](std::ptrdiff_t i) {
    Detunings det = base;
    det.delta = sweep.detuning_grid[static_cast<std::size_t>(i)];
    ProbeResponse& r = sweep.responses[static_cast<std::size_t>(i)];
    try {
      if (method == ResponseMethod::linear_solve || method == ResponseMethod::both) {
        r = response_linear_solve(sweep.steady, params, det, eps);
      }
      if (method == ResponseMethod::closed_form || method == ResponseMethod::both) {
        const LambdaSet l = lambda_coeffs(sweep.steady, params, det);
        const Complex cm = c_minus_closed_form(l, det, eps);
        if (method == ResponseMethod::both) {
          r.method_deviation = std::abs(cm - r.c_minus) / std::max(std::abs(r.c_minus), 1e-300);
          r.method = ResponseMethod::both;
        } else {
          r.c_minus = cm;
          // Eliminating Q and L from the C+* equation gives
          // C+* = -i chi^2 R C0*^2 C- / (lambda1 - lambda2).
          const Complex c0c = std::conj(sweep.steady.c0);
          const Complex cps = -kI * params.chi * params.chi * c0c * c0c * cm /
                              (l.m_of_delta * (l.lambda1 - l.lambda2));
          r.c_plus = std::conj(cps);
          r.method = ResponseMethod::closed_form;
          epsilon_out(r, params.gamma_cavity, eps);
        }
      }
    } catch (const SingularResponseError&) {
      const double nan = std::numeric_limits<double>::quiet_NaN();
      r.c_minus = r.c_plus = r.eps_out = Complex(nan, nan);
      r.mu_p = r.nu_p = nan;
      r.valid = false;
    }
  });
  return sweep;
}

}  // namespace hybridsim
