#include "hybridsim/steady_state.hpp"

#include <algorithm>
#include <cmath>

#include "hybridsim/fluctuation.hpp"
#include "hybridsim/quadrature.hpp"

namespace hybridsim {

namespace {

constexpr double kHbar = 1.054571817e-34;

/// Qubit back-action on the cavity: K = g^2 <sigma_z> / (gamma_a + i Delta2).
Complex qubit_pull(const SystemParams& p, const Detunings& det) {
  if (p.g_qubit == 0.0) return {0.0, 0.0};
  return p.g_qubit * p.g_qubit * p.sigma_z_ss /
         Complex(p.gamma_qubit, det.delta2);
}

/// Radiation-pressure coefficient eta = chi^2 / (m hbar omega_m^2), so that
/// Delta3 = Delta1 - eta |C0|^2.
double rp_coefficient(const SystemParams& p) {
  return p.chi * p.chi / (p.mass * kHbar * p.omega_mech * p.omega_mech);
}

}  // namespace

std::vector<double> intensity_roots(const SystemParams& params, const DriveConfig& drive) {
  const Detunings det = derive_detunings(params, drive);
  const Complex k = qubit_pull(params, det);
  const double gr = params.gamma_cavity - k.real();
  const double d1p = det.delta1 - k.imag();
  const double eta = rp_coefficient(params);
  const double om2 = drive.big_omega * drive.big_omega;

  std::vector<double> roots;
  if (eta == 0.0) {
    // Linear: x (gr^2 + d1p^2) = Omega^2.
    const double denom = gr * gr + d1p * d1p;
    if (denom <= 0.0) throw ConvergenceError("degenerate steady-state equation");
    roots.push_back(om2 / denom);
    return roots;
  }

  // eta^2 x^3 - 2 eta d1p x^2 + (gr^2 + d1p^2) x - Omega^2 = 0, ascending.
  std::vector<Complex> coeffs = {Complex(-om2), Complex(gr * gr + d1p * d1p),
                                 Complex(-2.0 * eta * d1p), Complex(eta * eta)};
  for (Complex z : polynomial_roots(coeffs)) {
    if (std::abs(z.imag()) <= 1e-8 * std::abs(z) + 1e-30 && z.real() >= 0.0) {
      roots.push_back(z.real());
    }
  }
  std::sort(roots.begin(), roots.end());

  // Newton polish on the real cubic; the companion-matrix roots are close
  // enough that two steps reach machine precision.
  auto f = [&](double x) {
    return ((eta * eta * x - 2.0 * eta * d1p) * x + (gr * gr + d1p * d1p)) * x - om2;
  };
  auto fp = [&](double x) {
    return (3.0 * eta * eta * x - 4.0 * eta * d1p) * x + (gr * gr + d1p * d1p);
  };
  for (double& x : roots) {
    for (int it = 0; it < 3; ++it) {
      const double d = fp(x);
      if (d == 0.0) break;
      x -= f(x) / d;
    }
    x = std::max(x, 0.0);
  }
  return roots;
}

BistabilityBranches analyze_branches(const SystemParams& params, const DriveConfig& drive) {
  const Detunings det = derive_detunings(params, drive);
  BistabilityBranches out;
  out.omega_drive = drive.omega_drive;
  out.intensities = intensity_roots(params, drive);
  out.stability_flags.reserve(out.intensities.size());
  for (double x : out.intensities) {
    out.stability_flags.push_back(poles_stable(transfer_poles(params, det, x)));
  }
  for (std::size_t i = 0; i < out.intensities.size(); ++i) {
    if (out.stability_flags[i]) {
      out.selected_index = static_cast<int>(i);
      break;
    }
  }
  return out;
}

SteadyState solve_steady_state(const SystemParams& params, const DriveConfig& drive) {
  const Detunings det = derive_detunings(params, drive);
  const BistabilityBranches branches = analyze_branches(params, drive);
  if (branches.intensities.empty()) {
    throw ConvergenceError("no real nonnegative intensity root");
  }
  // Fall back to the lowest root if no branch is flagged stable (does not
  // occur for the figure presets; kept so diagnostics still have a state).
  const int idx = branches.selected_index >= 0 ? branches.selected_index : 0;
  const double x = branches.intensities[static_cast<std::size_t>(idx)];

  const Complex k = qubit_pull(params, det);
  const double eta = rp_coefficient(params);
  SteadyState s;
  s.delta3 = det.delta1 - eta * x;
  const Complex denom = Complex(params.gamma_cavity, s.delta3) - k;
  s.c0 = drive.big_omega / denom;
  s.q0 = params.chi * std::norm(s.c0) / (params.mass * params.omega_mech * params.omega_mech);
  s.p0 = 0.0;
  s.l0 = Complex(0.0, 1.0) * params.g_qubit * params.sigma_z_ss * s.c0 /
         Complex(params.gamma_qubit, det.delta2);
  s.n_real_roots = static_cast<int>(branches.intensities.size());
  s.ambiguous = s.n_real_roots > 1;

  if (drive.big_omega > 0.0) {
    s.residual = std::abs(denom * s.c0 - drive.big_omega) / drive.big_omega;
    if (s.residual > 1e-10) {
      throw ConvergenceError("steady-state residual above tolerance");
    }
  }
  return s;
}

std::vector<BistabilityBranches> bistability_scan(const SystemParams& params,
                                                  const DriveConfig& drive,
                                                  const std::vector<double>& omega_drive_range) {
  std::vector<BistabilityBranches> out;
  out.reserve(omega_drive_range.size());
  DriveConfig d = drive;
  for (double wd : omega_drive_range) {
    d.omega_drive = wd;
    d.omega_probe = wd;  // probe idle during the scan
    out.push_back(analyze_branches(params, d));
  }
  return out;
}

}  // namespace hybridsim
