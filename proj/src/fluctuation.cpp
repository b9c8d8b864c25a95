#include "hybridsim/fluctuation.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "hybridsim/quadrature.hpp"

namespace hybridsim {

namespace {
constexpr double kHbar = 1.054571817e-34;
constexpr double kBoltzmann = 1.380649e-23;
constexpr Complex kI{0.0, 1.0};

using Poly = std::vector<Complex>;  // ascending coefficients

Poly polymul(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1, Complex{0.0, 0.0});
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

Poly polyadd(Poly a, const Poly& b, Complex scale = 1.0) {
  if (b.size() > a.size()) a.resize(b.size(), Complex{0.0, 0.0});
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += scale * b[i];
  return a;
}

}  // namespace

double thermal_spectrum(const NoiseModel& noise, double omega) {
  const double pre = kHbar * noise.gamma_mech * noise.mass;
  if (omega == 0.0) {
    // omega [1 + coth(hbar omega / 2 kB T)] -> 2 kB T / hbar as omega -> 0.
    return 2.0 * noise.gamma_mech * noise.mass * kBoltzmann * noise.temperature;
  }
  if (noise.temperature <= 0.0) {
    // coth -> sign(omega): vacuum contributes only at positive frequency.
    return omega > 0.0 ? 2.0 * pre * omega : 0.0;
  }
  const double arg = kHbar * omega / (2.0 * kBoltzmann * noise.temperature);
  // For large |arg| coth saturates to +/-1; evaluate via tanh for stability.
  return pre * omega * (1.0 + 1.0 / std::tanh(arg));
}

FrequencyCoeffs frequency_coeffs(const SteadyState& steady, const SystemParams& params,
                                 const Detunings& det, double omega, ESign esign) {
  const double x = steady.intensity();
  FrequencyCoeffs c;
  c.m_reduced = Complex(params.omega_mech * params.omega_mech - omega * omega,
                        -params.gamma_mech * omega);
  const Complex m_full = params.mass * kHbar * c.m_reduced;
  c.r = 1.0 / m_full;
  c.s = 1.0 / Complex(params.gamma_qubit, -(det.delta2 + omega));
  c.t = 1.0 / Complex(params.gamma_qubit, det.delta2 - omega);
  c.lambda3 = kI * params.chi * params.chi * x * c.r;
  c.lambda1 = Complex(params.gamma_cavity, -(steady.delta3 + omega)) + c.lambda3;
  c.lambda1_plus = Complex(params.gamma_cavity, steady.delta3 - omega) - c.lambda3;
  const double g2sz = params.g_qubit * params.g_qubit * params.sigma_z_ss;
  c.lambda2 = g2sz * c.s;
  c.lambda2_plus = g2sz * c.t;
  c.f = c.lambda1 - c.lambda2;
  if (esign == ESign::validated) {
    c.e = (c.lambda1 - c.lambda2) * (c.lambda1_plus - c.lambda2_plus) +
          c.lambda3 * c.lambda3;
  } else {
    // Published expression, kept for the sign-resolution artifact: the
    // (Lambda1+ - Lambda3) factor replaces the validated (Lambda1+ + Lambda3).
    c.e = (c.lambda1 - c.lambda3) * (c.lambda1_plus - c.lambda3) +
          2.0 * kI * steady.delta3 * c.lambda3 + c.lambda2_plus * c.lambda2 -
          c.lambda2_plus * c.lambda1 - c.lambda1_plus * c.lambda2;
  }
  return c;
}

TransferCoeffs transfer_coeffs(const SteadyState& steady, const SystemParams& params,
                               const Detunings& det, double omega, ESign esign) {
  const FrequencyCoeffs fc = frequency_coeffs(steady, params, det, omega, esign);
  const Complex c0 = steady.c0;
  const double chi = params.chi;
  const double sqc = std::sqrt(2.0 * params.gamma_cavity);
  const double sqa = std::sqrt(2.0 * params.gamma_qubit);

  TransferCoeffs t;
  t.c1 = sqc * fc.f / fc.e;
  t.c2 = kI * chi * chi * c0 * c0 * sqc * fc.r / fc.e;
  t.c3 = -kI * params.g_qubit * sqa * fc.f * fc.t / fc.e;
  t.c4 = -chi * chi * c0 * c0 * params.g_qubit * sqa * fc.r * fc.s / fc.e;
  t.c5 = (chi * chi * chi * std::norm(c0) * c0 * fc.r * fc.r +
          kI * chi * c0 * fc.f * fc.r) /
         fc.e;
  return t;
}

TransferCoeffs transfer_linear_solve(const SteadyState& steady, const SystemParams& params,
                                     const Detunings& det, double omega) {
  // Frequency-domain fluctuation system for [Q, P, C, Cdag, sigma, sigmadag]
  // driven by [c_in, c_in^dag, d_in, d_in^dag, xi].
  Eigen::Matrix<Complex, 6, 6> mat = Eigen::Matrix<Complex, 6, 6>::Zero();
  Eigen::Matrix<Complex, 6, 5> rhs = Eigen::Matrix<Complex, 6, 5>::Zero();
  const Complex miw = -kI * omega;
  const Complex c0 = steady.c0;
  const double sqc = std::sqrt(2.0 * params.gamma_cavity);
  const double sqa = std::sqrt(2.0 * params.gamma_qubit);

  // -i w Q = P / m
  mat(0, 0) = miw;
  mat(0, 1) = -1.0 / params.mass;
  // -i w P = -m wm^2 Q - gm P + chi C0* C + chi C0 Cdag + xi
  mat(1, 1) = miw + params.gamma_mech;
  mat(1, 0) = params.mass * params.omega_mech * params.omega_mech;
  mat(1, 2) = -params.chi * std::conj(c0);
  mat(1, 3) = -params.chi * c0;
  rhs(1, 4) = 1.0;
  // -i w C = -(gc + i Delta3) C + i chi C0 Q / hbar - i g sigma + sqc c_in
  mat(2, 2) = miw + Complex(params.gamma_cavity, steady.delta3);
  mat(2, 0) = -kI * params.chi * c0 / kHbar;
  mat(2, 4) = kI * params.g_qubit;
  rhs(2, 0) = sqc;
  // Hermitian conjugate of the cavity equation.
  mat(3, 3) = miw + Complex(params.gamma_cavity, -steady.delta3);
  mat(3, 0) = kI * params.chi * std::conj(c0) / kHbar;
  mat(3, 5) = -kI * params.g_qubit;
  rhs(3, 1) = sqc;
  // -i w sigma = -(ga + i Delta2) sigma + i g sz C + sqa d_in
  mat(4, 4) = miw + Complex(params.gamma_qubit, det.delta2);
  mat(4, 2) = -kI * params.g_qubit * params.sigma_z_ss;
  rhs(4, 2) = sqa;
  // Hermitian conjugate of the qubit equation.
  mat(5, 5) = miw + Complex(params.gamma_qubit, -det.delta2);
  mat(5, 3) = kI * params.g_qubit * params.sigma_z_ss;
  rhs(5, 3) = sqa;

  const Eigen::Matrix<Complex, 6, 5> sol =
      Eigen::PartialPivLU<Eigen::Matrix<Complex, 6, 6>>(mat).solve(rhs);
  TransferCoeffs t;
  t.c1 = sol(2, 0);
  t.c2 = sol(2, 1);
  t.c3 = sol(2, 2);
  t.c4 = sol(2, 3);
  t.c5 = sol(2, 4);
  return t;
}

OutputCoeffs output_coeffs(const SteadyState& steady, const SystemParams& params,
                           const DriveConfig& drive, const Detunings& det, double omega,
                           ESign esign) {
  const TransferCoeffs t = transfer_coeffs(steady, params, det, omega, esign);
  const double sqc = std::sqrt(2.0 * params.gamma_cavity);
  OutputCoeffs b;
  b.b0 = sqc * steady.c0 - drive.big_omega / sqc;
  b.b1 = sqc * t.c1 - 1.0;
  b.b2 = sqc * t.c2;
  b.b3 = sqc * t.c3;
  b.b4 = sqc * t.c4;
  b.b5 = sqc * t.c5;
  return b;
}

std::vector<Complex> transfer_poles(const SystemParams& params, const Detunings& det,
                                    double intensity) {
  // Clear denominators of E(omega) = (l1 - l2)(l1+ - l2+) + l3^2:
  //   E Mred^2 Sd Td = T1 T2 - kappa^2 Sd Td
  // with T1 = (gc + iD3 - iw) Mred Td - i kappa Td - g^2 sz Mred and
  //      T2 = (gc - iD3 - iw) Mred Sd + i kappa Sd - g^2 sz Mred.
  // Frequencies are prescaled by ws so the degree-8 companion matrix stays
  // well conditioned across the GHz-MHz dynamic range.
  const double ws = std::max({params.omega_mech, std::abs(det.delta2),
                              params.gamma_cavity, params.g_qubit, 1.0});
  const double eta = params.chi * params.chi /
                     (params.mass * kHbar * params.omega_mech * params.omega_mech);
  const double d3 = (det.delta1 - eta * intensity) / ws;
  // chi^2 x / (m hbar) carries (rad/s)^3; scale by ws^3 like lambda3 * Mred.
  const double kappa = params.chi * params.chi * intensity / (params.mass * kHbar) /
                       (ws * ws * ws);
  const double wm = params.omega_mech / ws;
  const double gm = params.gamma_mech / ws;
  const double gc = params.gamma_cavity / ws;
  const double ga = params.gamma_qubit / ws;
  const double d2 = det.delta2 / ws;
  const double g2sz = params.g_qubit * params.g_qubit * params.sigma_z_ss / (ws * ws);

  const Poly mred = {Complex(wm * wm), Complex(0.0, -gm), Complex(-1.0)};
  const Poly sd = {Complex(ga, -d2), Complex(0.0, -1.0)};
  const Poly td = {Complex(ga, d2), Complex(0.0, -1.0)};
  const Poly lin_minus = {Complex(gc, d3), Complex(0.0, -1.0)};  // gc + iD3 - iw
  const Poly lin_plus = {Complex(gc, -d3), Complex(0.0, -1.0)};  // gc - iD3 - iw

  Poly t1 = polymul(polymul(lin_minus, mred), td);
  t1 = polyadd(t1, td, Complex(0.0, -kappa));
  t1 = polyadd(t1, mred, Complex(-g2sz));

  Poly t2 = polymul(polymul(lin_plus, mred), sd);
  t2 = polyadd(t2, sd, Complex(0.0, kappa));
  t2 = polyadd(t2, mred, Complex(-g2sz));

  Poly p = polyadd(polymul(t1, t2), polymul(sd, td), Complex(-kappa * kappa));

  std::vector<Complex> roots = polynomial_roots(p);
  // The companion-matrix eigenvalues carry absolute errors of order
  // eps * |z|, which swamps the tiny imaginary part (-gamma_m/2 relative to
  // |z| ~ omega_m) of the narrow mechanical poles.  Polish each root with a
  // few Newton steps on the scaled polynomial.
  for (Complex& z : roots) {
    for (int iter = 0; iter < 8; ++iter) {
      Complex val{0.0, 0.0};
      Complex der{0.0, 0.0};
      for (std::size_t i = p.size(); i-- > 0;) {
        der = der * z + val;
        val = val * z + p[i];
      }
      if (der == Complex{0.0, 0.0}) break;
      const Complex step = val / der;
      z -= step;
      if (std::abs(step) <= 1e-15 * std::abs(z)) break;
    }
  }
  for (Complex& z : roots) z *= ws;
  std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return roots;
}

bool poles_stable(const std::vector<Complex>& poles) {
  return std::all_of(poles.begin(), poles.end(),
                     [](Complex z) { return z.imag() < 0.0; });
}

SpectralKernels::SpectralKernels(const SteadyState& steady, const SystemParams& params,
                                 const DriveConfig& drive, const Detunings& det, ESign esign)
    : steady_(steady),
      params_(params),
      drive_(drive),
      det_(det),
      noise_{drive.temperature, params.gamma_mech, params.mass},
      esign_(esign) {
  const double sqc = std::sqrt(2.0 * params.gamma_cavity);
  b0_ = sqc * steady.c0 - drive.big_omega / sqc;
  poles_ = transfer_poles(params, det, steady.intensity());
}

OutputCoeffs SpectralKernels::coeffs_at(double omega) const {
  return output_coeffs(steady_, params_, drive_, det_, omega, esign_);
}

Complex SpectralKernels::y12(double omega) const {
  if (params_.chi == 0.0) return {0.0, 0.0};
  const OutputCoeffs p = coeffs_at(omega);
  const OutputCoeffs m = coeffs_at(-omega);
  return thermal_spectrum(noise_, omega) * m.b5 * p.b5 + m.b2 * p.b1 + m.b4 * p.b3;
}

double SpectralKernels::y14(double omega) const {
  if (params_.chi == 0.0) return 0.0;
  const OutputCoeffs p = coeffs_at(omega);
  return thermal_spectrum(noise_, -omega) * std::norm(p.b5) + std::norm(p.b2) +
         std::norm(p.b4);
}

std::vector<std::pair<double, double>> SpectralKernels::panel_anchors() const {
  std::vector<std::pair<double, double>> anchors;
  anchors.reserve(2 * poles_.size() + 2);
  for (Complex z : poles_) {
    const double w = std::max(std::abs(z.imag()), 1e-9 * std::max(std::abs(z.real()), 1.0));
    anchors.emplace_back(z.real(), w);
    anchors.emplace_back(-z.real(), w);  // kernels sample both +/- omega
  }
  // The mechanical line is by far the narrowest feature; make sure it is
  // anchored even if the pole solver lumps it with a broad root.
  anchors.emplace_back(params_.omega_mech, params_.gamma_mech);
  anchors.emplace_back(-params_.omega_mech, params_.gamma_mech);
  return anchors;
}

double SpectralKernels::inner_halfspan() const {
  double span = 4.0 * params_.omega_mech;
  for (Complex z : poles_) {
    span = std::max(span, 2.0 * (std::abs(z.real()) + 5.0 * std::abs(z.imag())));
  }
  return span;
}

double SpectralKernels::tail_cutoff() const {
  return 1e3 * std::max({params_.omega_mech, std::abs(det_.delta2), params_.g_qubit,
                         params_.gamma_cavity});
}

}  // namespace hybridsim
