#include "hybridsim/coherence.hpp"

#include <algorithm>
#include <cmath>

namespace hybridsim {

namespace {
constexpr double kTwoPiLocal = 6.283185307179586476925286766559;
}

CoherenceCalculator::CoherenceCalculator(const SteadyState& steady, const SystemParams& params,
                                         const DriveConfig& drive, const Detunings& det,
                                         ESign esign)
    : kernels_(steady, params, drive, det, esign) {}

QuadResult CoherenceCalculator::integrate_kernel(const std::function<Complex(double)>& f,
                                                 const QuadOptions& opts) const {
  const double halfspan = kernels_.inner_halfspan();
  const double cutoff = kernels_.tail_cutoff();
  const std::vector<double> breaks = panel_breakpoints(kernels_.panel_anchors(), halfspan);

  QuadResult total = integrate_panels(f, breaks, opts);
  total += integrate_tail(f, halfspan, +1, cutoff, opts);
  total += integrate_tail(f, -halfspan, -1, cutoff, opts);
  return total;
}

double CoherenceCalculator::kernel_scale(const QuadOptions& opts) const {
  if (scale_ >= 0.0) return scale_;
  QuadOptions scale_opts = opts;
  scale_opts.rel_tol = std::max(opts.rel_tol, 1e-4);  // a coarse scale suffices
  const QuadResult r = integrate_kernel(
      [this](double w) { return Complex(kernels_.y14(w), 0.0); }, scale_opts);
  scale_ = std::abs(r.value.real());
  return scale_;
}

CorrelatorPoint CoherenceCalculator::evaluate(double tau, const QuadOptions& opts) const {
  CorrelatorPoint pt;
  pt.tau = tau;
  const Complex b0 = kernels_.b0();

  // chi = 0 switches all noise kernels off: the output field stays coherent.
  const double scale = kernel_scale(opts);
  if (scale == 0.0) {
    pt.g2 = 1.0;
    return pt;
  }

  // Absolute floor from the tau-independent kernel mass, so that the
  // oscillatory tau > 0 integrals do not chase relative accuracy of values
  // that are themselves tiny against the correlator scale.
  QuadOptions eff = opts;
  eff.abs_tol = std::max(opts.abs_tol, opts.rel_tol * scale);

  const QuadResult r14 = integrate_kernel(
      [this](double w) { return Complex(kernels_.y14(w), 0.0); }, eff);
  const QuadResult r13 = integrate_kernel(
      [this, tau](double w) {
        return kernels_.y14(w) * std::polar(1.0, w * tau);
      },
      eff);
  const QuadResult r12 = integrate_kernel(
      [this, tau](double w) { return kernels_.y12(w) * std::polar(1.0, -w * tau); },
      eff);

  pt.y14 = r14.value.real() / kTwoPiLocal;
  pt.y13 = r13.value / kTwoPiLocal;
  pt.y12 = r12.value / kTwoPiLocal;
  pt.quad_err = std::max({r14.error, r13.error, r12.error}) / kTwoPiLocal;
  pt.g2 = g2_from_parts(b0, pt.y14, pt.y13, pt.y12);
  return pt;
}

std::vector<CorrelatorPoint> CoherenceCalculator::sweep(const std::vector<double>& tau_grid,
                                                        const CoherenceOptions& opts) const {
  kernel_scale(opts.quad);  // prime the cached scale before going parallel
  std::vector<CorrelatorPoint> out(tau_grid.size());
  for_each_index(opts.exec, static_cast<std::ptrdiff_t>(tau_grid.size()),
                 [&](std::ptrdiff_t i) {
    out[static_cast<std::size_t>(i)] =
        evaluate(tau_grid[static_cast<std::size_t>(i)], opts.quad);
  });
  return out;
}

double g2_from_parts(Complex b0, double y14, Complex y13, Complex y12) {
  const double n0 = std::norm(b0);
  const double den = (n0 + y14) * (n0 + y14);
  if (den == 0.0) return 1.0;
  const double num = n0 * n0 + 2.0 * n0 * y14 +
                     2.0 * std::real(std::conj(b0) * std::conj(b0) * y12) +
                     2.0 * n0 * y13.real() + y14 * y14 + std::norm(y13) +
                     std::norm(y12);
  return num / den;
}

std::vector<double> linspace_grid(double lo, double hi, int npoints) {
  std::vector<double> out;
  const int n = std::max(npoints, 1);
  out.reserve(static_cast<std::size_t>(n));
  if (n == 1) {
    out.push_back(lo);
    return out;
  }
  const double step = (hi - lo) / (n - 1);
  for (int i = 0; i < n; ++i) out.push_back(lo + step * i);
  return out;
}

}  // namespace hybridsim
