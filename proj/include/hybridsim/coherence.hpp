#pragma once

#include <vector>

#include "hybridsim/fluctuation.hpp"
#include "hybridsim/parallel.hpp"
#include "hybridsim/quadrature.hpp"

namespace hybridsim {

/// Correlator building blocks at a single delay tau. y14 is tau-independent.
struct CorrelatorPoint {
  double tau = 0.0;
  double y14 = 0.0;
  Complex y13;
  Complex y12;
  double g2 = 1.0;
  double quad_err = 0.0;  // max absolute quadrature error over contributors
};

struct CoherenceOptions {
  QuadOptions quad;
  Exec exec = Exec::parallel;
};

/// Second-order coherence of the cavity output on a delay grid. Evaluates the
/// three kernel integrals per tau; the zero-field limit (all B_k = 0 except
/// the coherent part) degenerates to g2 = 1 identically.
class CoherenceCalculator {
 public:
  CoherenceCalculator(const SteadyState& steady, const SystemParams& params,
                      const DriveConfig& drive, const Detunings& det,
                      ESign esign = ESign::validated);

  CorrelatorPoint evaluate(double tau, const QuadOptions& opts = {}) const;

  std::vector<CorrelatorPoint> sweep(const std::vector<double>& tau_grid,
                                     const CoherenceOptions& opts = {}) const;

  /// Coherent output amplitude sqrt(2 gamma_c) C0 - Omega / sqrt(2 gamma_c).
  Complex b0() const { return kernels_.b0(); }

  const SpectralKernels& kernels() const { return kernels_; }

  /// Integral scale int |Y14| used to pin absolute tolerances for the
  /// oscillatory tau > 0 integrals. Computed once, lazily.
  double kernel_scale(const QuadOptions& opts = {}) const;

 private:
  QuadResult integrate_kernel(const std::function<Complex(double)>& f,
                              const QuadOptions& opts) const;

  SpectralKernels kernels_;
  mutable double scale_ = -1.0;
};

/// g2 from the correlator pieces via the Gaussian factorization of the
/// output field:
///   g2 = [|b0|^4 + 2|b0|^2 y14 + 2 Re(conj(b0)^2 y12) + 2|b0|^2 Re(y13)
///         + y14^2 + |y13|^2 + |y12|^2] / (|b0|^2 + y14)^2.
double g2_from_parts(Complex b0, double y14, Complex y13, Complex y12);

std::vector<double> linspace_grid(double lo, double hi, int npoints);

}  // namespace hybridsim
