#pragma once

#include <functional>
#include <vector>

#include "hybridsim/params.hpp"

namespace hybridsim {

struct QuadOptions {
  double rel_tol = 1e-6;
  double abs_tol = 0.0;       // absolute target; 0 means purely relative
  long max_intervals = 200000;  // subdivision budget per integrate call
};

struct QuadResult {
  Complex value{0.0, 0.0};
  double error = 0.0;   // absolute error estimate
  long evals = 0;
  bool converged = true;

  QuadResult& operator+=(const QuadResult& o);
};

using Integrand = std::function<Complex(double)>;

/// Globally adaptive Gauss-Kronrod (7,15) quadrature over [a, b].
QuadResult integrate_gk15(const Integrand& f, double a, double b,
                          const QuadOptions& opts);

/// Adaptive quadrature over [breaks.front(), breaks.back()] with the interior
/// breakpoints seeding the initial interval set. Breakpoints must be sorted.
QuadResult integrate_panels(const Integrand& f, const std::vector<double>& breaks,
                            const QuadOptions& opts);

/// Semi-infinite tail [a, +inf) (direction = +1) or (-inf, a] (direction = -1)
/// through the rational map omega = a +/- L t/(1-t), truncated at |omega| =
/// cutoff. L defaults to |a| (or 1 when a == 0).
QuadResult integrate_tail(const Integrand& f, double a, int direction, double cutoff,
                          const QuadOptions& opts);

/// Sorted deduplicated panel breakpoints over [-halfspan, halfspan] built
/// from real-axis pole projections: each anchor contributes center +/- 5
/// half-widths (and the center itself when the line is narrower than
/// width_floor). anchors = (center, half_width) pairs.
std::vector<double> panel_breakpoints(const std::vector<std::pair<double, double>>& anchors,
                                      double halfspan);

/// Roots of a complex-coefficient polynomial (ascending coefficients) via the
/// balanced companion matrix. Leading zero coefficients are trimmed.
std::vector<Complex> polynomial_roots(std::vector<Complex> coeffs);

}  // namespace hybridsim
