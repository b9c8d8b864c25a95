#include "hybridsim/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace hybridsim {

namespace {

// Gauss-Kronrod (7,15) nodes and weights on [-1, 1] (positive half; the rule
// is symmetric). Kronrod nodes interleave the 7 Gauss nodes (even indices).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Interval {
  double a, b;
  Complex value;
  double error;

  bool operator<(const Interval& o) const { return error < o.error; }
};

Interval gk15(const Integrand& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);

  Complex fv[15];
  for (int j = 0; j < 7; ++j) {
    fv[j] = f(c - h * kXgk[j]);
    fv[14 - j] = f(c + h * kXgk[j]);
  }
  fv[7] = f(c);

  Complex kron{0.0, 0.0}, gauss{0.0, 0.0};
  double kron_abs = 0.0;
  for (int j = 0; j < 7; ++j) {
    const Complex s = fv[j] + fv[14 - j];
    kron += kWgk[j] * s;
    kron_abs += kWgk[j] * (std::abs(fv[j]) + std::abs(fv[14 - j]));
    if (j % 2 == 1) gauss += kWg[j / 2] * s;
  }
  kron += kWgk[7] * fv[7];
  kron_abs += kWgk[7] * std::abs(fv[7]);
  gauss += kWg[3] * fv[7];

  Interval out;
  out.a = a;
  out.b = b;
  out.value = h * kron;
  // Scaled error heuristic of the QUADPACK family, without the resasc
  // refinement: enough here because panels already isolate the sharp lines.
  double err = std::abs(h) * std::abs(kron - gauss);
  const double scale = std::abs(h) * kron_abs;
  if (scale > 0.0 && err > 0.0) {
    const double r = std::pow(200.0 * err / scale, 1.5);
    if (r < 1.0) err = scale * r;
  }
  out.error = err;
  return out;
}

QuadResult adaptive(const Integrand& f, std::vector<Interval> seed, const QuadOptions& opts) {
  std::priority_queue<Interval> heap(std::less<Interval>(), std::move(seed));

  Complex total{0.0, 0.0};
  double err = 0.0;
  long evals = 0;
  {
    // Heap was seeded with evaluated intervals: fold their tallies in.
    std::priority_queue<Interval> copy = heap;
    while (!copy.empty()) {
      total += copy.top().value;
      err += copy.top().error;
      evals += 15;
      copy.pop();
    }
  }

  long splits = 0;
  while (!heap.empty() && splits < opts.max_intervals) {
    const double target =
        std::max(opts.abs_tol, opts.rel_tol * std::abs(total));
    if (err <= target) break;
    Interval top = heap.top();
    if (top.error <= target / std::max<std::size_t>(heap.size(), 1)) break;
    heap.pop();
    const double mid = 0.5 * (top.a + top.b);
    if (mid <= top.a || mid >= top.b) {  // interval at rounding limit
      continue;
    }
    Interval left = gk15(f, top.a, mid);
    Interval right = gk15(f, mid, top.b);
    total += left.value + right.value - top.value;
    err += left.error + right.error - top.error;
    evals += 30;
    heap.push(left);
    heap.push(right);
    ++splits;
  }

  QuadResult res;
  res.value = total;
  res.error = err;
  res.evals = evals;
  res.converged = err <= std::max(opts.abs_tol, opts.rel_tol * std::abs(total));
  return res;
}

}  // namespace

QuadResult& QuadResult::operator+=(const QuadResult& o) {
  value += o.value;
  error += o.error;
  evals += o.evals;
  converged = converged && o.converged;
  return *this;
}

QuadResult integrate_gk15(const Integrand& f, double a, double b, const QuadOptions& opts) {
  if (a == b) return {};
  return adaptive(f, {gk15(f, a, b)}, opts);
}

QuadResult integrate_panels(const Integrand& f, const std::vector<double>& breaks,
                            const QuadOptions& opts) {
  std::vector<Interval> seed;
  seed.reserve(breaks.size());
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (breaks[i + 1] > breaks[i]) seed.push_back(gk15(f, breaks[i], breaks[i + 1]));
  }
  if (seed.empty()) return {};
  return adaptive(f, std::move(seed), opts);
}

QuadResult integrate_tail(const Integrand& f, double a, int direction, double cutoff,
                          const QuadOptions& opts) {
  const double sgn = direction >= 0 ? 1.0 : -1.0;
  const double length = std::abs(a) > 0.0 ? std::abs(a) : 1.0;
  // omega = a + sgn * L t / (1 - t), t in [0, 1); truncate where |omega|
  // reaches the cutoff.
  const double span = std::max(cutoff - std::abs(a), 0.0);
  if (span <= 0.0) return {};
  const double t_max = span / (length + span);
  auto mapped = [&](double t) -> Complex {
    const double u = 1.0 - t;
    const double omega = a + sgn * length * t / u;
    const double jac = length / (u * u);
    return f(omega) * jac;
  };
  return integrate_gk15(mapped, 0.0, t_max, opts);
}

std::vector<double> panel_breakpoints(const std::vector<std::pair<double, double>>& anchors,
                                      double halfspan) {
  std::vector<double> pts = {-halfspan, halfspan};
  for (const auto& [c, w] : anchors) {
    const double width = std::max(w, 1e-12 * halfspan);
    for (double k : {-5.0, -1.0, 0.0, 1.0, 5.0}) {
      const double p = c + k * width;
      if (p > -halfspan && p < halfspan) pts.push_back(p);
    }
  }
  std::sort(pts.begin(), pts.end());
  // Merge breakpoints closer than the local resolution floor.
  std::vector<double> out;
  for (double p : pts) {
    if (out.empty() || p - out.back() > 1e-14 * halfspan) out.push_back(p);
  }
  if (out.size() < 2) out = {-halfspan, halfspan};
  return out;
}

std::vector<Complex> polynomial_roots(std::vector<Complex> coeffs) {
  while (!coeffs.empty() && std::abs(coeffs.back()) == 0.0) coeffs.pop_back();
  if (coeffs.size() < 2) return {};
  const std::size_t n = coeffs.size() - 1;
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(static_cast<long>(n), static_cast<long>(n));
  const Complex lead = coeffs.back();
  for (std::size_t i = 0; i < n; ++i) {
    companion(static_cast<long>(i), static_cast<long>(n - 1)) = -coeffs[i] / lead;
    if (i + 1 < n) companion(static_cast<long>(i + 1), static_cast<long>(i)) = 1.0;
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, /*computeEigenvectors=*/false);
  std::vector<Complex> roots;
  roots.reserve(n);
  for (long i = 0; i < solver.eigenvalues().size(); ++i) {
    roots.push_back(solver.eigenvalues()(i));
  }
  return roots;
}

}  // namespace hybridsim
