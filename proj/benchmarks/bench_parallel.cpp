// Compares the serial reference path against the OpenMP path on the two
// embarrassingly parallel workloads: the probe-response frequency sweep and
// the g2 delay sweep. Results are wall-clock; run on an idle machine.

#include <chrono>
#include <cstdio>

#include "hybridsim/coherence.hpp"
#include "hybridsim/parallel.hpp"
#include "hybridsim/probe_response.hpp"

using namespace hybridsim;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <typename Fn>
double time_best_of(int reps, const Fn& fn) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    best = std::min(best, seconds_since(t0));
  }
  return best;
}

}  // namespace

int main() {
  const Preset pre = load_preset("fig2");
  const PresetVariant& v = pre.variant("iii");
  const SweepGrid grid{pre.grid.center, pre.grid.span, 4001};

  std::printf("threads available: %d\n", max_threads());

  volatile double sink = 0.0;
  const double t_sweep_serial = time_best_of(3, [&] {
    const ResponseSweep s = sweep_response(v.params, v.drive, grid,
                                           ResponseMethod::closed_form, Exec::serial);
    sink = s.responses.back().mu_p;
  });
  const double t_sweep_parallel = time_best_of(3, [&] {
    const ResponseSweep s = sweep_response(v.params, v.drive, grid,
                                           ResponseMethod::closed_form, Exec::parallel);
    sink = s.responses.back().mu_p;
  });
  std::printf("response sweep (%d pts): serial %.3fs  parallel %.3fs  speedup %.2fx\n",
              grid.npoints, t_sweep_serial, t_sweep_parallel,
              t_sweep_serial / t_sweep_parallel);

  const SteadyState steady = solve_steady_state(v.params, v.drive);
  const Detunings det = derive_detunings(v.params, v.drive);
  CoherenceCalculator calc(steady, v.params, v.drive, det);
  const std::vector<double> taus = linspace_grid(0.0, 2e-6, 32);

  CoherenceOptions serial_opts;
  serial_opts.exec = Exec::serial;
  CoherenceOptions parallel_opts;
  parallel_opts.exec = Exec::parallel;

  const double t_g2_serial =
      time_best_of(1, [&] { sink = calc.sweep(taus, serial_opts).back().g2; });
  const double t_g2_parallel =
      time_best_of(1, [&] { sink = calc.sweep(taus, parallel_opts).back().g2; });
  std::printf("g2 sweep (%zu delays): serial %.3fs  parallel %.3fs  speedup %.2fx\n",
              taus.size(), t_g2_serial, t_g2_parallel, t_g2_serial / t_g2_parallel);

  (void)sink;
  return 0;
}
