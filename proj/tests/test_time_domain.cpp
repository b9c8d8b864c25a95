#include "doctest.h"

#include <cmath>

#include "hybridsim/probe_response.hpp"
#include "hybridsim/time_domain.hpp"

using namespace hybridsim;

TEST_CASE("settling lands on the frequency-domain steady state") {
  for (const char* name : {"fig2", "fig3"}) {
    const Preset pre = load_preset(name);
    for (const PresetVariant& v : pre.variants) {
      CAPTURE(name);
      CAPTURE(v.label);
      const SteadyState freq = solve_steady_state(v.params, v.drive);
      TimeDomainOracle oracle(v.params, v.drive);
      const SteadyState ode = oracle.settle();
      CHECK(std::abs(ode.intensity() - freq.intensity()) < 1e-3 * freq.intensity());
      CHECK(std::abs(ode.c0 - freq.c0) < 1e-3 * std::abs(freq.c0));
      if (freq.q0 > 0.0) CHECK(std::abs(ode.q0 - freq.q0) < 1e-3 * freq.q0);
      CHECK(ode.residual < 1e-3);
    }
  }
}

TEST_CASE("settling picks the lowest stable bistability branch") {
  const PresetVariant v = load_preset("fig2").variant("i");
  const BistabilityBranches b = analyze_branches(v.params, v.drive);
  REQUIRE(b.intensities.size() == 3);
  TimeDomainOracle oracle(v.params, v.drive);
  const SteadyState ode = oracle.settle();
  CHECK(std::abs(ode.intensity() - b.intensities[0]) < 1e-3 * b.intensities[0]);
}

TEST_CASE("demodulated sidebands match the probe-response solve") {
  const PresetVariant v = load_preset("fig2").variant("iii");
  const SteadyState freq = solve_steady_state(v.params, v.drive);
  const Detunings base = derive_detunings(v.params, v.drive);
  TimeDomainOracle oracle(v.params, v.drive);
  for (double off : {0.98, 1.0, 1.02}) {
    CAPTURE(off);
    const double delta = off * v.params.omega_mech;
    Detunings det = base;
    det.delta = delta;
    const ProbeResponse pr = response_linear_solve(freq, v.params, det, v.drive.epsilon);
    const DemodulationResult dm = oracle.demodulate(delta);
    CHECK(std::abs(dm.c_minus - pr.c_minus) < 1e-3 * std::abs(pr.c_minus));
    CHECK(std::abs(dm.c_plus - pr.c_plus) < 1e-2 * std::abs(pr.c_minus));
    CHECK(std::abs(dm.c0 - freq.c0) < 1e-3 * std::abs(freq.c0));
    CHECK(dm.fit_residual < 1e-3);
  }
}

TEST_CASE("trajectory sampling is causal and uniformly spaced") {
  const PresetVariant v = load_preset("fig2").variant("ii");
  IntegrationOptions opts;
  opts.sample_periods = 2.0;
  opts.samples_per_period = 16;
  TimeDomainOracle oracle(v.params, v.drive, opts);
  const auto traj = oracle.trajectory(false, 0.0);
  REQUIRE(traj.size() >= 2);
  const double dt = traj[1].t - traj[0].t;
  for (std::size_t i = 1; i < traj.size(); ++i) {
    CHECK(traj[i].t - traj[i - 1].t == doctest::Approx(dt).epsilon(1e-9));
  }
}
