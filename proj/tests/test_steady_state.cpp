#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "hybridsim/fluctuation.hpp"
#include "hybridsim/steady_state.hpp"

using namespace hybridsim;

namespace {
constexpr double kHbar = 1.054571817e-34;
}

TEST_CASE("chi = 0 reduces to the exactly solvable linear steady state") {
  const Preset pre = load_preset("fig2");
  const PresetVariant v = pre.variant("ii");  // g on, chi off
  const Detunings det = derive_detunings(v.params, v.drive);
  const SteadyState s = solve_steady_state(v.params, v.drive);

  const Complex k = v.params.g_qubit * v.params.g_qubit * v.params.sigma_z_ss /
                    Complex(v.params.gamma_qubit, det.delta2);
  const Complex expected = v.drive.big_omega /
                           (Complex(v.params.gamma_cavity, det.delta1) - k);
  CHECK(std::abs(s.c0 - expected) / std::abs(expected) < 1e-12);
  CHECK(s.q0 == 0.0);
  CHECK(s.delta3 == det.delta1);
  CHECK(s.n_real_roots == 1);
  CHECK_FALSE(s.ambiguous);
}

TEST_CASE("steady-state invariants hold for all figure preset variants") {
  for (const std::string& name : preset_names()) {
    const Preset pre = load_preset(name);
    for (const PresetVariant& v : pre.variants) {
      CAPTURE(name);
      CAPTURE(v.label);
      const Detunings det = derive_detunings(v.params, v.drive);
      const SteadyState s = solve_steady_state(v.params, v.drive);

      CHECK(s.p0 == 0.0);
      CHECK(s.residual <= 1e-10);
      const double q_expected = v.params.chi * s.intensity() /
                                (v.params.mass * v.params.omega_mech * v.params.omega_mech);
      CHECK(s.q0 == doctest::Approx(q_expected).epsilon(1e-13));
      const double d3_expected =
          det.delta1 - v.params.chi * v.params.chi * s.intensity() /
                           (v.params.mass * kHbar * v.params.omega_mech * v.params.omega_mech);
      CHECK(s.delta3 == doctest::Approx(d3_expected).epsilon(1e-12));
      if (v.params.chi > 0.0) CHECK(s.q0 > 0.0);

      const Complex l0_expected = Complex(0.0, 1.0) * v.params.g_qubit *
                                  v.params.sigma_z_ss * s.c0 /
                                  Complex(v.params.gamma_qubit, det.delta2);
      CHECK(std::abs(s.l0 - l0_expected) <= 1e-12 * std::abs(l0_expected) + 1e-300);
    }
  }
}

TEST_CASE("intensity roots satisfy the cubic to tight relative residual") {
  const Preset pre = load_preset("fig2");
  for (const PresetVariant& v : pre.variants) {
    const Detunings det = derive_detunings(v.params, v.drive);
    const Complex k = v.params.g_qubit > 0.0
                          ? v.params.g_qubit * v.params.g_qubit * v.params.sigma_z_ss /
                                Complex(v.params.gamma_qubit, det.delta2)
                          : Complex{0.0, 0.0};
    const double gr = v.params.gamma_cavity - k.real();
    const double d1p = det.delta1 - k.imag();
    const double eta = v.params.chi * v.params.chi /
                       (v.params.mass * kHbar * v.params.omega_mech * v.params.omega_mech);
    const double om2 = v.drive.big_omega * v.drive.big_omega;
    for (double x : intensity_roots(v.params, v.drive)) {
      const double resid =
          std::abs(x * (gr * gr + (d1p - eta * x) * (d1p - eta * x)) - om2) / om2;
      CHECK(resid < 1e-10);
    }
  }
}

TEST_CASE("driven optomechanical presets sit in the bistable regime") {
  // The red-detuned strong-drive captions put the chi-coupled variants in the
  // three-root region; only the lowest root is dynamically stable.
  for (const char* name : {"fig2", "fig5"}) {
    const Preset pre = load_preset(name);
    for (const char* label : {"i", "iii"}) {
      CAPTURE(name);
      CAPTURE(label);
      const PresetVariant& v = pre.variant(label);
      const BistabilityBranches b = analyze_branches(v.params, v.drive);
      REQUIRE(b.intensities.size() == 3);
      CHECK(b.selected_index == 0);
      CHECK(b.stability_flags[0]);
      CHECK_FALSE(b.stability_flags[1]);
      CHECK_FALSE(b.stability_flags[2]);
      CHECK(std::is_sorted(b.intensities.begin(), b.intensities.end()));

      const SteadyState s = solve_steady_state(v.params, v.drive);
      CHECK(s.intensity() == doctest::Approx(b.intensities[0]).epsilon(1e-12));
      CHECK(s.ambiguous);
      CHECK(s.n_real_roots == 3);
    }
  }
}

TEST_CASE("sigma_z = 0 decouples the qubit exactly like g = 0") {
  const Preset pre = load_preset("fig2");
  PresetVariant v = pre.variant("iii");
  SystemParams decoupled = v.params;
  decoupled.sigma_z_ss = 0.0;
  SystemParams no_qubit = v.params;
  no_qubit.g_qubit = 0.0;
  const SteadyState a = solve_steady_state(decoupled, v.drive);
  const SteadyState b = solve_steady_state(no_qubit, v.drive);
  CHECK(std::abs(a.c0 - b.c0) <= 1e-12 * std::abs(b.c0));
  CHECK(a.q0 == doctest::Approx(b.q0).epsilon(1e-12));
}

TEST_CASE("bistability scan tracks branch counts over drive frequency") {
  const Preset pre = load_preset("fig2");
  const PresetVariant& v = pre.variant("i");
  std::vector<double> wds;
  for (int i = -3; i <= 3; ++i) {
    wds.push_back(v.drive.omega_drive + i * 0.002 * v.params.omega_mech);
  }
  const auto scan = bistability_scan(v.params, v.drive, wds);
  REQUIRE(scan.size() == wds.size());
  for (const BistabilityBranches& b : scan) {
    CHECK((b.intensities.size() == 1 || b.intensities.size() == 3));
    CHECK(b.selected_index >= 0);
  }
}
