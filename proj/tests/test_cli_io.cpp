#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "hybridsim/config.hpp"
#include "hybridsim/csv.hpp"
#include "hybridsim/probe_response.hpp"

using namespace hybridsim;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& p) : path(p) {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("response CSV carries the documented header and row count") {
  const PresetVariant v = load_preset("fig2").variant("iii");
  SweepGrid grid{v.params.omega_mech, 0.2 * v.params.omega_mech, 9};
  const ResponseSweep sweep =
      sweep_response(v.params, v.drive, grid, ResponseMethod::both, Exec::serial);
  TempFile f("test_response_out.csv");
  write_response_csv(f.path, sweep, v.params.omega_mech);
  const std::string text = slurp(f.path);
  CHECK(text.rfind("delta_rad_s,delta_norm,mu_p,nu_p,re_c_minus,im_c_minus,re_c_plus,"
                   "im_c_plus,method_deviation\n", 0) == 0);
  int lines = 0;
  for (char c : text) lines += (c == '\n');
  CHECK(lines == 10);  // header + 9 rows
}

TEST_CASE("CSV bodies are byte-identical across repeat runs") {
  const PresetVariant v = load_preset("fig3").variant("iii");
  SweepGrid grid{load_preset("fig3").grid.center, load_preset("fig3").grid.span, 33};
  TempFile f1("test_det_a.csv");
  TempFile f2("test_det_b.csv");
  write_response_csv(
      f1.path, sweep_response(v.params, v.drive, grid, ResponseMethod::closed_form,
                              Exec::parallel),
      v.params.omega_mech);
  write_response_csv(
      f2.path, sweep_response(v.params, v.drive, grid, ResponseMethod::closed_form,
                              Exec::parallel),
      v.params.omega_mech);
  CHECK(slurp(f1.path) == slurp(f2.path));
}

TEST_CASE("manifest echoes the full resolved parameter set") {
  const PresetVariant v = load_preset("fig2").variant("i");
  RunManifest m;
  m.command = "response";
  m.preset = "fig2";
  m.variant = "i";
  m.params = v.params;
  m.drive = v.drive;
  m.det = derive_detunings(v.params, v.drive);
  m.steady = solve_steady_state(v.params, v.drive);
  m.extra["grid"] = "0,0,11";
  const std::string j = m.to_json();
  CHECK(j.find("\"omega_cavity\"") != std::string::npos);
  CHECK(j.find("\"big_omega\"") != std::string::npos);
  CHECK(j.find("\"delta1\"") != std::string::npos);
  CHECK(j.find("\"intensity\"") != std::string::npos);
  CHECK(j.find("\"grid\"") != std::string::npos);
  CHECK(j.find("fig2") != std::string::npos);
}

TEST_CASE("config overlay scales Hz entries and respects angular flag") {
  const PresetVariant v = load_preset("fig2").variant("iii");
  TempFile f("test_config.json");
  {
    std::ofstream out(f.path);
    out << R"({"system": {"gamma_cavity": 1.0e6, "chi": 3.0e-14},
               "drive": {"big_omega": 2.0e6}})";
  }
  const ConfigFile cfg = load_config(f.path, v.params, v.drive, /*chi_literal=*/false);
  CHECK(cfg.params.gamma_cavity == doctest::Approx(kTwoPi * 1.0e6));
  CHECK(cfg.params.chi == doctest::Approx(kTwoPi * 3.0e-14));
  CHECK(cfg.drive.big_omega == doctest::Approx(kTwoPi * 2.0e6));
  CHECK(cfg.params.omega_cavity == v.params.omega_cavity);  // untouched
  CHECK(cfg.drive.epsilon == v.drive.epsilon);

  TempFile f2("test_config_angular.json");
  {
    std::ofstream out(f2.path);
    out << R"({"angular": true, "system": {"gamma_cavity": 5.0e6}})";
  }
  const ConfigFile cfg2 = load_config(f2.path, v.params, v.drive, false);
  CHECK(cfg2.params.gamma_cavity == 5.0e6);
}

TEST_CASE("chi-literal flag disables only the chi scaling in configs") {
  const PresetVariant v = load_preset("fig2").variant("iii");
  TempFile f("test_config_chi.json");
  {
    std::ofstream out(f.path);
    out << R"({"system": {"chi": 3.0e-14, "gamma_mech": 30.0}})";
  }
  const ConfigFile cfg = load_config(f.path, v.params, v.drive, /*chi_literal=*/true);
  CHECK(cfg.params.chi == 3.0e-14);
  CHECK(cfg.params.gamma_mech == doctest::Approx(kTwoPi * 30.0));
}

TEST_CASE("unknown config keys are rejected") {
  const PresetVariant v = load_preset("fig2").variant("iii");
  TempFile f("test_config_bad.json");
  {
    std::ofstream out(f.path);
    out << R"({"system": {"gamma_cavityy": 1.0e6}})";
  }
  CHECK_THROWS_AS((void)load_config(f.path, v.params, v.drive, false), ConfigError);
  CHECK_THROWS_AS((void)load_config("no_such_file.json", v.params, v.drive, false),
                  ConfigError);
}

TEST_CASE("format_double keeps full precision and spells nan") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(std::nan("")) == "nan");
  const double v = 0.1234567890123456789;
  CHECK(std::stod(format_double(v)) == v);
}
