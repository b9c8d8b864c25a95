#pragma once

#include <map>
#include <string>
#include <vector>

#include "hybridsim/coherence.hpp"
#include "hybridsim/probe_response.hpp"

namespace hybridsim {

/// Run manifest written beside every CSV artifact: full parameter set,
/// derived detunings, solver settings, and the selected steady state.
struct RunManifest {
  std::string command;
  std::string preset;
  std::string variant;
  SystemParams params;
  DriveConfig drive;
  Detunings det;
  SteadyState steady;
  std::map<std::string, std::string> extra;

  std::string to_json() const;
};

void write_manifest(const std::string& path, const RunManifest& manifest);

void write_response_csv(const std::string& path, const ResponseSweep& sweep,
                        double omega_mech);

void write_g2_csv(const std::string& path, const std::vector<CorrelatorPoint>& points);

void write_steady_csv(const std::string& path, const SteadyState& steady,
                      const SystemParams& params, const Detunings& det,
                      const std::vector<double>& all_intensities,
                      const std::vector<bool>& stability);

std::string format_double(double v);

}  // namespace hybridsim
