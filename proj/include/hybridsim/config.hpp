#pragma once

#include <string>

#include "hybridsim/params.hpp"

namespace hybridsim {

/// JSON configuration overlay. Layout mirrors the parameter structs:
///   { "angular": false,
///     "system": { "omega_cavity": 5.0e9, "chi": 2.8e-14, ... },
///     "drive":  { "omega_drive": 4.99e9, "big_omega": 3.1e6, ... } }
/// With angular == false (the default) frequency-like entries are plain Hz
/// and are multiplied by 2*pi on load; chi follows the same convention unless
/// chi_literal is set. mass, temperature and sigma_z are never scaled.
struct ConfigFile {
  SystemParams params;
  DriveConfig drive;
  bool has_system = false;
  bool has_drive = false;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parse a config file and merge it over base values. Keys absent from the
/// file keep their base values; unknown keys are an error.
ConfigFile load_config(const std::string& path, const SystemParams& base_params,
                       const DriveConfig& base_drive, bool chi_literal);

}  // namespace hybridsim
