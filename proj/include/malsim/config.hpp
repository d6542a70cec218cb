#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "malsim/dynamics.hpp"
#include "malsim/phase.hpp"

namespace malsim {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Full simulation configuration in canonical units (km, km^-1, devices/km,
/// minutes). Second-valued waiting-time inputs ("40 sec") are converted on
/// parse, so an echoed config always re-parses to the identical SimConfig.
struct SimConfig {
  // geometry
  double gamma = 20.0;
  double half_width = 3.0;
  // devices
  double lambda = 1.0;
  double rho = 0.0;
  // graph
  double radius = 0.3;
  // dynamics
  DynamicsSpec dynamics;
  // experiment
  std::vector<double> u;            // radii for speed/survival estimates
  ReplicaLayout replicas{100, 10};
  double time_cap = 1e4;            // min
  double threshold = 0.6;
  std::vector<double> lambda_grid;  // speed sweep; defaults to {lambda}
  std::vector<double> rho_grid;     // phase sweep; defaults to {rho}
  std::optional<ControlKind> control_kind;
  std::vector<double> control_values;
  std::vector<double> stop_radii;   // snapshot stops; defaults to u
  std::uint64_t master_seed = 1;

  bool operator==(const SimConfig&) const = default;
};

SimConfig parse_config(const std::string& json_text);
SimConfig load_config(const std::string& path);

/// Canonical JSON echo; parse_config(echo_config(c)) == c.
std::string echo_config(const SimConfig& config);

/// Run-metadata record: config echo plus the seed-derivation scheme version.
std::string run_metadata(const SimConfig& config, const std::string& command);

}  // namespace malsim
