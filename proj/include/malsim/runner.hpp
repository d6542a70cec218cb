#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "malsim/devices.hpp"
#include "malsim/dynamics.hpp"
#include "malsim/estimators.hpp"
#include "malsim/gilbert.hpp"

namespace malsim {

/// Runs fn(0..n-1) on up to `workers` threads. Each index is executed exactly
/// once; callers write results into pre-sized slots so the outcome is
/// independent of scheduling. The first exception is rethrown after join.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

struct EnvironmentParams {
  double gamma = 20.0;      // km^-1
  double half_width = 3.0;  // km
  double lambda = 1.0;      // devices/km
  double rho = 0.0;         // devices/km
  double radius = 0.3;      // km, connection radius
};

/// One realization of the D2D network: streets -> devices -> graph.
/// Streets are dropped after construction unless keep_streets is set.
struct Environment {
  DeviceSet devices;
  std::shared_ptr<const GilbertGraph> graph;
  std::shared_ptr<const StreetSystem> streets;  // only with keep_streets
};

/// Environment labels pack a grid-point index with the replica index so every
/// (point, environment) pair owns distinct street/device/knight streams.
std::uint64_t environment_label(std::size_t point_index, std::size_t env_index);

Environment build_environment(const EnvironmentParams& params, std::uint64_t master_seed,
                              std::uint64_t env_label, bool keep_streets = false);

struct ReplicaLayout {
  int environments = 100;
  int dynamics_per_environment = 10;
  int total() const { return environments * dynamics_per_environment; }
  bool operator==(const ReplicaLayout&) const = default;
};

struct ReplicaSetup {
  EnvironmentParams env;
  DynamicsSpec dynamics;
  std::vector<double> record_radii;  // ascending; runs stop at the largest
  ReplicaLayout replicas;
  double time_cap = 1e4;  // min
  std::uint64_t master_seed = 1;
  int workers = 1;
};

/// Replicated trajectories: fresh environment per environment index, fresh
/// dynamics stream per trajectory. Results come back in (environment,
/// dynamics) order regardless of worker count.
std::vector<RunSummary> run_replicas(const ReplicaSetup& setup, std::size_t point_index);

}  // namespace malsim
