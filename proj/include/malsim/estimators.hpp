#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "malsim/dynamics.hpp"

namespace malsim {

/// Slim per-run record kept by the replica drivers; everything the estimators
/// need without the per-device timestamp vectors.
struct RunSummary {
  std::vector<double> radii;
  std::vector<double> tau;
  double max_reachable_km = 0.0;
  bool censored = false;
  std::uint64_t event_count = 0;

  double tau_at(double radius) const;
  bool connected_at(double radius) const { return max_reachable_km >= radius; }
  bool reached_at(double radius) const;

  static RunSummary of(const EpidemicRun& run);
};

struct SpeedEstimate {
  double u = 0.0;
  int n = 0;
  double alpha_u = 0.0;   // km/min
  double variance = 0.0;  // min^-2, population-normalized variance of 1/tau
  std::optional<double> rel_deviation;
  double zero_fraction = 0.0;  // share of replicas with tau = inf (or censored)
};

/// Hop-speed ceiling for uniform waiting times: tau_u >= ceil(u/r) * low.
struct SaturationBound {
  double hop_radius_km = 0.0;
  double min_delay_min = 0.0;
};

/// alpha_u = u * mean(1/tau) with 1/inf = 0; censored runs count as tau = inf.
/// When `bound` is given (non-Markovian runs), the estimate is checked against
/// the exact per-u saturation ceiling and a violation raises a logic error.
SpeedEstimate estimate_speed(std::span<const RunSummary> runs, double u,
                             std::optional<SaturationBound> bound = {});
SpeedEstimate estimate_speed(std::span<const EpidemicRun> runs, double u,
                             std::optional<SaturationBound> bound = {});

struct SurvivalEstimate {
  double u = 0.0;
  int n_total = 0;
  int n_connected = 0;
  int n_survived = 0;
  std::optional<double> probability;  // absent when no run is connected
};

/// Survival probability conditioned on the origin connecting to distance >= u.
/// Rejects corrupt inputs where a run reached the radius while disconnected.
SurvivalEstimate estimate_survival(std::span<const RunSummary> runs, double u);
SurvivalEstimate estimate_survival(std::span<const EpidemicRun> runs, double u);

}  // namespace malsim
