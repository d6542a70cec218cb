#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "malsim/dynamics.hpp"
#include "malsim/runner.hpp"

namespace malsim {

enum class ControlKind : std::uint8_t { InfectionRate, PatchMax };

struct SweepPlan {
  std::vector<double> rho_grid;       // devices/km, strictly increasing
  ControlKind control = ControlKind::InfectionRate;
  std::vector<double> control_grid;   // strictly increasing
  ReplicaLayout replicas;
  double survival_radius = 17.5;      // km
  double threshold = 0.6;
  double time_cap = 1e4;              // min
  int workers = 1;

  void validate() const;
};

/// Base model for a sweep; rho and the control value are applied per point.
struct PhaseModel {
  EnvironmentParams env;   // env.rho is overridden by the sweep's rho
  DynamicsSpec dynamics;   // control overrides infection rate / patch window top
};

struct FractionResult {
  double fraction = 0.0;  // n_survived / n_connected
  int n_total = 0;
  int n_connected = 0;
  int n_survived = 0;
};

struct TestedPoint {
  double control = 0.0;
  FractionResult result;
};

struct PhasePoint {
  double rho = 0.0;
  std::optional<double> critical_value;
  std::vector<TestedPoint> tested;
  std::optional<double> warm_start_from;
};

/// Apply a control value onto the base dynamics.
DynamicsSpec apply_control(const DynamicsSpec& base, ControlKind kind, double value);

/// Survival fraction at one (rho, control) point: replicas.environments fresh
/// network realizations x replicas.dynamics_per_environment trajectories each,
/// conditioned on boundary connectivity. Environment streams depend on
/// (rho_index, environment index) only, so one scan reuses the same
/// realizations for every control value. Throws when every environment is
/// disconnected from the boundary (parameters below percolation).
FractionResult survival_fraction(const PhaseModel& model, const SweepPlan& plan, double rho,
                                 std::size_t rho_index, double control, std::uint64_t master_seed);

/// Core grid scan (stubbable): walks the grid upward from lower_bound and
/// stops at the first fraction strictly above the threshold.
PhasePoint scan_grid(std::span<const double> grid, std::optional<double> lower_bound,
                     double threshold, double rho,
                     const std::function<FractionResult(double)>& eval);

/// Critical control value for one rho, reusing cached environments across the
/// whole scan. A grid exhausted without crossing yields an absent critical
/// value (reported, not fatal).
PhasePoint find_critical(const PhaseModel& model, const SweepPlan& plan, double rho,
                         std::size_t rho_index, std::optional<double> lower_bound,
                         std::uint64_t master_seed);

/// Full phase curve over the rho grid, threading each critical value into the
/// next scan as its warm start.
std::vector<PhasePoint> sweep_curve(const PhaseModel& model, const SweepPlan& plan,
                                    std::uint64_t master_seed);

}  // namespace malsim
