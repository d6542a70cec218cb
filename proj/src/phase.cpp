#include "malsim/phase.hpp"

#include <cmath>
#include <stdexcept>

#include "malsim/estimators.hpp"

namespace malsim {

void SweepPlan::validate() const {
  auto strictly_increasing = [](const std::vector<double>& v) {
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
      if (!(v[i] < v[i + 1])) return false;
    return true;
  };
  if (rho_grid.empty() || !strictly_increasing(rho_grid))
    throw std::invalid_argument("SweepPlan: rho_grid must be nonempty and strictly increasing");
  if (control_grid.empty() || !strictly_increasing(control_grid))
    throw std::invalid_argument("SweepPlan: control_grid must be nonempty and strictly increasing");
  if (!(threshold > 0.0 && threshold < 1.0))
    throw std::invalid_argument("SweepPlan: threshold must lie in (0, 1)");
  if (replicas.environments < 1 || replicas.dynamics_per_environment < 1)
    throw std::invalid_argument("SweepPlan: replica counts must be at least 1");
  if (!(survival_radius > 0.0))
    throw std::invalid_argument("SweepPlan: survival_radius must be positive");
  if (!(time_cap > 0.0)) throw std::invalid_argument("SweepPlan: time_cap must be positive");
}

DynamicsSpec apply_control(const DynamicsSpec& base, ControlKind kind, double value) {
  DynamicsSpec spec = base;
  if (kind == ControlKind::InfectionRate) {
    spec.infection = WaitingTimeModel{};
    spec.infection.kind = WaitingTimeModel::Kind::Exponential;
    spec.infection.rate = value;
    spec.infection.validate();
  } else {
    if (!base.patch || base.patch->kind != WaitingTimeModel::Kind::UniformWindow)
      throw std::invalid_argument("apply_control: PatchMax needs a uniform patch window");
    WaitingTimeModel patch = *base.patch;
    patch.high = value;
    patch.validate();
    spec.patch = patch;
  }
  return spec;
}

namespace {

struct CachedEnvironment {
  Environment env;
  bool connected = false;
};

std::vector<CachedEnvironment> build_scan_environments(const PhaseModel& model,
                                                       const SweepPlan& plan, double rho,
                                                       std::size_t rho_index,
                                                       std::uint64_t master_seed) {
  const auto n_env = static_cast<std::size_t>(plan.replicas.environments);
  std::vector<CachedEnvironment> cache(n_env);
  parallel_for(n_env, plan.workers, [&](std::size_t e) {
    EnvironmentParams params = model.env;
    params.rho = rho;
    const std::uint64_t label = environment_label(rho_index, e);
    CachedEnvironment ce;
    ce.env = build_environment(params, master_seed, label);
    ce.connected = reaches_radius(*ce.env.graph, ce.env.devices.patient_zero_id(),
                                  plan.survival_radius);
    cache[e] = std::move(ce);
  });
  return cache;
}

FractionResult eval_fraction(const std::vector<CachedEnvironment>& cache, const PhaseModel& model,
                             const SweepPlan& plan, std::size_t rho_index, double control,
                             std::uint64_t master_seed) {
  const DynamicsSpec spec = apply_control(model.dynamics, plan.control, control);
  const auto per_env = static_cast<std::size_t>(plan.replicas.dynamics_per_environment);
  const double u = plan.survival_radius;

  std::vector<char> survived(cache.size() * per_env, 0);
  parallel_for(cache.size(), plan.workers, [&](std::size_t e) {
    if (!cache[e].connected) return;  // conditioned out; skip the dynamics
    const std::uint64_t label = environment_label(rho_index, e);
    for (std::size_t d = 0; d < per_env; ++d) {
      // Dynamics streams depend on (rho_index, environment, replica) only, so
      // the whole control grid is evaluated under common random numbers.
      RandomStream rng(derive_seed(master_seed, Stage::Dynamics, label, d));
      const EpidemicRun run =
          run_epidemic(*cache[e].env.graph, cache[e].env.devices, spec, u, plan.time_cap, rng);
      survived[e * per_env + d] = run.reached_radius ? 1 : 0;
    }
  });

  FractionResult result;
  for (std::size_t e = 0; e < cache.size(); ++e) {
    for (std::size_t d = 0; d < per_env; ++d) {
      ++result.n_total;
      if (!cache[e].connected) continue;
      ++result.n_connected;
      if (survived[e * per_env + d]) ++result.n_survived;
    }
  }
  if (result.n_connected == 0)
    throw std::runtime_error(
        "survival_fraction: no environment connects the origin to the boundary "
        "(parameters below percolation)");
  result.fraction = static_cast<double>(result.n_survived) / result.n_connected;
  return result;
}

}  // namespace

FractionResult survival_fraction(const PhaseModel& model, const SweepPlan& plan, double rho,
                                 std::size_t rho_index, double control,
                                 std::uint64_t master_seed) {
  plan.validate();
  const auto cache = build_scan_environments(model, plan, rho, rho_index, master_seed);
  return eval_fraction(cache, model, plan, rho_index, control, master_seed);
}

PhasePoint scan_grid(std::span<const double> grid, std::optional<double> lower_bound,
                     double threshold, double rho,
                     const std::function<FractionResult(double)>& eval) {
  PhasePoint point;
  point.rho = rho;
  point.warm_start_from = lower_bound;

  std::size_t start = 0;
  if (lower_bound)
    while (start < grid.size() && grid[start] < *lower_bound - 1e-12) ++start;

  for (std::size_t i = start; i < grid.size(); ++i) {
    const FractionResult result = eval(grid[i]);
    point.tested.push_back({grid[i], result});
    if (result.fraction > threshold) {
      point.critical_value = grid[i];
      break;
    }
  }
  return point;
}

PhasePoint find_critical(const PhaseModel& model, const SweepPlan& plan, double rho,
                         std::size_t rho_index, std::optional<double> lower_bound,
                         std::uint64_t master_seed) {
  plan.validate();
  const auto cache = build_scan_environments(model, plan, rho, rho_index, master_seed);
  return scan_grid(plan.control_grid, lower_bound, plan.threshold, rho, [&](double control) {
    return eval_fraction(cache, model, plan, rho_index, control, master_seed);
  });
}

std::vector<PhasePoint> sweep_curve(const PhaseModel& model, const SweepPlan& plan,
                                    std::uint64_t master_seed) {
  plan.validate();
  std::vector<PhasePoint> curve;
  std::optional<double> lower_bound;
  for (std::size_t i = 0; i < plan.rho_grid.size(); ++i) {
    PhasePoint point = find_critical(model, plan, plan.rho_grid[i], i, lower_bound, master_seed);
    if (point.critical_value)
      lower_bound = point.critical_value;
    else if (!point.tested.empty())
      lower_bound = point.tested.back().control;
    curve.push_back(std::move(point));
  }
  return curve;
}

}  // namespace malsim
