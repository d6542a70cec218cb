#include "malsim/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "malsim/csvio.hpp"
#include "malsim/estimators.hpp"
#include "malsim/streets.hpp"
#include "malsim/svg.hpp"

namespace malsim {

namespace {

std::string param_header() {
  return "gamma,half_width,lambda,rho,r,model,markovian,infection_rate,infection_low,"
         "infection_high,patch_rate,patch_low,patch_high";
}

std::string param_row(const SimConfig& c, const DynamicsSpec& dynamics, double lambda,
                      double rho) {
  std::ostringstream row;
  row << format_g9(c.gamma) << ',' << format_g9(c.half_width) << ',' << format_g9(lambda) << ','
      << format_g9(rho) << ',' << format_g9(c.radius) << ',';
  row << (dynamics.is_sig() ? "SIG" : "SI") << ',';
  const bool markovian = dynamics.infection.kind == WaitingTimeModel::Kind::Exponential;
  row << (markovian ? 1 : 0) << ',';
  if (markovian)
    row << format_g9(dynamics.infection.rate) << ",,";
  else
    row << ',' << format_g9(dynamics.infection.low) << ',' << format_g9(dynamics.infection.high);
  row << ',';
  if (dynamics.patch) {
    if (dynamics.patch->kind == WaitingTimeModel::Kind::Exponential)
      row << format_g9(dynamics.patch->rate) << ",,";
    else
      row << ',' << format_g9(dynamics.patch->low) << ',' << format_g9(dynamics.patch->high);
  } else {
    row << ",,";
  }
  return row.str();
}

std::optional<SaturationBound> saturation_bound(const SimConfig& c, const DynamicsSpec& d) {
  if (d.infection.kind != WaitingTimeModel::Kind::UniformWindow) return std::nullopt;
  return SaturationBound{c.radius, d.infection.low};
}

ReplicaSetup setup_from_config(const SimConfig& c, const DynamicsSpec& dynamics, int workers) {
  ReplicaSetup setup;
  setup.env = EnvironmentParams{c.gamma, c.half_width, c.lambda, c.rho, c.radius};
  setup.dynamics = dynamics;
  setup.record_radii = c.u;
  setup.replicas = c.replicas;
  setup.time_cap = c.time_cap;
  setup.master_seed = c.master_seed;
  setup.workers = workers;
  return setup;
}

std::string radius_tag(double u) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", u);
  return buf;
}

}  // namespace

std::vector<Artifact> streets_artifacts(const SimConfig& config, bool with_svg) {
  const StreetSystem streets =
      generate_streets(config.gamma, Window(config.half_width),
                       derive_seed(config.master_seed, Stage::Streets, 0, 0));
  std::vector<Artifact> artifacts;
  {
    std::ostringstream out;
    write_streets_csv(streets, out);
    artifacts.push_back({"streets.csv", out.str()});
  }
  {
    std::ostringstream out;
    write_streets_meta(streets, out);
    artifacts.push_back({"streets.meta.json", out.str()});
  }
  if (with_svg) {
    std::ostringstream out;
    write_streets_svg(streets, out);
    artifacts.push_back({"streets.svg", out.str()});
  }
  return artifacts;
}

std::vector<Artifact> speed_artifacts(const SimConfig& config, int workers) {
  if (config.u.empty()) throw ConfigError("config: experiment.u required for the speed command");

  std::ostringstream estimates;
  estimates << param_header() << ",u,n,alpha_u,variance,rel_deviation,zero_fraction,master_seed\n";
  std::ostringstream raw;
  raw << "lambda,environment,dynamics,u,tau,connected,reached,censored,event_count\n";

  for (std::size_t li = 0; li < config.lambda_grid.size(); ++li) {
    const double lambda = config.lambda_grid[li];
    ReplicaSetup setup = setup_from_config(config, config.dynamics, workers);
    setup.env.lambda = lambda;
    const std::vector<RunSummary> runs = run_replicas(setup, li);

    const int per_env = config.replicas.dynamics_per_environment;
    for (std::size_t i = 0; i < runs.size(); ++i) {
      const RunSummary& r = runs[i];
      for (double u : config.u) {
        raw << format_g9(lambda) << ',' << i / static_cast<std::size_t>(per_env) << ','
            << i % static_cast<std::size_t>(per_env) << ',' << format_g9(u) << ','
            << format_g9(r.tau_at(u)) << ',' << (r.connected_at(u) ? 1 : 0) << ','
            << (r.reached_at(u) ? 1 : 0) << ',' << (r.censored ? 1 : 0) << ',' << r.event_count
            << '\n';
      }
    }
    for (double u : config.u) {
      const SpeedEstimate est =
          estimate_speed(runs, u, saturation_bound(config, config.dynamics));
      estimates << param_row(config, config.dynamics, lambda, config.rho) << ','
                << format_g9(u) << ',' << est.n << ',' << format_g9(est.alpha_u) << ','
                << format_g9(est.variance) << ','
                << (est.rel_deviation ? format_g9(*est.rel_deviation) : "") << ','
                << format_g9(est.zero_fraction) << ',' << config.master_seed << '\n';
    }
  }
  return {{"speed.csv", estimates.str()}, {"speed_runs.csv", raw.str()}};
}

std::vector<Artifact> survival_artifacts(const SimConfig& config, int workers) {
  if (config.u.empty())
    throw ConfigError("config: experiment.u required for the survival command");

  std::ostringstream out;
  out << param_header()
      << ",control_kind,control_value,u,n_total,n_connected,n_survived,probability,master_seed\n";

  std::vector<std::pair<std::string, DynamicsSpec>> points;
  if (config.control_kind) {
    for (double value : config.control_values)
      points.emplace_back(format_g9(value),
                          apply_control(config.dynamics, *config.control_kind, value));
  } else {
    points.emplace_back("", config.dynamics);
  }
  const std::string kind_name = !config.control_kind ? "none"
                                : *config.control_kind == ControlKind::InfectionRate
                                    ? "infection_rate"
                                    : "patch_max";

  for (std::size_t pi = 0; pi < points.size(); ++pi) {
    ReplicaSetup setup = setup_from_config(config, points[pi].second, workers);
    const std::vector<RunSummary> runs = run_replicas(setup, pi);
    for (double u : config.u) {
      const SurvivalEstimate est = estimate_survival(runs, u);
      out << param_row(config, points[pi].second, config.lambda, config.rho) << ',' << kind_name
          << ',' << points[pi].first << ',' << format_g9(u) << ',' << est.n_total << ','
          << est.n_connected << ',' << est.n_survived << ','
          << (est.probability ? format_g9(*est.probability) : "") << ',' << config.master_seed
          << '\n';
    }
  }
  return {{"survival.csv", out.str()}};
}

SweepPlan sweep_plan_from_config(const SimConfig& config, int workers) {
  if (!config.control_kind)
    throw ConfigError("config: experiment.control required for the phase command");
  if (config.u.empty())
    throw ConfigError("config: experiment.u required for the phase command");
  SweepPlan plan;
  plan.rho_grid = config.rho_grid;
  plan.control = *config.control_kind;
  plan.control_grid = config.control_values;
  plan.replicas = config.replicas;
  plan.survival_radius = config.u.back();
  plan.threshold = config.threshold;
  plan.time_cap = config.time_cap;
  plan.workers = workers;
  plan.validate();
  return plan;
}

PhaseModel phase_model_from_config(const SimConfig& config) {
  PhaseModel model;
  model.env = EnvironmentParams{config.gamma, config.half_width, config.lambda, config.rho,
                                config.radius};
  model.dynamics = config.dynamics;
  return model;
}

PhaseArtifacts phase_artifacts(const SimConfig& config, int workers) {
  const SweepPlan plan = sweep_plan_from_config(config, workers);
  const PhaseModel model = phase_model_from_config(config);
  PhaseArtifacts result;
  result.curve = sweep_curve(model, plan, config.master_seed);

  std::ostringstream points;
  points << "rho,control,survival_fraction,n_connected,n_total,is_critical,master_seed\n";
  std::ostringstream curve;
  curve << "rho,critical_value\n";
  for (const PhasePoint& p : result.curve) {
    for (const TestedPoint& t : p.tested) {
      const bool critical = p.critical_value && *p.critical_value == t.control;
      points << format_g9(p.rho) << ',' << format_g9(t.control) << ','
             << format_g9(t.result.fraction) << ',' << t.result.n_connected << ','
             << t.result.n_total << ',' << (critical ? 1 : 0) << ',' << config.master_seed
             << '\n';
    }
    curve << format_g9(p.rho) << ','
          << (p.critical_value ? format_g9(*p.critical_value) : "") << '\n';
  }
  result.files.push_back({"phase_points.csv", points.str()});
  result.files.push_back({"phase_curve.csv", curve.str()});
  return result;
}

std::vector<Artifact> snapshot_artifacts(const SimConfig& config) {
  if (config.stop_radii.empty())
    throw ConfigError("config: experiment.stop_radii (or u) required for the snapshot command");

  const EnvironmentParams params{config.gamma, config.half_width, config.lambda, config.rho,
                                 config.radius};
  const Environment env =
      build_environment(params, config.master_seed, environment_label(0, 0), true);

  RunOptions options;
  options.record_radii = config.stop_radii;
  const double u = config.stop_radii.back();
  RandomStream rng(derive_seed(config.master_seed, Stage::Dynamics, environment_label(0, 0), 0));
  const EpidemicRun run =
      run_epidemic(*env.graph, env.devices, config.dynamics, u, config.time_cap, rng, options);

  std::vector<Artifact> artifacts;
  {
    std::ostringstream devices_csv;
    write_devices_csv(env.devices, devices_csv);
    artifacts.push_back({"devices.csv", devices_csv.str()});
    std::ostringstream edges_csv;
    write_edges_csv(*env.graph, edges_csv);
    artifacts.push_back({"edges.csv", edges_csv.str()});
  }
  for (double radius : config.stop_radii) {
    const double tau = run.tau_at(radius);
    const bool hit = std::isfinite(tau);
    const double t = hit ? tau : run.stop_time;
    std::string annotation;
    if (!hit)
      annotation = run.extinct_at ? "extinct before radius " + radius_tag(radius)
                                  : "radius " + radius_tag(radius) + " not reached";
    std::ostringstream svg;
    write_snapshot_svg(env.streets.get(), env.devices, run, t, radius, annotation, svg);
    artifacts.push_back({"snapshot_u" + radius_tag(radius) + ".svg", svg.str()});
    std::ostringstream csv;
    write_snapshot_csv(run, t, csv);
    artifacts.push_back({"snapshot_u" + radius_tag(radius) + ".csv", csv.str()});
  }
  return artifacts;
}

}  // namespace malsim
