#include "malsim/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace malsim {

namespace {

using nlohmann::json;

[[noreturn]] void missing(const std::string& path) {
  throw ConfigError("config: missing field " + path);
}

const json& require(const json& j, const std::string& section, const std::string& key) {
  if (!j.contains(section) || !j[section].contains(key)) missing(section + "." + key);
  return j[section][key];
}

double positive(double v, const std::string& path) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("config: " + path + " must be positive");
  return v;
}

/// Waiting times accept plain numbers (minutes) or strings like "40 sec",
/// "40s", "1.5 min".
double parse_minutes(const json& v, const std::string& path) {
  if (v.is_number()) return v.get<double>();
  if (!v.is_string()) throw ConfigError("config: " + path + " must be a number or \"<n> sec|min\"");
  const std::string text = v.get<std::string>();
  std::istringstream in(text);
  double value = 0.0;
  std::string unit;
  if (!(in >> value)) throw ConfigError("config: cannot parse duration '" + text + "' in " + path);
  in >> unit;
  if (unit == "min" || unit.empty()) return value;
  if (unit == "sec" || unit == "s") return value / 60.0;
  throw ConfigError("config: unknown time unit '" + unit + "' in " + path);
}

std::vector<double> parse_grid(const json& v, const std::string& path, bool as_minutes) {
  std::vector<double> grid;
  if (v.is_array()) {
    for (const auto& item : v)
      grid.push_back(as_minutes ? parse_minutes(item, path) : item.get<double>());
  } else if (v.is_object()) {
    const double start = v.value("start", 0.0);
    if (!v.contains("stop") || !v.contains("step")) missing(path + ".stop/step");
    const double stop = v["stop"].get<double>();
    const double step = positive(v["step"].get<double>(), path + ".step");
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    grid.reserve(count);
    for (std::size_t i = 0; i < count; ++i) grid.push_back(start + static_cast<double>(i) * step);
  } else {
    throw ConfigError("config: " + path + " must be an array or {start,stop,step}");
  }
  for (std::size_t i = 0; i + 1 < grid.size(); ++i)
    if (!(grid[i] < grid[i + 1]))
      throw ConfigError("config: " + path + " must be strictly increasing");
  return grid;
}

DynamicsSpec parse_dynamics(const json& j) {
  if (!j.contains("dynamics"))  // streets-only configs need no dynamics
    return DynamicsSpec{WaitingTimeModel::exponential(1.0), std::nullopt};
  const json& d = j["dynamics"];
  const std::string model = d.value("model", "");
  if (model != "SI" && model != "SIG")
    throw ConfigError("config: dynamics.model must be \"SI\" or \"SIG\"");
  if (!d.contains("markovian")) missing("dynamics.markovian");
  const bool markovian = d["markovian"].get<bool>();

  DynamicsSpec spec;
  if (markovian) {
    if (!d.contains("infection_rate")) missing("dynamics.infection_rate");
    spec.infection = WaitingTimeModel::exponential(d["infection_rate"].get<double>());
    if (model == "SIG") {
      if (!d.contains("patch_rate")) missing("dynamics.patch_rate");
      spec.patch = WaitingTimeModel::exponential(d["patch_rate"].get<double>());
    }
  } else {
    if (!d.contains("infection_window")) missing("dynamics.infection_window");
    const json& w = d["infection_window"];
    if (!w.is_array() || w.size() != 2)
      throw ConfigError("config: dynamics.infection_window must be [low, high]");
    spec.infection = WaitingTimeModel::uniform_window(
        parse_minutes(w[0], "dynamics.infection_window[0]"),
        parse_minutes(w[1], "dynamics.infection_window[1]"));
    if (model == "SIG") {
      if (!d.contains("patch_window")) missing("dynamics.patch_window");
      const json& p = d["patch_window"];
      if (!p.is_array() || p.size() != 2)
        throw ConfigError("config: dynamics.patch_window must be [low, high]");
      spec.patch =
          WaitingTimeModel::uniform_window(parse_minutes(p[0], "dynamics.patch_window[0]"),
                                           parse_minutes(p[1], "dynamics.patch_window[1]"));
    }
  }
  return spec;
}

}  // namespace

SimConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }

  SimConfig c;
  c.gamma = positive(require(j, "geometry", "gamma").get<double>(), "geometry.gamma");
  c.half_width =
      positive(require(j, "geometry", "half_width").get<double>(), "geometry.half_width");
  if (j.contains("devices")) {
    c.lambda = positive(require(j, "devices", "lambda").get<double>(), "devices.lambda");
    if (j["devices"].contains("rho")) c.rho = j["devices"]["rho"].get<double>();
    if (c.rho < 0.0) throw ConfigError("config: devices.rho must be nonnegative");
  }
  if (j.contains("graph"))
    c.radius = positive(require(j, "graph", "r").get<double>(), "graph.r");
  c.dynamics = parse_dynamics(j);

  if (j.contains("experiment")) {
    const json& e = j["experiment"];
    if (e.contains("u")) {
      if (e["u"].is_array())
        for (const auto& v : e["u"]) c.u.push_back(v.get<double>());
      else
        c.u.push_back(e["u"].get<double>());
    }
    if (e.contains("replicas")) {
      const json& r = e["replicas"];
      c.replicas.environments = r.value("environments", c.replicas.environments);
      c.replicas.dynamics_per_environment =
          r.value("dynamics_per_environment", c.replicas.dynamics_per_environment);
      if (c.replicas.environments < 1 || c.replicas.dynamics_per_environment < 1)
        throw ConfigError("config: experiment.replicas must be at least 1 each");
    }
    if (e.contains("time_cap")) c.time_cap = positive(e["time_cap"].get<double>(),
                                                      "experiment.time_cap");
    if (e.contains("threshold")) {
      c.threshold = e["threshold"].get<double>();
      if (!(c.threshold > 0.0 && c.threshold < 1.0))
        throw ConfigError("config: experiment.threshold must lie in (0,1)");
    }
    if (e.contains("lambda_grid"))
      c.lambda_grid = parse_grid(e["lambda_grid"], "experiment.lambda_grid", false);
    if (e.contains("rho_grid"))
      c.rho_grid = parse_grid(e["rho_grid"], "experiment.rho_grid", false);
    if (e.contains("control")) {
      const json& ctl = e["control"];
      const std::string kind = ctl.value("kind", "");
      if (kind == "infection_rate")
        c.control_kind = ControlKind::InfectionRate;
      else if (kind == "patch_max")
        c.control_kind = ControlKind::PatchMax;
      else
        throw ConfigError("config: experiment.control.kind must be infection_rate or patch_max");
      c.control_values = parse_grid(ctl.contains("values") ? ctl["values"] : ctl,
                                    "experiment.control",
                                    c.control_kind == ControlKind::PatchMax);
    }
    if (e.contains("stop_radii")) {
      for (const auto& v : e["stop_radii"]) c.stop_radii.push_back(v.get<double>());
      std::sort(c.stop_radii.begin(), c.stop_radii.end());
    }
  }

  if (j.contains("master_seed")) c.master_seed = j["master_seed"].get<std::uint64_t>();

  std::sort(c.u.begin(), c.u.end());
  for (double u : c.u)
    if (!(u > 0.0)) throw ConfigError("config: experiment.u values must be positive");
  if (!c.u.empty() && c.u.back() + c.radius > c.half_width + 1e-9)
    throw ConfigError("config: geometry.half_width must be at least max(u) + r");
  if (!c.stop_radii.empty() && c.stop_radii.back() + c.radius > c.half_width + 1e-9)
    throw ConfigError("config: geometry.half_width must be at least max(stop_radii) + r");
  if (c.lambda_grid.empty()) c.lambda_grid = {c.lambda};
  if (c.rho_grid.empty()) c.rho_grid = {c.rho};
  if (c.stop_radii.empty()) c.stop_radii = c.u;
  return c;
}

SimConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string echo_config(const SimConfig& c) {
  json j;
  j["geometry"] = {{"gamma", c.gamma}, {"half_width", c.half_width}};
  j["devices"] = {{"lambda", c.lambda}, {"rho", c.rho}};
  j["graph"] = {{"r", c.radius}};

  json d;
  d["model"] = c.dynamics.is_sig() ? "SIG" : "SI";
  const bool markovian = c.dynamics.infection.kind == WaitingTimeModel::Kind::Exponential;
  d["markovian"] = markovian;
  if (markovian) {
    d["infection_rate"] = c.dynamics.infection.rate;
    if (c.dynamics.patch) d["patch_rate"] = c.dynamics.patch->rate;
  } else {
    d["infection_window"] = {c.dynamics.infection.low, c.dynamics.infection.high};
    if (c.dynamics.patch) d["patch_window"] = {c.dynamics.patch->low, c.dynamics.patch->high};
  }
  j["dynamics"] = d;

  json e;
  e["u"] = c.u;
  e["replicas"] = {{"environments", c.replicas.environments},
                   {"dynamics_per_environment", c.replicas.dynamics_per_environment}};
  e["time_cap"] = c.time_cap;
  e["threshold"] = c.threshold;
  e["lambda_grid"] = c.lambda_grid;
  e["rho_grid"] = c.rho_grid;
  if (c.control_kind) {
    e["control"] = {
        {"kind", *c.control_kind == ControlKind::InfectionRate ? "infection_rate" : "patch_max"},
        {"values", c.control_values}};
  }
  e["stop_radii"] = c.stop_radii;
  j["experiment"] = e;
  j["master_seed"] = c.master_seed;
  return j.dump(2);
}

std::string run_metadata(const SimConfig& config, const std::string& command) {
  json j;
  j["command"] = command;
  j["seed_derivation_version"] = kSeedDerivationVersion;
  j["config"] = json::parse(echo_config(config));
  return j.dump(2);
}

}  // namespace malsim
