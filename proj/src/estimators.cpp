#include "malsim/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace malsim {

double RunSummary::tau_at(double radius) const {
  for (std::size_t i = 0; i < radii.size(); ++i)
    if (radii[i] == radius) return tau[i];
  throw std::invalid_argument("RunSummary: radius was not recorded");
}

bool RunSummary::reached_at(double radius) const { return std::isfinite(tau_at(radius)); }

RunSummary RunSummary::of(const EpidemicRun& run) {
  return RunSummary{run.radii, run.tau, run.max_reachable_km, run.censored, run.event_count};
}

SpeedEstimate estimate_speed(std::span<const RunSummary> runs, double u,
                             std::optional<SaturationBound> bound) {
  if (runs.empty()) throw std::invalid_argument("estimate_speed: no runs");
  double sum = 0.0, sum_sq = 0.0;
  int zeros = 0;
  for (const RunSummary& r : runs) {
    const double t = r.tau_at(u);
    if (t == 0.0) throw std::invalid_argument("estimate_speed: run with tau = 0");
    double x = 0.0;
    if (std::isfinite(t))
      x = 1.0 / t;
    else
      ++zeros;  // never reached, incl. censored runs
    sum += x;
    sum_sq += x * x;
  }
  const auto n = static_cast<double>(runs.size());
  const double mean = sum / n;
  const double variance = std::max(sum_sq / n - mean * mean, 0.0);

  SpeedEstimate est;
  est.u = u;
  est.n = static_cast<int>(runs.size());
  est.alpha_u = u * mean;
  est.variance = variance;
  if (mean > 0.0) est.rel_deviation = std::sqrt(variance) / mean;
  est.zero_fraction = static_cast<double>(zeros) / n;

  if (bound) {
    if (!(bound->hop_radius_km > 0.0) || !(bound->min_delay_min > 0.0))
      throw std::invalid_argument("estimate_speed: bad saturation bound");
    const double hops = std::ceil(u / bound->hop_radius_km - 1e-9);
    const double tau_min = hops * bound->min_delay_min;
    if (est.alpha_u > u / tau_min * (1.0 + 1e-9))
      throw std::logic_error("estimate_speed: saturation bound violated");
  }
  return est;
}

SurvivalEstimate estimate_survival(std::span<const RunSummary> runs, double u) {
  if (runs.empty()) throw std::invalid_argument("estimate_survival: no runs");
  SurvivalEstimate est;
  est.u = u;
  for (const RunSummary& r : runs) {
    const bool connected = r.connected_at(u);
    const bool reached = r.reached_at(u);
    if (reached && !connected)
      throw std::invalid_argument("estimate_survival: corrupt run (reached while disconnected)");
    ++est.n_total;
    if (connected) ++est.n_connected;
    if (reached) ++est.n_survived;
  }
  if (est.n_connected > 0)
    est.probability = static_cast<double>(est.n_survived) / est.n_connected;
  return est;
}

namespace {

std::vector<RunSummary> summarize(std::span<const EpidemicRun> runs) {
  std::vector<RunSummary> out;
  out.reserve(runs.size());
  for (const EpidemicRun& r : runs) out.push_back(RunSummary::of(r));
  return out;
}

}  // namespace

SpeedEstimate estimate_speed(std::span<const EpidemicRun> runs, double u,
                             std::optional<SaturationBound> bound) {
  return estimate_speed(std::span<const RunSummary>(summarize(runs)), u, bound);
}

SurvivalEstimate estimate_survival(std::span<const EpidemicRun> runs, double u) {
  return estimate_survival(std::span<const RunSummary>(summarize(runs)), u);
}

}  // namespace malsim
