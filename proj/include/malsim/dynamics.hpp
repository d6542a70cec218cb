#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "malsim/devices.hpp"
#include "malsim/gilbert.hpp"
#include "malsim/rng.hpp"

namespace malsim {

inline constexpr double kInfinite = std::numeric_limits<double>::infinity();

/// Waiting-time distribution for transmission attempts. Exponential rate 0 is
/// allowed and means the clock never fires (used by control grids starting at 0).
struct WaitingTimeModel {
  enum class Kind : std::uint8_t { Exponential, UniformWindow };
  Kind kind = Kind::Exponential;
  double rate = 0.0;  // min^-1 (Exponential)
  double low = 0.0;   // min (UniformWindow)
  double high = 0.0;  // min (UniformWindow)

  static WaitingTimeModel exponential(double rate);
  static WaitingTimeModel uniform_window(double low, double high);

  bool enabled() const { return kind == Kind::UniformWindow || rate > 0.0; }
  double sample(RandomStream& rng) const;
  void validate() const;

  bool operator==(const WaitingTimeModel&) const = default;
};

/// Infection model plus optional patch model; patch absent means pure SI.
struct DynamicsSpec {
  WaitingTimeModel infection;
  std::optional<WaitingTimeModel> patch;

  bool is_sig() const { return patch.has_value(); }
  bool operator==(const DynamicsSpec&) const = default;
};

enum class NodeState : std::uint8_t { S, I, G };

struct RunOptions {
  /// Radii (km, ascending) whose hitting times are recorded; u is appended if
  /// missing. Defaults to {u}.
  std::vector<double> record_radii;
  /// Devices infected at t=0; defaults to {patient zero}. Initial knights are
  /// always G and may not appear here.
  std::vector<int> initial_infected;
  /// Hard cap on processed events; exceeding it raises a diagnostic error.
  std::uint64_t max_events = 500'000'000;
};

/// Outcome of one trajectory. Per-device transition timestamps are retained so
/// states at any time <= stop_time can be reconstructed.
struct EpidemicRun {
  double u = 0.0;
  std::vector<double> radii;  // ascending, back() == u
  std::vector<double> tau;    // hitting times per radius; +inf when never hit
  bool reached_radius = false;
  std::optional<double> extinct_at;
  bool censored = false;  // stopped by time_cap
  bool connected_to_boundary = false;
  double max_reachable_km = 0.0;
  int final_s = 0, final_i = 0, final_g = 0;
  int peak_infected = 0;
  std::uint64_t event_count = 0;
  double stop_time = 0.0;
  std::vector<double> infected_at;  // per device id; +inf when never infected
  std::vector<double> patched_at;   // per device id; +inf when never patched

  double tau_at(double radius) const;  // throws if radius was not recorded
  bool connected_at(double radius) const { return max_reachable_km >= radius; }
};

/// One trajectory of the SI/SIG dynamics on the graph via a discrete-event
/// queue with per-directed-edge clocks and lazy invalidation. Stops at the
/// first of: a device at distance >= u from the origin becomes infected,
/// no infected device remains, no state change is possible any more, or
/// time_cap (censored).
EpidemicRun run_epidemic(const GilbertGraph& graph, const DeviceSet& devices,
                         const DynamicsSpec& spec, double u, double time_cap, RandomStream& rng,
                         const RunOptions& options = {});

/// Device states at time t, reconstructed from the recorded timestamps.
/// Throws when t is outside [0, stop_time].
std::vector<std::pair<int, NodeState>> snapshot(const EpidemicRun& run, double t);

/// CSV: id,state,time.
void write_snapshot_csv(const EpidemicRun& run, double t, std::ostream& out);

char state_letter(NodeState s);

}  // namespace malsim
