#include "malsim/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <queue>
#include <stdexcept>

namespace malsim {

WaitingTimeModel WaitingTimeModel::exponential(double rate) {
  WaitingTimeModel m;
  m.kind = Kind::Exponential;
  m.rate = rate;
  m.validate();
  return m;
}

WaitingTimeModel WaitingTimeModel::uniform_window(double low, double high) {
  WaitingTimeModel m;
  m.kind = Kind::UniformWindow;
  m.low = low;
  m.high = high;
  m.validate();
  return m;
}

void WaitingTimeModel::validate() const {
  if (kind == Kind::Exponential) {
    if (!(rate >= 0.0) || !std::isfinite(rate))
      throw std::invalid_argument("WaitingTimeModel: rate must be finite and nonnegative");
  } else {
    if (!(low > 0.0) || !(low <= high) || !std::isfinite(high))
      throw std::invalid_argument("WaitingTimeModel: need 0 < low <= high");
  }
}

double WaitingTimeModel::sample(RandomStream& rng) const {
  if (kind == Kind::Exponential) return rng.exponential(rate);
  if (low == high) return low;  // deterministic degenerate, used by tests
  return rng.uniform(low, high);
}

double EpidemicRun::tau_at(double radius) const {
  for (std::size_t i = 0; i < radii.size(); ++i)
    if (radii[i] == radius) return tau[i];
  throw std::invalid_argument("EpidemicRun: radius was not recorded");
}

char state_letter(NodeState s) {
  switch (s) {
    case NodeState::S: return 'S';
    case NodeState::I: return 'I';
    case NodeState::G: return 'G';
  }
  return '?';
}

namespace {

enum class EventKind : std::uint8_t { Infect, Patch };

struct Event {
  double time;
  std::uint64_t seq;  // insertion order; breaks time ties deterministically
  int src;
  int dst;
  EventKind kind;
};

struct EventAfter {
  bool operator()(const Event& a, const Event& b) const {
    if (a.time != b.time) return a.time > b.time;
    return a.seq > b.seq;
  }
};

}  // namespace

EpidemicRun run_epidemic(const GilbertGraph& graph, const DeviceSet& devices,
                         const DynamicsSpec& spec, double u, double time_cap, RandomStream& rng,
                         const RunOptions& options) {
  const int n = graph.size();
  if (static_cast<int>(devices.devices.size()) != n)
    throw std::invalid_argument("run_epidemic: graph/device size mismatch");
  if (!(u > 0.0)) throw std::invalid_argument("run_epidemic: u must be positive");
  if (!(time_cap > 0.0)) throw std::invalid_argument("run_epidemic: time_cap must be positive");
  if (u + graph.radius() > devices.window.half_width() + 1e-9)
    throw std::invalid_argument("run_epidemic: u + r exceeds the window half-width");
  spec.infection.validate();
  if (spec.patch) spec.patch->validate();

  std::vector<double> radii = options.record_radii;
  if (radii.empty()) radii.push_back(u);
  for (std::size_t i = 0; i + 1 < radii.size(); ++i)
    if (!(radii[i] < radii[i + 1]))
      throw std::invalid_argument("run_epidemic: record_radii must be strictly increasing");
  if (!(radii.front() > 0.0) || radii.back() > u)
    throw std::invalid_argument("run_epidemic: record_radii must lie in (0, u]");
  if (radii.back() < u) radii.push_back(u);

  const bool uniform_infection = spec.infection.kind == WaitingTimeModel::Kind::UniformWindow;
  const bool markovian_infection = !uniform_infection;

  EpidemicRun run;
  run.u = u;
  run.radii = radii;
  run.tau.assign(radii.size(), kInfinite);
  run.infected_at.assign(static_cast<std::size_t>(n), kInfinite);
  run.patched_at.assign(static_cast<std::size_t>(n), kInfinite);

  std::vector<NodeState> state(static_cast<std::size_t>(n), NodeState::S);
  std::vector<int> hops(static_cast<std::size_t>(n), 0);
  std::vector<double> dist_origin(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) dist_origin[static_cast<std::size_t>(i)] = norm(graph.position(i));

  int count_i = 0, count_g = 0;
  for (const Device& d : devices.devices) {
    if (d.initial_role == Role::Knight) {
      state[static_cast<std::size_t>(d.id)] = NodeState::G;
      run.patched_at[static_cast<std::size_t>(d.id)] = 0.0;
      ++count_g;
    }
  }

  std::vector<int> sources = options.initial_infected;
  if (sources.empty()) sources.push_back(devices.patient_zero_id());
  for (int s : sources) {
    if (s < 0 || s >= n) throw std::invalid_argument("run_epidemic: bad initial infected id");
    if (state[static_cast<std::size_t>(s)] != NodeState::S)
      throw std::invalid_argument("run_epidemic: initial infected device is a knight");
  }

  run.max_reachable_km = max_reachable_distance(graph, sources);
  run.connected_to_boundary = run.max_reachable_km >= u;

  std::priority_queue<Event, std::vector<Event>, EventAfter> queue;
  std::uint64_t next_seq = 0;
  auto schedule = [&](EventKind kind, int src, int dst, double t) {
    queue.push(Event{t, next_seq++, src, dst, kind});
  };

  // Directed pairs that could still change a state: (I,S) infection pairs and
  // (G,I) patch pairs. When both counts are zero the trajectory is frozen.
  std::int64_t live_is = 0, live_gi = 0;

  std::size_t next_radius = 0;
  bool stopped = false;

  auto record_radius_hits = [&](int id, double t) {
    const double d = dist_origin[static_cast<std::size_t>(id)];
    while (next_radius < radii.size() && d >= radii[next_radius]) {
      run.tau[next_radius] = t;
      ++next_radius;
    }
    if (next_radius == radii.size()) {
      run.reached_radius = true;
      stopped = true;
    }
  };

  auto become_infected = [&](int id, double t, int hop) {
    if (state[static_cast<std::size_t>(id)] != NodeState::S)
      throw std::logic_error("run_epidemic: infecting a non-susceptible device");
    state[static_cast<std::size_t>(id)] = NodeState::I;
    run.infected_at[static_cast<std::size_t>(id)] = t;
    hops[static_cast<std::size_t>(id)] = hop;
    ++count_i;
    run.peak_infected = std::max(run.peak_infected, count_i);
    if (uniform_infection && t + 1e-9 < hop * spec.infection.low)
      throw std::logic_error("run_epidemic: hop-speed bound violated");

    for (int k : graph.neighbors(id)) {
      switch (state[static_cast<std::size_t>(k)]) {
        case NodeState::S: ++live_is; break;  // new pair (id, k)
        case NodeState::I: --live_is; break;  // pair (k, id) is gone
        case NodeState::G: ++live_gi; break;  // new pair (k, id)
      }
    }

    record_radius_hits(id, t);
    if (stopped) return;

    if (markovian_infection) {
      if (spec.infection.enabled())
        for (int k : graph.neighbors(id))
          if (state[static_cast<std::size_t>(k)] == NodeState::S)
            schedule(EventKind::Infect, id, k, t + spec.infection.sample(rng));
    } else {
      // Renewal clocks run toward every neighbor while `id` stays infected.
      for (int k : graph.neighbors(id))
        schedule(EventKind::Infect, id, k, t + spec.infection.sample(rng));
    }
    if (spec.patch && spec.patch->enabled())
      for (int k : graph.neighbors(id))
        if (state[static_cast<std::size_t>(k)] == NodeState::G)
          schedule(EventKind::Patch, k, id, t + spec.patch->sample(rng));
  };

  auto become_patched = [&](int id, double t) {
    state[static_cast<std::size_t>(id)] = NodeState::G;
    run.patched_at[static_cast<std::size_t>(id)] = t;
    --count_i;
    ++count_g;

    for (int k : graph.neighbors(id)) {
      switch (state[static_cast<std::size_t>(k)]) {
        case NodeState::S: --live_is; break;  // pair (id, k) is gone
        case NodeState::I: ++live_gi; break;  // new pair (id, k)
        case NodeState::G: --live_gi; break;  // pair (k, id) is gone
      }
    }

    if (count_i == 0) {
      run.extinct_at = t;
      stopped = true;
      return;
    }
    for (int k : graph.neighbors(id))
      if (state[static_cast<std::size_t>(k)] == NodeState::I)
        schedule(EventKind::Patch, id, k, t + spec.patch->sample(rng));
  };

  double now = 0.0;
  for (int s : sources) {
    become_infected(s, 0.0, 0);
    if (stopped) break;
  }

  while (!stopped) {
    if (live_is + live_gi == 0) break;  // frozen: no transition is possible
    if (queue.empty()) break;           // disabled clocks (e.g. rate 0)
    const Event ev = queue.top();
    queue.pop();
    if (ev.time > time_cap) {
      run.censored = true;
      now = time_cap;
      break;
    }
    ++run.event_count;
    if (run.event_count > options.max_events)
      throw std::runtime_error("run_epidemic: event cap exceeded (diverging schedule?)");
    now = ev.time;

    if (ev.kind == EventKind::Infect) {
      if (state[static_cast<std::size_t>(ev.src)] != NodeState::I) continue;  // source patched
      if (state[static_cast<std::size_t>(ev.dst)] == NodeState::S) {
        become_infected(ev.dst, now, hops[static_cast<std::size_t>(ev.src)] + 1);
      } else if (uniform_infection) {
        // Lapsed attempt: draw a fresh iid delay while the source is infected.
        schedule(EventKind::Infect, ev.src, ev.dst, now + spec.infection.sample(rng));
      }
    } else {
      if (state[static_cast<std::size_t>(ev.dst)] == NodeState::I) become_patched(ev.dst, now);
      // A patch attempt on a device no longer infected lapses for good: G is
      // absorbing, so the (G, I) pair can never become active again.
    }
  }

  run.stop_time = run.censored ? time_cap : now;
  run.final_i = count_i;
  run.final_g = count_g;
  run.final_s = n - count_i - count_g;
  if (run.reached_radius && !run.connected_to_boundary)
    throw std::logic_error("run_epidemic: reached radius on a disconnected graph");
  return run;
}

std::vector<std::pair<int, NodeState>> snapshot(const EpidemicRun& run, double t) {
  if (!(t >= 0.0) || t > run.stop_time)
    throw std::invalid_argument("snapshot: time outside [0, stop_time]");
  std::vector<std::pair<int, NodeState>> states;
  states.reserve(run.infected_at.size());
  for (std::size_t i = 0; i < run.infected_at.size(); ++i) {
    NodeState s = NodeState::S;
    if (run.patched_at[i] <= t)
      s = NodeState::G;
    else if (run.infected_at[i] <= t)
      s = NodeState::I;
    states.emplace_back(static_cast<int>(i), s);
  }
  return states;
}

void write_snapshot_csv(const EpidemicRun& run, double t, std::ostream& out) {
  out << "id,state,time\n";
  char buf[64];
  for (const auto& [id, s] : snapshot(run, t)) {
    std::snprintf(buf, sizeof(buf), "%d,%c,%.9g\n", id, state_letter(s), t);
    out << buf;
  }
}

}  // namespace malsim
