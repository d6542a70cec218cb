#include "malsim/devices.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace malsim {

std::vector<Vec2> DeviceSet::positions() const {
  std::vector<Vec2> out;
  out.reserve(devices.size());
  for (const Device& d : devices) out.push_back(d.position);
  return out;
}

std::vector<std::pair<Vec2, int>> sample_on_streets(const StreetSystem& streets, double intensity,
                                                    RandomStream& rng) {
  if (intensity < 0.0)
    throw std::invalid_argument("sample_on_streets: intensity must be nonnegative");
  std::vector<std::pair<Vec2, int>> points;
  if (intensity == 0.0 || streets.segments().empty()) return points;

  const double total = streets.total_length();
  const auto& cum = streets.cumulative_length();
  const std::uint64_t count = rng.poisson(intensity * total);
  points.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    // One arclength draw picks the segment (probability proportional to its
    // length) and the uniform position along it.
    const double arc = rng.uniform01() * total;
    auto it = std::upper_bound(cum.begin(), cum.end(), arc);
    auto idx = static_cast<std::size_t>(it - cum.begin()) - 1;
    if (idx >= streets.segments().size()) idx = streets.segments().size() - 1;
    const Segment& seg = streets.segments()[idx];
    const double t = std::min((arc - cum[idx]) / seg.length, 1.0);
    points.emplace_back(seg.a + t * (seg.b - seg.a), static_cast<int>(idx));
  }
  return points;
}

std::pair<Vec2, int> nearest_street_point(const StreetSystem& streets, Vec2 q) {
  if (streets.segments().empty())
    throw std::invalid_argument("nearest_street_point: empty street system");

  double best_d2 = std::numeric_limits<double>::infinity();
  int best_seg = -1;
  Vec2 best_point;
  const auto& segments = streets.segments();
  // Candidates are ordered (distance, segment id, parameter); scanning in id
  // order with strict improvement realizes the documented tie-break.
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const Segment& s = segments[i];
    const Vec2 ab = s.b - s.a;
    const double t = std::clamp(dot(q - s.a, ab) / (s.length * s.length), 0.0, 1.0);
    const Vec2 foot = s.a + t * ab;
    const Vec2 d = q - foot;
    const double d2 = dot(d, d);
    if (d2 < best_d2) {
      best_d2 = d2;
      best_seg = static_cast<int>(i);
      best_point = foot;
    }
  }
  return {best_point, best_seg};
}

DeviceSet build_device_set(std::shared_ptr<const StreetSystem> streets, double lambda, double rho,
                           RandomStream& ordinary_rng, RandomStream& knight_rng) {
  if (!(lambda > 0.0)) throw std::invalid_argument("build_device_set: lambda must be positive");
  if (rho < 0.0) throw std::invalid_argument("build_device_set: rho must be nonnegative");
  if (!streets || streets->segments().empty() || !(streets->total_length() > 0.0))
    throw std::runtime_error("build_device_set: empty street system");

  DeviceSet set;
  set.streets = streets;
  set.window = streets->window();
  set.lambda = lambda;
  set.rho = rho;

  auto [origin_point, origin_segment] = nearest_street_point(*streets, Vec2{0.0, 0.0});
  set.devices.push_back({0, origin_point, Role::PatientZero, origin_segment});

  int next_id = 1;
  for (const auto& [pos, seg] : sample_on_streets(*streets, lambda, ordinary_rng))
    set.devices.push_back({next_id++, pos, Role::Ordinary, seg});
  for (const auto& [pos, seg] : sample_on_streets(*streets, rho, knight_rng))
    set.devices.push_back({next_id++, pos, Role::Knight, seg});
  return set;
}

DeviceSet build_device_set(std::shared_ptr<const StreetSystem> streets, double lambda, double rho,
                           RandomStream& rng) {
  return build_device_set(std::move(streets), lambda, rho, rng, rng);
}

void write_devices_csv(const DeviceSet& devices, std::ostream& out) {
  out << "id,x,y,role,segment_id\n";
  char buf[128];
  for (const Device& d : devices.devices) {
    const char role = d.initial_role == Role::PatientZero ? 'Z'
                      : d.initial_role == Role::Knight    ? 'K'
                                                          : 'O';
    std::snprintf(buf, sizeof(buf), "%d,%.9f,%.9f,%c,%d\n", d.id, d.position.x, d.position.y,
                  role, d.segment_id);
    out << buf;
  }
}

}  // namespace malsim
