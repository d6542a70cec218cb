#pragma once

#include <cmath>
#include <memory>
#include <vector>

#include "malsim/devices.hpp"
#include "malsim/geometry.hpp"
#include "malsim/gilbert.hpp"

namespace malsim::testing {

/// Deterministic street system from hand-built segments (streets need not be
/// random for most device/engine tests).
inline std::shared_ptr<const StreetSystem> make_streets(double half_width,
                                                        std::vector<Segment> segments) {
  return std::make_shared<const StreetSystem>(Window(half_width), std::move(segments));
}

/// Square grid of streets with `lines` lines per axis spanning [-extent, extent].
inline std::shared_ptr<const StreetSystem> make_grid_streets(double extent, int lines) {
  std::vector<Segment> segments;
  for (int i = 0; i < lines; ++i) {
    const double c = lines == 1 ? 0.0 : -extent + 2.0 * extent * i / (lines - 1);
    segments.emplace_back(Vec2{-extent, c}, Vec2{extent, c});
    segments.emplace_back(Vec2{c, -extent}, Vec2{c, extent});
  }
  return make_streets(extent, std::move(segments));
}

/// Synthetic device set at fixed positions; device 0 is patient zero.
inline DeviceSet make_devices(double half_width, const std::vector<Vec2>& positions,
                              const std::vector<Role>& roles = {}) {
  DeviceSet set;
  set.window = Window(half_width);
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const Role role = i == 0 ? Role::PatientZero : (i < roles.size() ? roles[i] : Role::Ordinary);
    set.devices.push_back({static_cast<int>(i), positions[i], role, -1});
  }
  return set;
}

/// O(n^2) all-pairs adjacency; the independent oracle for GilbertGraph.
inline std::vector<std::vector<int>> brute_force_adjacency(const std::vector<Vec2>& positions,
                                                           double r) {
  const double r2 = r * r;
  std::vector<std::vector<int>> adjacency(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) {
    for (std::size_t j = i + 1; j < positions.size(); ++j) {
      const Vec2 d = positions[j] - positions[i];
      if (dot(d, d) <= r2) {
        adjacency[i].push_back(static_cast<int>(j));
        adjacency[j].push_back(static_cast<int>(i));
      }
    }
  }
  return adjacency;
}

struct Moments {
  double mean = 0.0;
  double variance = 0.0;  // sample variance (n-1)
  double se_mean = 0.0;
  int n = 0;
};

inline Moments moments(const std::vector<double>& xs) {
  Moments m;
  m.n = static_cast<int>(xs.size());
  for (double x : xs) m.mean += x;
  m.mean /= m.n;
  for (double x : xs) m.variance += (x - m.mean) * (x - m.mean);
  m.variance /= (m.n - 1);
  m.se_mean = std::sqrt(m.variance / m.n);
  return m;
}

}  // namespace malsim::testing
