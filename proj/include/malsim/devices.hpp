#pragma once

#include <iosfwd>
#include <memory>
#include <utility>
#include <vector>

#include "malsim/geometry.hpp"
#include "malsim/rng.hpp"

namespace malsim {

enum class Role : std::uint8_t { Ordinary, Knight, PatientZero };

struct Device {
  int id = 0;
  Vec2 position;
  Role initial_role = Role::Ordinary;
  int segment_id = -1;
};

/// Devices on a street system. Device 0 is always the patient zero, anchored
/// at the street point nearest the origin; ordinary devices and initial
/// knights follow in sampling order. Immutable once built.
struct DeviceSet {
  std::shared_ptr<const StreetSystem> streets;  // null for hand-built test sets
  Window window{1.0};
  std::vector<Device> devices;
  double lambda = 0.0;  // devices/km
  double rho = 0.0;     // devices/km, 0 for SI runs

  int patient_zero_id() const { return 0; }
  int size() const { return static_cast<int>(devices.size()); }
  std::vector<Vec2> positions() const;
};

/// Poisson point process with linear intensity (devices/km) on the streets.
/// Count ~ Poisson(intensity * total_length); positions uniform on arclength.
std::vector<std::pair<Vec2, int>> sample_on_streets(const StreetSystem& streets, double intensity,
                                                    RandomStream& rng);

/// Point of the street system nearest to q, with its segment id. Ties broken
/// by lowest segment id, then by parameter closest to the segment start.
std::pair<Vec2, int> nearest_street_point(const StreetSystem& streets, Vec2 q);

/// Ordinary devices (intensity lambda) and knights (intensity rho) from two
/// independent streams, plus patient zero at the street point nearest the origin.
DeviceSet build_device_set(std::shared_ptr<const StreetSystem> streets, double lambda, double rho,
                           RandomStream& ordinary_rng, RandomStream& knight_rng);

/// Single-stream variant: ordinary devices first, then knights.
DeviceSet build_device_set(std::shared_ptr<const StreetSystem> streets, double lambda, double rho,
                           RandomStream& rng);

/// CSV: id,x,y,role,segment_id with role in {O,K,Z}.
void write_devices_csv(const DeviceSet& devices, std::ostream& out);

}  // namespace malsim
