#pragma once

#include <iosfwd>
#include <string_view>

#include "malsim/devices.hpp"
#include "malsim/dynamics.hpp"
#include "malsim/geometry.hpp"

namespace malsim {

/// Street system alone: red segments on a white background.
void write_streets_svg(const StreetSystem& streets, std::ostream& out);

/// One epidemic state: streets red, susceptible blue, infected black, knights
/// green, plus the stop circle of radius `circle_radius` (skipped when <= 0).
/// `annotation` renders as a text overlay (e.g. an extinction marker).
void write_snapshot_svg(const StreetSystem* streets, const DeviceSet& devices,
                        const EpidemicRun& run, double t, double circle_radius,
                        std::string_view annotation, std::ostream& out);

}  // namespace malsim
