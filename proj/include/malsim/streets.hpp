#pragma once

#include <cstdint>
#include <iosfwd>

#include "malsim/geometry.hpp"
#include "malsim/rng.hpp"

namespace malsim {

/// Seed intensity (seeds/km^2) of the Poisson-Voronoi tessellation whose
/// expected edge length per unit area equals gamma: mu = (gamma/2)^2.
double calibrate_seed_intensity(double gamma);

/// Random street system: Poisson-Voronoi tessellation with edge-length
/// intensity gamma, clipped to the window. Seeds are sampled on the window
/// padded by 4/sqrt(mu) per side so cells meeting the window are complete.
StreetSystem generate_streets(double gamma, const Window& window, RandomStream& rng);

/// Same, seeding a fresh stream and recording the seed in the result.
StreetSystem generate_streets(double gamma, const Window& window, std::uint64_t seed);

/// CSV: header ax,ay,bx,by, one row per segment, 9 decimal places (km).
void write_streets_csv(const StreetSystem& streets, std::ostream& out);
/// JSON sidecar with gamma_target, half_width and seed.
void write_streets_meta(const StreetSystem& streets, std::ostream& out);
/// Rebuild a street system from CSV + sidecar. Voronoi seed points are not
/// part of the interchange format, so the result carries none.
StreetSystem read_streets_csv(std::istream& csv, std::istream& meta);

}  // namespace malsim
