#include "malsim/streets.hpp"

#include <algorithm>
#include <boost/polygon/voronoi.hpp>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace malsim {

namespace {

// Seeds are snapped to this grid (km) so the Voronoi predicates run on exact
// integer coordinates; 1e-6 km leaves the int32 domain good for ~2000 km.
constexpr double kSeedQuantum = 1e-6;
constexpr double kMinSegmentLength = 1e-12;
constexpr int kMaxAttempts = 100;

struct IntPoint {
  std::int32_t x, y;
  bool operator<(const IntPoint& o) const { return x < o.x || (x == o.x && y < o.y); }
  bool operator==(const IntPoint& o) const { return x == o.x && y == o.y; }
};

}  // namespace
}  // namespace malsim

namespace boost::polygon {

template <>
struct geometry_concept<malsim::IntPoint> {
  typedef point_concept type;
};

template <>
struct point_traits<malsim::IntPoint> {
  typedef std::int32_t coordinate_type;
  static coordinate_type get(const malsim::IntPoint& p, orientation_2d orient) {
    return orient == HORIZONTAL ? p.x : p.y;
  }
};

}  // namespace boost::polygon

namespace malsim {

double calibrate_seed_intensity(double gamma) {
  if (!(gamma > 0.0))
    throw std::invalid_argument("calibrate_seed_intensity: gamma must be positive");
  // Edge-length intensity of a Poisson-Voronoi tessellation with seed
  // intensity mu is 2*sqrt(mu); invert for mu.
  return 0.25 * gamma * gamma;
}

namespace {

StreetSystem generate_streets_impl(double gamma, const Window& window, RandomStream& rng,
                                   std::uint64_t recorded_seed) {
  const double mu = calibrate_seed_intensity(gamma);
  const double pad = 4.0 / std::sqrt(mu);
  const double ext = window.half_width() + pad;
  if (ext / kSeedQuantum > 2.0e9)
    throw std::invalid_argument("generate_streets: window too large for seed quantization");

  const Rect win = window.rect();

  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const std::uint64_t count = rng.poisson(mu * (2.0 * ext) * (2.0 * ext));
    if (count == 0) continue;

    std::vector<IntPoint> sites;
    sites.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
      const double x = rng.uniform(-ext, ext);
      const double y = rng.uniform(-ext, ext);
      sites.push_back({static_cast<std::int32_t>(std::llround(x / kSeedQuantum)),
                       static_cast<std::int32_t>(std::llround(y / kSeedQuantum))});
    }
    std::sort(sites.begin(), sites.end());
    sites.erase(std::unique(sites.begin(), sites.end()), sites.end());
    if (sites.size() < 2) continue;

    std::vector<Vec2> seeds;
    seeds.reserve(sites.size());
    for (const IntPoint& p : sites) seeds.push_back({p.x * kSeedQuantum, p.y * kSeedQuantum});

    boost::polygon::voronoi_diagram<double> diagram;
    boost::polygon::construct_voronoi(sites.begin(), sites.end(), &diagram);

    std::vector<Segment> segments;
    for (const auto& edge : diagram.edges()) {
      if (!edge.is_primary()) continue;
      const std::size_t i1 = edge.cell()->source_index();
      const std::size_t i2 = edge.twin()->cell()->source_index();
      if (i1 >= i2) continue;  // visit each bisector once

      Vec2 e0, e1;
      if (edge.is_finite()) {
        e0 = {edge.vertex0()->x() * kSeedQuantum, edge.vertex0()->y() * kSeedQuantum};
        e1 = {edge.vertex1()->x() * kSeedQuantum, edge.vertex1()->y() * kSeedQuantum};
      } else {
        // Rays and full bisector lines: extend from the midpoint of the two
        // sites along the bisector far enough to leave the window.
        const Vec2 p1 = seeds[i1];
        const Vec2 p2 = seeds[i2];
        const Vec2 origin = 0.5 * (p1 + p2);
        const Vec2 dir{p1.y - p2.y, p2.x - p1.x};
        const double m = std::max(std::abs(dir.x), std::abs(dir.y));
        if (m == 0.0) continue;
        const double k = 4.0 * ext / m;
        e0 = edge.vertex0() ? Vec2{edge.vertex0()->x() * kSeedQuantum,
                                   edge.vertex0()->y() * kSeedQuantum}
                            : origin - k * dir;
        e1 = edge.vertex1() ? Vec2{edge.vertex1()->x() * kSeedQuantum,
                                   edge.vertex1()->y() * kSeedQuantum}
                            : origin + k * dir;
      }

      auto clipped = clip_to_rect(e0, e1, win);
      if (!clipped) continue;
      if (distance(clipped->first, clipped->second) < kMinSegmentLength) continue;
      segments.emplace_back(clipped->first, clipped->second, static_cast<int>(i1),
                            static_cast<int>(i2));
    }

    if (segments.empty()) continue;
    return StreetSystem(window, std::move(segments), gamma, std::move(seeds), recorded_seed);
  }
  throw std::runtime_error(
      "generate_streets: no street length inside the window after 100 attempts");
}

}  // namespace

StreetSystem generate_streets(double gamma, const Window& window, RandomStream& rng) {
  return generate_streets_impl(gamma, window, rng, 0);
}

StreetSystem generate_streets(double gamma, const Window& window, std::uint64_t seed) {
  RandomStream rng(seed);
  return generate_streets_impl(gamma, window, rng, seed);
}

void write_streets_csv(const StreetSystem& streets, std::ostream& out) {
  out << "ax,ay,bx,by\n";
  char buf[160];
  for (const Segment& s : streets.segments()) {
    std::snprintf(buf, sizeof(buf), "%.9f,%.9f,%.9f,%.9f\n", s.a.x, s.a.y, s.b.x, s.b.y);
    out << buf;
  }
}

void write_streets_meta(const StreetSystem& streets, std::ostream& out) {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "{\"gamma_target\": %.9g, \"half_width\": %.9g, \"seed\": %llu}\n",
                streets.gamma_target(), streets.window().half_width(),
                static_cast<unsigned long long>(streets.seed()));
  out << buf;
}

StreetSystem read_streets_csv(std::istream& csv, std::istream& meta) {
  std::string blob((std::istreambuf_iterator<char>(meta)), std::istreambuf_iterator<char>());
  auto field = [&](const std::string& key) {
    const auto pos = blob.find("\"" + key + "\"");
    if (pos == std::string::npos) throw std::runtime_error("streets meta: missing " + key);
    const auto colon = blob.find(':', pos);
    return std::stod(blob.substr(colon + 1));
  };
  const double gamma = field("gamma_target");
  const double half_width = field("half_width");
  const auto seed = static_cast<std::uint64_t>(field("seed"));

  std::string line;
  if (!std::getline(csv, line) || line.rfind("ax,ay,bx,by", 0) != 0)
    throw std::runtime_error("streets csv: missing header");
  std::vector<Segment> segments;
  while (std::getline(csv, line)) {
    if (line.empty()) continue;
    Vec2 a, b;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &a.x, &a.y, &b.x, &b.y) != 4)
      throw std::runtime_error("streets csv: malformed row: " + line);
    segments.emplace_back(a, b);
  }
  return StreetSystem(Window(half_width), std::move(segments), gamma, {}, seed);
}

}  // namespace malsim
