#include "malsim/geometry.hpp"

#include <stdexcept>

namespace malsim {

Window::Window(double half_width) : half_width_(half_width) {
  if (!(half_width > 0.0)) throw std::invalid_argument("Window: half_width must be positive");
}

Segment::Segment(Vec2 a_, Vec2 b_, int gen_a_, int gen_b_)
    : a(a_), b(b_), length(distance(a_, b_)), gen_a(gen_a_), gen_b(gen_b_) {
  if (!(length > 0.0)) throw std::invalid_argument("Segment: endpoints must be distinct");
}

std::optional<std::pair<Vec2, Vec2>> clip_to_rect(Vec2 a, Vec2 b, const Rect& rect) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  double t0 = 0.0, t1 = 1.0;

  auto clip = [&](double p, double q) {
    if (p == 0.0) return q >= 0.0;  // parallel: inside iff q >= 0
    const double t = q / p;
    if (p < 0.0) {
      if (t > t1) return false;
      if (t > t0) t0 = t;
    } else {
      if (t < t0) return false;
      if (t < t1) t1 = t;
    }
    return true;
  };

  if (!clip(-dx, a.x - rect.xlo)) return std::nullopt;
  if (!clip(dx, rect.xhi - a.x)) return std::nullopt;
  if (!clip(-dy, a.y - rect.ylo)) return std::nullopt;
  if (!clip(dy, rect.yhi - a.y)) return std::nullopt;

  const Vec2 p0 = t0 == 0.0 ? a : Vec2{a.x + t0 * dx, a.y + t0 * dy};
  const Vec2 p1 = t1 == 1.0 ? b : Vec2{a.x + t1 * dx, a.y + t1 * dy};
  return std::make_pair(p0, p1);
}

StreetSystem::StreetSystem(Window window, std::vector<Segment> segments, double gamma_target,
                           std::vector<Vec2> seed_points, std::uint64_t seed)
    : window_(window),
      segments_(std::move(segments)),
      gamma_target_(gamma_target),
      seed_points_(std::move(seed_points)),
      seed_(seed) {
  cumlen_.reserve(segments_.size() + 1);
  cumlen_.push_back(0.0);
  for (const Segment& s : segments_) {
    if (!window_.contains(s.a, 1e-9) || !window_.contains(s.b, 1e-9))
      throw std::invalid_argument("StreetSystem: segment endpoint outside window");
    total_length_ += s.length;
    cumlen_.push_back(total_length_);
  }
}

double measure_length(const StreetSystem& streets, const Rect& region) {
  double total = 0.0;
  for (const Segment& s : streets.segments()) {
    if (auto clipped = clip_to_rect(s.a, s.b, region))
      total += distance(clipped->first, clipped->second);
  }
  return total;
}

}  // namespace malsim
