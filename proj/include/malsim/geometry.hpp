#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace malsim {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline bool operator==(Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::sqrt(a.x * a.x + a.y * a.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }

struct Rect {
  double xlo = 0, ylo = 0, xhi = 0, yhi = 0;
  bool contains(Vec2 p, double tol = 0.0) const {
    return p.x >= xlo - tol && p.x <= xhi + tol && p.y >= ylo - tol && p.y <= yhi + tol;
  }
};

/// Square observation window of side 2*half_width centered at the origin (km).
class Window {
 public:
  explicit Window(double half_width);
  double half_width() const { return half_width_; }
  Rect rect() const { return {-half_width_, -half_width_, half_width_, half_width_}; }
  bool contains(Vec2 p, double tol = 0.0) const { return rect().contains(p, tol); }

 private:
  double half_width_;
};

/// Straight street segment. gen_a/gen_b index the Voronoi seeds whose cells the
/// segment separates; -1 for segments not produced by the tessellation.
struct Segment {
  Vec2 a;
  Vec2 b;
  double length;
  int gen_a = -1;
  int gen_b = -1;

  Segment(Vec2 a_, Vec2 b_, int gen_a_ = -1, int gen_b_ = -1);
};

/// Clip segment [a,b] to an axis-aligned rectangle (Liang-Barsky).
/// Returns the clipped endpoints, or nullopt when the segment misses the rect.
std::optional<std::pair<Vec2, Vec2>> clip_to_rect(Vec2 a, Vec2 b, const Rect& rect);

/// Street system: line segments clipped to a window, with the realized total
/// edge length. Immutable after construction and safe to share across threads.
class StreetSystem {
 public:
  StreetSystem(Window window, std::vector<Segment> segments, double gamma_target = 0.0,
               std::vector<Vec2> seed_points = {}, std::uint64_t seed = 0);

  const Window& window() const { return window_; }
  const std::vector<Segment>& segments() const { return segments_; }
  double gamma_target() const { return gamma_target_; }
  const std::vector<Vec2>& seed_points() const { return seed_points_; }
  double total_length() const { return total_length_; }
  std::uint64_t seed() const { return seed_; }

  /// cumulative_length()[i] = total length of segments [0, i); size = #segments + 1.
  const std::vector<double>& cumulative_length() const { return cumlen_; }

 private:
  Window window_;
  std::vector<Segment> segments_;
  double gamma_target_;
  std::vector<Vec2> seed_points_;
  std::uint64_t seed_;
  double total_length_ = 0.0;
  std::vector<double> cumlen_;
};

/// Total street length inside `region` (sum over exact segment-rectangle clips).
double measure_length(const StreetSystem& streets, const Rect& region);

}  // namespace malsim
