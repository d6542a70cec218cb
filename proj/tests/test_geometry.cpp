#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "malsim/geometry.hpp"
#include "test_helpers.hpp"

using namespace malsim;

TEST_CASE("window requires a positive half width") {
  CHECK_THROWS_AS(Window(0.0), std::invalid_argument);
  CHECK_THROWS_AS(Window(-1.0), std::invalid_argument);
  CHECK(Window(2.5).half_width() == 2.5);
}

TEST_CASE("segment endpoints must be distinct") {
  CHECK_THROWS_AS(Segment(Vec2{1, 1}, Vec2{1, 1}), std::invalid_argument);
  Segment s(Vec2{0, 0}, Vec2{3, 4});
  CHECK(s.length == doctest::Approx(5.0));
}

TEST_CASE("segment clipping against a rectangle") {
  const Rect rect{0.5, -1.0, 1.5, 1.0};

  SUBCASE("horizontal segment partially inside") {
    auto clipped = clip_to_rect(Vec2{0, 0}, Vec2{2, 0}, rect);
    REQUIRE(clipped.has_value());
    CHECK(distance(clipped->first, clipped->second) == doctest::Approx(1.0));
    CHECK(clipped->first.x == doctest::Approx(0.5));
    CHECK(clipped->second.x == doctest::Approx(1.5));
  }
  SUBCASE("segment fully outside") {
    CHECK_FALSE(clip_to_rect(Vec2{2, 2}, Vec2{3, 3}, rect).has_value());
  }
  SUBCASE("segment fully inside is unchanged") {
    auto clipped = clip_to_rect(Vec2{0.6, 0.1}, Vec2{1.4, -0.2}, rect);
    REQUIRE(clipped.has_value());
    CHECK(clipped->first == Vec2{0.6, 0.1});
    CHECK(clipped->second == Vec2{1.4, -0.2});
  }
  SUBCASE("diagonal crossing") {
    auto clipped = clip_to_rect(Vec2{0, -2}, Vec2{2, 2}, rect);
    REQUIRE(clipped.has_value());
    CHECK(rect.contains(clipped->first, 1e-12));
    CHECK(rect.contains(clipped->second, 1e-12));
  }
}

TEST_CASE("measure_length on a deterministic grid") {
  auto streets = testing::make_grid_streets(2.0, 3);  // 6 lines of length 4
  CHECK(streets->total_length() == doctest::Approx(24.0));

  SUBCASE("full window returns the total length") {
    CHECK(measure_length(*streets, streets->window().rect()) ==
          doctest::Approx(streets->total_length()));
  }
  SUBCASE("disjoint region returns zero") {
    CHECK(measure_length(*streets, Rect{5, 5, 6, 6}) == 0.0);
  }
  SUBCASE("analytic clip of a single horizontal street") {
    auto single = testing::make_streets(3.0, {Segment(Vec2{0, 0}, Vec2{2, 0})});
    CHECK(measure_length(*single, Rect{0.5, -1, 1.5, 1}) == doctest::Approx(1.0));
  }
  SUBCASE("quadrants partition the total length") {
    // Lines off the axes, so no street lies on a shared quadrant boundary.
    auto grid = testing::make_grid_streets(2.0, 4);
    const double q = measure_length(*grid, Rect{-2, -2, 0, 0}) +
                     measure_length(*grid, Rect{0, -2, 2, 0}) +
                     measure_length(*grid, Rect{-2, 0, 0, 2}) +
                     measure_length(*grid, Rect{0, 0, 2, 2});
    CHECK(std::abs(q - grid->total_length()) < 1e-6);
  }
}

TEST_CASE("street system rejects segments outside the window") {
  CHECK_THROWS_AS(StreetSystem(Window(1.0), {Segment(Vec2{0, 0}, Vec2{2, 0})}),
                  std::invalid_argument);
}
