#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "malsim/streets.hpp"
#include "test_helpers.hpp"

using namespace malsim;

TEST_CASE("seed intensity inversion") {
  CHECK(calibrate_seed_intensity(20.0) == doctest::Approx(100.0));
  CHECK(calibrate_seed_intensity(2.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(calibrate_seed_intensity(0.0), std::invalid_argument);
  CHECK_THROWS_AS(calibrate_seed_intensity(-3.0), std::invalid_argument);
}

// Monte Carlo oracle for the mu = (gamma/2)^2 inversion: the realized street
// length per unit area must come out at gamma.
static void check_length_calibration(double gamma, double half_width, int realizations,
                                     std::uint64_t seed0) {
  const double area = 4.0 * half_width * half_width;
  std::vector<double> densities;
  densities.reserve(realizations);
  for (int i = 0; i < realizations; ++i) {
    const StreetSystem streets =
        generate_streets(gamma, Window(half_width), seed0 + static_cast<std::uint64_t>(i));
    densities.push_back(streets.total_length() / area);
  }
  const auto m = testing::moments(densities);
  INFO("gamma=", gamma, " mean density=", m.mean, " se=", m.se_mean);
  CHECK(std::abs(m.mean - gamma) < 0.02 * gamma);      // within 2%
  CHECK(std::abs(m.mean - gamma) < 3.0 * m.se_mean);   // within 3 standard errors
}

TEST_CASE("edge-length density matches gamma at mu=100") {
  check_length_calibration(20.0, 10.0, 100, 7001);
}

TEST_CASE("edge-length density matches gamma at mu=1") {
  check_length_calibration(2.0, 10.0, 150, 7002);
}

TEST_CASE("segments are Voronoi bisector pieces of their recorded seeds") {
  for (std::uint64_t seed : {11u, 12u, 13u, 14u, 15u}) {
    const StreetSystem streets = generate_streets(20.0, Window(0.5), seed);
    REQUIRE(!streets.segments().empty());
    const auto& seeds = streets.seed_points();
    for (const Segment& s : streets.segments()) {
      REQUIRE(s.gen_a >= 0);
      REQUIRE(s.gen_b >= 0);
      const Vec2 mid = 0.5 * (s.a + s.b);
      const double da = distance(mid, seeds[static_cast<std::size_t>(s.gen_a)]);
      const double db = distance(mid, seeds[static_cast<std::size_t>(s.gen_b)]);
      CHECK(std::abs(da - db) < 1e-9);
      for (std::size_t k = 0; k < seeds.size(); ++k) {
        if (static_cast<int>(k) == s.gen_a || static_cast<int>(k) == s.gen_b) continue;
        CHECK(distance(mid, seeds[k]) >= da - 1e-9);
      }
    }
  }
}

TEST_CASE("segments stay inside the window") {
  const StreetSystem streets = generate_streets(20.0, Window(2.0), 99);
  const Rect rect = streets.window().rect();
  for (const Segment& s : streets.segments()) {
    CHECK(rect.contains(s.a, 1e-9));
    CHECK(rect.contains(s.b, 1e-9));
  }
  CHECK(streets.total_length() == doctest::Approx(measure_length(streets, rect)));
}

TEST_CASE("identical parameters and seed give identical street systems") {
  const StreetSystem a = generate_streets(20.0, Window(1.5), 4242);
  const StreetSystem b = generate_streets(20.0, Window(1.5), 4242);
  REQUIRE(a.segments().size() == b.segments().size());
  for (std::size_t i = 0; i < a.segments().size(); ++i) {
    CHECK(a.segments()[i].a == b.segments()[i].a);
    CHECK(a.segments()[i].b == b.segments()[i].b);
  }
  CHECK(a.total_length() == b.total_length());
}

TEST_CASE("tiny windows return or resample without failing") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const StreetSystem streets = generate_streets(20.0, Window(0.01), seed);
    CHECK(streets.total_length() > 0.0);
    for (const Segment& s : streets.segments()) {
      CHECK(streets.window().contains(s.a, 1e-9));
      CHECK(streets.window().contains(s.b, 1e-9));
    }
  }
}

TEST_CASE("street CSV round trip") {
  const StreetSystem streets = generate_streets(20.0, Window(1.0), 5150);
  std::ostringstream csv, meta;
  write_streets_csv(streets, csv);
  write_streets_meta(streets, meta);

  std::istringstream csv_in(csv.str()), meta_in(meta.str());
  const StreetSystem restored = read_streets_csv(csv_in, meta_in);
  CHECK(restored.gamma_target() == doctest::Approx(20.0));
  CHECK(restored.window().half_width() == doctest::Approx(1.0));
  CHECK(restored.seed() == 5150);
  REQUIRE(restored.segments().size() == streets.segments().size());
  for (std::size_t i = 0; i < streets.segments().size(); ++i) {
    CHECK(std::abs(restored.segments()[i].a.x - streets.segments()[i].a.x) < 1e-9);
    CHECK(std::abs(restored.segments()[i].b.y - streets.segments()[i].b.y) < 1e-9);
  }
  CHECK(std::abs(restored.total_length() - streets.total_length()) < 1e-4);

  SUBCASE("export is byte-stable") {
    std::ostringstream again;
    write_streets_csv(generate_streets(20.0, Window(1.0), 5150), again);
    CHECK(again.str() == csv.str());
  }
}
