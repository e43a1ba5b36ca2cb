#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "geonet/errors.hpp"
#include "geonet/geo.hpp"
#include "oracles.hpp"

using geonet::GeoPoint;
using geonet::haversine_distance;
using geonet::kEarthRadiusKm;

TEST_CASE("identical points are zero apart") {
  CHECK(haversine_distance({28.7, 77.1}, {28.7, 77.1}) == 0.0);
}

TEST_CASE("equatorial antipodes are half a circumference apart") {
  CHECK(haversine_distance({0, 0}, {0, 180}) == doctest::Approx(std::numbers::pi * kEarthRadiusKm).epsilon(1e-12));
}

TEST_CASE("Delhi to Mumbai matches the chord-length oracle") {
  const double oracle = oracle::chord_distance_km(28.7041, 77.1025, 19.0760, 72.8777);
  CHECK(std::fabs(oracle - 1153.2429) < 1e-3);  // frozen oracle value
  CHECK(std::fabs(haversine_distance({28.7041, 77.1025}, {19.0760, 72.8777}) - oracle) < 0.1);
}

TEST_CASE("longitude is normalized into (-180, 180]") {
  CHECK(GeoPoint(10, -180).lon() == 180.0);
  CHECK(GeoPoint(10, 190).lon() == doctest::Approx(-170.0));
  CHECK(GeoPoint(10, 540).lon() == 180.0);
  CHECK(haversine_distance({5, -180}, {5, 180}) == 0.0);
}

TEST_CASE("latitude outside [-90, 90] is rejected") {
  CHECK_THROWS_AS(GeoPoint(95, 0), geonet::ValidationError);
  CHECK_THROWS_AS(GeoPoint(-90.0001, 0), geonet::ValidationError);
  CHECK_THROWS_AS(GeoPoint(std::nan(""), 0), geonet::ValidationError);
  CHECK_NOTHROW(GeoPoint(90, 0));
}

TEST_CASE("metric properties on random points") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> lat(-90, 90), lon(-180, 180);
  for (int i = 0; i < 2000; ++i) {
    GeoPoint a(lat(rng), lon(rng)), b(lat(rng), lon(rng)), c(lat(rng), lon(rng));
    const double ab = haversine_distance(a, b);
    CHECK(ab == haversine_distance(b, a));
    CHECK(ab >= 0.0);
    CHECK(ab <= std::numbers::pi * kEarthRadiusKm + 1e-9);
    CHECK(ab <= haversine_distance(a, c) + haversine_distance(c, b) + 1e-6);
    CHECK(std::fabs(ab - oracle::chord_distance_km(a.lat(), a.lon(), b.lat(), b.lon())) < 1e-6);
  }
}

TEST_CASE("nearby points stay accurate") {
  // 1e-6 degrees of latitude is about 0.111 m.
  const double d = haversine_distance({20.0, 70.0}, {20.000001, 70.0});
  CHECK(d == doctest::Approx(kEarthRadiusKm * 1e-6 * std::numbers::pi / 180.0).epsilon(1e-8));
}
