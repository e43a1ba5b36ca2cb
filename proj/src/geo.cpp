#include "geonet/geo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "geonet/errors.hpp"

namespace geonet {

namespace {

double normalize_lon(double lon) {
  double r = std::fmod(lon, 360.0);  // (-360, 360)
  if (r <= -180.0) r += 360.0;
  else if (r > 180.0) r -= 360.0;
  return r;
}

constexpr double kDegToRad = std::numbers::pi / 180.0;

}  // namespace

GeoPoint::GeoPoint(double lat_deg, double lon_deg) {
  if (!std::isfinite(lat_deg) || !std::isfinite(lon_deg)) throw ValidationError("non-finite coordinate");
  if (lat_deg < -90.0 || lat_deg > 90.0) throw ValidationError("latitude out of range [-90, 90]");
  lat_ = lat_deg;
  lon_ = normalize_lon(lon_deg);
}

double haversine_distance(const GeoPoint& a, const GeoPoint& b) {
  const double phi1 = a.lat() * kDegToRad;
  const double phi2 = b.lat() * kDegToRad;
  const double dphi = phi2 - phi1;
  const double dlambda = (b.lon() - a.lon()) * kDegToRad;
  const double s_phi = std::sin(dphi / 2.0);
  const double s_lambda = std::sin(dlambda / 2.0);
  double h = s_phi * s_phi + std::cos(phi1) * std::cos(phi2) * s_lambda * s_lambda;
  h = std::clamp(h, 0.0, 1.0);
  return 2.0 * kEarthRadiusKm * std::asin(std::sqrt(h));
}

}  // namespace geonet
