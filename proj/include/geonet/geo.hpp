#pragma once

namespace geonet {

/// Mean Earth radius (IUGG), kilometers.
inline constexpr double kEarthRadiusKm = 6371.0088;

/// Latitude/longitude in decimal degrees. Longitude is normalized into (-180, 180].
class GeoPoint {
public:
  /// Throws ValidationError if lat is outside [-90, 90] or either value is not finite.
  GeoPoint(double lat_deg, double lon_deg);

  double lat() const { return lat_; }
  double lon() const { return lon_; }

  bool operator==(const GeoPoint&) const = default;

private:
  double lat_;
  double lon_;
};

/// Great-circle distance in km on a sphere of radius kEarthRadiusKm.
/// Uses the arcsine form, which stays accurate for nearby points.
double haversine_distance(const GeoPoint& a, const GeoPoint& b);

}  // namespace geonet
