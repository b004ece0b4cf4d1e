#pragma once

#include <compare>

namespace altroute {

/// WGS84 coordinate in degrees.
struct GeoPoint {
  double lat = 0.0;
  double lon = 0.0;

  bool valid() const noexcept {
    return lat >= -90.0 && lat <= 90.0 && lon >= -180.0 && lon <= 180.0;
  }

  friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

struct BoundingRect {
  GeoPoint min_corner;
  GeoPoint max_corner;

  bool valid() const noexcept {
    return min_corner.valid() && max_corner.valid() &&
           min_corner.lat <= max_corner.lat && min_corner.lon <= max_corner.lon;
  }

  /// Closed-interval containment on both axes.
  bool contains(const GeoPoint& p) const noexcept {
    return p.lat >= min_corner.lat && p.lat <= max_corner.lat &&
           p.lon >= min_corner.lon && p.lon <= max_corner.lon;
  }

  friend bool operator==(const BoundingRect&, const BoundingRect&) = default;
};

inline constexpr double kEarthRadiusMeters = 6371000.0;

/// Great-circle distance in meters (haversine formula).
double haversine_meters(const GeoPoint& a, const GeoPoint& b) noexcept;

}  // namespace altroute
