#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "altroute/geo.hpp"
#include "altroute/shortest_path.hpp"

namespace altroute::service {

using Polyline = std::vector<GeoPoint>;

/// An external routing source. fetch() may throw; callers treat any failure
/// as "no routes from this provider".
class ProviderAdapter {
 public:
  virtual ~ProviderAdapter() = default;
  virtual bool available() const = 0;
  virtual std::vector<Polyline> fetch(const GeoPoint& source, const GeoPoint& target, std::size_t k) = 0;
};

/// Replays canned routes from a JSON fixture:
///
///   {"cell_decimals": 3,
///    "queries": [{"source": [lat, lon], "target": [lat, lon],
///                 "routes": [[[lat, lon], ...], ...]}]}
///
/// Queries are keyed by source and target rounded to `cell_decimals`.
class ReplayStubProvider : public ProviderAdapter {
 public:
  static ReplayStubProvider from_file(const std::string& path);
  static ReplayStubProvider from_json(const std::string& text);

  bool available() const override { return true; }
  std::vector<Polyline> fetch(const GeoPoint& source, const GeoPoint& target, std::size_t k) override;

  std::size_t size() const noexcept { return routes_.size(); }

 private:
  using CellKey = std::pair<std::pair<long long, long long>, std::pair<long long, long long>>;
  CellKey key(const GeoPoint& s, const GeoPoint& t) const;

  int decimals_ = 3;
  std::map<CellKey, std::vector<Polyline>> routes_;
};

/// Maps a provider polyline onto the network: every point is snapped to its
/// nearest vertex and consecutive distinct vertices are joined by the fastest
/// direct edge, or by a shortest path when no direct edge exists. Travel time
/// and length therefore come from the network.
Path polyline_to_path(const RoadNetwork& net, const Polyline& line);

}  // namespace altroute::service
