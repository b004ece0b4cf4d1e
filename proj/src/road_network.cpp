#include "altroute/road_network.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

#include "altroute/error.hpp"

namespace altroute {

double haversine_meters(const GeoPoint& a, const GeoPoint& b) noexcept {
  constexpr double kDegToRad = 3.14159265358979323846 / 180.0;
  const double phi1 = a.lat * kDegToRad;
  const double phi2 = b.lat * kDegToRad;
  const double dphi = (b.lat - a.lat) * kDegToRad;
  const double dlambda = (b.lon - a.lon) * kDegToRad;
  const double s1 = std::sin(dphi / 2.0);
  const double s2 = std::sin(dlambda / 2.0);
  const double h = s1 * s1 + std::cos(phi1) * std::cos(phi2) * s2 * s2;
  return 2.0 * kEarthRadiusMeters * std::asin(std::sqrt(std::min(1.0, h)));
}

std::string_view to_string(RoadClass rc) {
  return rc == RoadClass::Motorway ? "motorway" : "other";
}

double edge_travel_time(double length_m, double max_speed_kmh, RoadClass road_class) {
  if (!(length_m > 0.0) || !std::isfinite(length_m)) {
    throw Error(ErrorCode::InvalidInput, "edge length must be positive");
  }
  if (!(max_speed_kmh > 0.0) || !std::isfinite(max_speed_kmh)) {
    throw Error(ErrorCode::InvalidInput, "edge max speed must be positive");
  }
  const double speed_ms = max_speed_kmh / 3.6;
  const double seconds = length_m / speed_ms;
  return road_class == RoadClass::Motorway ? seconds : seconds * kUrbanDelayFactor;
}

VertexId RoadNetworkBuilder::add_vertex(const GeoPoint& p) {
  if (!p.valid()) {
    throw Error(ErrorCode::InvalidInput, "vertex coordinate out of range");
  }
  if (rect_ && !rect_->contains(p)) {
    throw Error(ErrorCode::InvalidInput, "vertex lies outside the network rectangle");
  }
  vertices_.push_back(p);
  return static_cast<VertexId>(vertices_.size() - 1);
}

void RoadNetworkBuilder::add_edge(VertexId from, VertexId to, double length_m,
                                  double max_speed_kmh, RoadClass road_class) {
  if (from >= vertices_.size() || to >= vertices_.size()) {
    throw Error(ErrorCode::UnknownVertex, "edge endpoint is not a known vertex");
  }
  if (from == to) {
    throw Error(ErrorCode::InvalidInput, "self-loop edges are not allowed");
  }
  Edge e;
  e.from = from;
  e.to = to;
  e.length = length_m;
  e.max_speed = max_speed_kmh;
  e.road_class = road_class;
  e.travel_time = edge_travel_time(length_m, max_speed_kmh, road_class);
  edges_.push_back(e);
}

RoadNetwork RoadNetworkBuilder::build() && {
  RoadNetwork net;
  if (rect_) {
    net.rect_ = *rect_;
  } else if (!vertices_.empty()) {
    BoundingRect r{vertices_.front(), vertices_.front()};
    for (const auto& p : vertices_) {
      r.min_corner.lat = std::min(r.min_corner.lat, p.lat);
      r.min_corner.lon = std::min(r.min_corner.lon, p.lon);
      r.max_corner.lat = std::max(r.max_corner.lat, p.lat);
      r.max_corner.lon = std::max(r.max_corner.lon, p.lon);
    }
    net.rect_ = r;
  }

  std::stable_sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.from, a.to) < std::tie(b.from, b.to);
  });
  for (std::size_t i = 0; i < edges_.size(); ++i) edges_[i].id = static_cast<EdgeId>(i);

  const std::size_t n = vertices_.size();
  net.out_offsets_.assign(n + 1, 0);
  net.in_offsets_.assign(n + 1, 0);
  for (const auto& e : edges_) {
    ++net.out_offsets_[e.from + 1];
    ++net.in_offsets_[e.to + 1];
  }
  std::partial_sum(net.out_offsets_.begin(), net.out_offsets_.end(), net.out_offsets_.begin());
  std::partial_sum(net.in_offsets_.begin(), net.in_offsets_.end(), net.in_offsets_.begin());

  // Edges are visited in id order, so every in-list ends up ascending by id.
  net.in_edge_ids_.resize(edges_.size());
  std::vector<std::size_t> cursor(net.in_offsets_.begin(), net.in_offsets_.end() - 1);
  for (const auto& e : edges_) net.in_edge_ids_[cursor[e.to]++] = e.id;

  net.by_latitude_.resize(n);
  std::iota(net.by_latitude_.begin(), net.by_latitude_.end(), VertexId{0});
  std::stable_sort(net.by_latitude_.begin(), net.by_latitude_.end(),
                   [&](VertexId a, VertexId b) { return vertices_[a].lat < vertices_[b].lat; });

  net.vertices_ = std::move(vertices_);
  net.edges_ = std::move(edges_);
  return net;
}

VertexId snap_to_vertex(const GeoPoint& p, const RoadNetwork& net) {
  if (net.empty()) throw Error(ErrorCode::EmptyNetwork, "cannot snap on an empty network");

  constexpr double kDegToRad = 3.14159265358979323846 / 180.0;
  const auto& order = net.by_latitude_;
  const auto& verts = net.vertices_;

  // Meridian arc length is a lower bound on great-circle distance, so the scan
  // can stop in each direction once the latitude gap alone exceeds the best.
  const auto split = std::partition_point(order.begin(), order.end(), [&](VertexId v) {
    return verts[v].lat < p.lat;
  });
  double best = std::numeric_limits<double>::infinity();
  VertexId best_id = kInvalidVertex;
  auto consider = [&](VertexId v) {
    const double d = haversine_meters(p, verts[v]);
    if (d < best || (d == best && v < best_id)) {
      best = d;
      best_id = v;
    }
  };
  auto beyond = [&](VertexId v) {
    const double lower = kEarthRadiusMeters * std::abs(verts[v].lat - p.lat) * kDegToRad;
    return lower > best * (1.0 + 1e-12) + 1e-9;
  };

  auto up = split;
  auto down = split;
  bool up_open = up != order.end();
  bool down_open = down != order.begin();
  while (up_open || down_open) {
    if (up_open) {
      if (beyond(*up)) {
        up_open = false;
      } else {
        consider(*up);
        ++up;
        up_open = up != order.end();
      }
    }
    if (down_open) {
      const VertexId v = *(down - 1);
      if (beyond(v)) {
        down_open = false;
      } else {
        consider(v);
        --down;
        down_open = down != order.begin();
      }
    }
  }
  return best_id;
}

}  // namespace altroute
