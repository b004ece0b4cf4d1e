#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "altroute/geo.hpp"

namespace altroute {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

inline constexpr VertexId kInvalidVertex = std::numeric_limits<VertexId>::max();
inline constexpr EdgeId kInvalidEdge = std::numeric_limits<EdgeId>::max();

enum class RoadClass : std::uint8_t { Motorway = 0, Other = 1 };

std::string_view to_string(RoadClass rc);

/// Multiplier applied to the free-flow travel time of non-motorway segments
/// to account for intersections, lights and turns.
inline constexpr double kUrbanDelayFactor = 1.3;

/// Free-flow travel time in seconds: length / (max_speed in m/s), times
/// kUrbanDelayFactor unless the segment is a motorway.
/// Throws Error(InvalidInput) for non-positive length or speed.
double edge_travel_time(double length_m, double max_speed_kmh, RoadClass road_class);

struct Edge {
  EdgeId id = kInvalidEdge;
  VertexId from = kInvalidVertex;
  VertexId to = kInvalidVertex;
  double length = 0.0;       // meters
  double max_speed = 0.0;    // km/h
  RoadClass road_class = RoadClass::Other;
  double travel_time = 0.0;  // seconds

  friend bool operator==(const Edge&, const Edge&) = default;
};

class RoadNetworkBuilder;
class RoadNetwork;

VertexId snap_to_vertex(const GeoPoint& p, const RoadNetwork& net);

/// Immutable directed road graph. Edges are stored sorted by (from, to) with
/// insertion order preserved among parallel edges, so comparing edge ids is the
/// same as comparing edges lexicographically by (from, to).
class RoadNetwork {
 public:
  RoadNetwork() = default;

  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return vertices_.empty(); }
  bool has_vertex(VertexId v) const noexcept { return v < vertices_.size(); }

  const GeoPoint& vertex(VertexId v) const { return vertices_.at(v); }
  std::span<const GeoPoint> vertices() const noexcept { return vertices_; }

  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  std::span<const Edge> edges() const noexcept { return edges_; }

  /// Edges leaving v, ascending by id.
  std::span<const Edge> out_edges(VertexId v) const {
    return {edges_.data() + out_offsets_.at(v), edges_.data() + out_offsets_.at(v + 1)};
  }

  /// Ids of the edges entering v, ascending by id.
  std::span<const EdgeId> in_edges(VertexId v) const {
    return {in_edge_ids_.data() + in_offsets_.at(v),
            in_edge_ids_.data() + in_offsets_.at(v + 1)};
  }

  const BoundingRect& rect() const noexcept { return rect_; }

  friend bool operator==(const RoadNetwork& a, const RoadNetwork& b) {
    return a.rect_ == b.rect_ && a.vertices_ == b.vertices_ && a.edges_ == b.edges_;
  }

 private:
  friend class RoadNetworkBuilder;
  friend VertexId snap_to_vertex(const GeoPoint& p, const RoadNetwork& net);

  BoundingRect rect_;
  std::vector<GeoPoint> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> out_offsets_;
  std::vector<EdgeId> in_edge_ids_;
  std::vector<std::size_t> in_offsets_;
  // vertex ids ordered by latitude, used for snapping
  std::vector<VertexId> by_latitude_;
};

/// Collects vertices and edges, then freezes them into a RoadNetwork.
class RoadNetworkBuilder {
 public:
  explicit RoadNetworkBuilder(BoundingRect rect) : rect_(rect) {}
  RoadNetworkBuilder() = default;

  VertexId add_vertex(const GeoPoint& p);

  /// Travel time is derived with edge_travel_time.
  void add_edge(VertexId from, VertexId to, double length_m, double max_speed_kmh,
                RoadClass road_class);

  std::size_t vertex_count() const noexcept { return vertices_.size(); }

  /// When no rect was supplied the bounding box of the vertices is used.
  RoadNetwork build() &&;

 private:
  std::optional<BoundingRect> rect_;
  std::vector<GeoPoint> vertices_;
  std::vector<Edge> edges_;
};

/// Vertex nearest to p by great-circle distance; ties go to the smaller id.
VertexId snap_to_vertex(const GeoPoint& p, const RoadNetwork& net);

}  // namespace altroute
