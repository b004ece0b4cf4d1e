#pragma once

#include <limits>
#include <span>
#include <vector>

#include "altroute/road_network.hpp"

namespace altroute {

inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();

enum class Orientation { Forward, Backward };

/// Contiguous edge sequence from source to target. travel_time and length are
/// the in-order sums of the member edges' values.
struct Path {
  VertexId source = kInvalidVertex;
  VertexId target = kInvalidVertex;
  std::vector<Edge> edges;
  double travel_time = 0.0;
  double length = 0.0;

  bool empty() const noexcept { return edges.empty(); }

  /// source, then the head of every edge.
  std::vector<VertexId> vertices() const;

  bool is_simple() const;

  /// Same directed edges in the same order.
  bool same_edges(const Path& other) const noexcept;
};

/// Builds a Path and fills in the cached sums. Throws Error(InvalidInput) if
/// the edges are not contiguous from source to target.
Path make_path(VertexId source, VertexId target, std::vector<Edge> edges);

/// Dijkstra labeling from (Forward) or to (Backward) a root vertex.
///
/// Among equal-cost parents the edge with the smallest (from, to) wins, which
/// for this network's edge numbering is the smallest edge id. Forward trees
/// follow out-edges, Backward trees follow in-edges.
class ShortestPathTree {
 public:
  VertexId root() const noexcept { return root_; }
  Orientation orientation() const noexcept { return orientation_; }
  const RoadNetwork& network() const noexcept { return *net_; }

  bool reachable(VertexId v) const { return dist_.at(v) != kUnreachable; }
  double dist(VertexId v) const { return dist_.at(v); }

  /// Edge connecting v to the neighbour one step closer to the root;
  /// kInvalidEdge for the root and for unreachable vertices.
  EdgeId parent_edge(VertexId v) const { return parent_.at(v); }

  std::span<const double> distances() const noexcept { return dist_; }
  std::span<const EdgeId> parent_edges() const noexcept { return parent_; }

  /// Tree path between the root and v, oriented root->v for Forward trees and
  /// v->root for Backward trees.
  Path path_to(VertexId v) const;

 private:
  friend ShortestPathTree build_tree(const RoadNetwork&, VertexId, Orientation,
                                     std::span<const double>);

  const RoadNetwork* net_ = nullptr;
  VertexId root_ = kInvalidVertex;
  Orientation orientation_ = Orientation::Forward;
  std::vector<double> dist_;
  std::vector<EdgeId> parent_;
};

/// `weights`, when non-empty, replaces edge travel times (indexed by edge id)
/// for the search. Reported paths still carry the network's edges.
ShortestPathTree build_tree(const RoadNetwork& net, VertexId root, Orientation orientation,
                            std::span<const double> weights = {});

/// Minimum travel-time path; Error(NoRoute) when t is unreachable.
Path shortest_path(const RoadNetwork& net, VertexId s, VertexId t,
                   std::span<const double> weights = {});

struct ViaPath {
  Path path;
  bool simple = true;
};

/// sp(s,u) from a Forward tree rooted at s followed by sp(u,t) from a Backward
/// tree rooted at t.
ViaPath path_from_trees(const ShortestPathTree& tf, const ShortestPathTree& tb, VertexId u);

}  // namespace altroute
