#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "altroute/alternative_set.hpp"
#include "altroute/shortest_path.hpp"

namespace altroute {

inline constexpr const char* kPlateausEngine = "plateaus";

/// Maximal chain of edges that are parent edges in both the forward tree
/// rooted at s and the backward tree rooted at t. vertices runs from the end
/// nearer the source to the end nearer the target.
struct Plateau {
  std::vector<VertexId> vertices;
  std::vector<Edge> edges;
  double plateau_length = 0.0;  // seconds

  VertexId first() const { return vertices.front(); }
  VertexId last() const { return vertices.back(); }
};

struct PlateauConfig {
  std::size_t k = 3;
  double stretch_bound = 1.4;
};

/// Work counter for the tree join, one unit per vertex or edge inspected.
struct JoinStats {
  std::uint64_t operations = 0;
};

/// All maximal plateaus, longest first (ties: smaller first vertex id).
/// Runs in time linear in the number of vertices.
std::vector<Plateau> find_plateaus(const ShortestPathTree& tf, const ShortestPathTree& tb,
                                   JoinStats* stats = nullptr);

/// routes[0] is the fastest path. Then, for each plateau pl(u,v) in order, the
/// candidate sp(s,u) + pl + sp(v,t) is kept unless it repeats a vertex, repeats
/// an already kept route, or exceeds stretch_bound times the fastest time.
AlternativeSet plateau_routes(const RoadNetwork& net, VertexId s, VertexId t,
                              const PlateauConfig& cfg = {});

}  // namespace altroute
