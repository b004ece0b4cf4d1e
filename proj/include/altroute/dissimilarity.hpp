#pragma once

#include <cstddef>
#include <vector>

#include "altroute/alternative_set.hpp"
#include "altroute/shortest_path.hpp"

namespace altroute {

inline constexpr const char* kDissimilarityEngine = "dissimilarity";

struct DissimilarityConfig {
  std::size_t k = 3;
  double theta = 0.5;
  double stretch_bound = 1.4;
};

/// Via vertices u with tf.dist(u) + tb.dist(u) <= stretch_bound * d(s,t),
/// ascending by that via length, ties by vertex id.
std::vector<VertexId> via_candidates(const ShortestPathTree& tf, const ShortestPathTree& tb,
                                     double stretch_bound);

/// Starts from the fastest path and walks the via candidates in order. A via
/// path joins the result only if it is simple, new, and dis(path, kept) > theta
/// (length-weighted Jaccard, directed edges). Stops at k routes.
AlternativeSet dissimilar_routes(const RoadNetwork& net, VertexId s, VertexId t,
                                 const DissimilarityConfig& cfg = {});

}  // namespace altroute
