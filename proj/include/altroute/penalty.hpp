#pragma once

#include <cstddef>

#include "altroute/alternative_set.hpp"
#include "altroute/road_network.hpp"

namespace altroute {

inline constexpr const char* kPenaltyEngine = "penalty";

struct PenaltyConfig {
  std::size_t k = 3;
  double penalty_factor = 1.4;
  /// 0 selects the default of 4k.
  std::size_t max_iterations = 0;

  std::size_t effective_max_iterations() const noexcept {
    return max_iterations == 0 ? 4 * k : max_iterations;
  }
};

/// Iterated shortest paths. After every search each edge of the path just
/// found has its working weight multiplied by penalty_factor; penalties
/// accumulate, so an edge found m times weighs original * factor^m. Paths
/// repeating an already kept edge sequence are rejected but still count as an
/// iteration and are still penalized. Stops at k routes or the iteration cap.
AlternativeSet penalty_routes(const RoadNetwork& net, VertexId s, VertexId t,
                              const PenaltyConfig& cfg = {});

}  // namespace altroute
