#pragma once

#include <string>
#include <utility>
#include <vector>

#include "altroute/shortest_path.hpp"

namespace altroute {

struct EngineDiagnostics {
  std::size_t iterations = 0;           // searches run (penalty) or candidates examined
  std::size_t candidates_rejected = 0;  // duplicates, non-simple, over-stretch, too similar
  bool partial = false;                 // fewer than k routes found
  // Penalty engine only: (edge id, times penalized), ascending by edge id.
  std::vector<std::pair<EdgeId, unsigned>> penalty_counts;
};

/// Routes produced by one engine for one query. routes[0] is the fastest
/// path; travel times are always on the network's original weights.
struct AlternativeSet {
  std::string engine;
  std::vector<Path> routes;
  EngineDiagnostics diagnostics;
};

}  // namespace altroute
