#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "altroute/road_network.hpp"
#include "altroute/shortest_path.hpp"

namespace altroute {

/// How edges are matched when measuring overlap. Directed treats an edge and
/// its reverse twin as different roads; Undirected merges them by endpoint
/// pair.
enum class EdgeIdentity { Directed, Undirected };

/// Total length (m) of the edges present in both paths, each shared edge
/// counted once. Summed in x's edge order.
double overlap_length(const Path& x, const Path& y, EdgeIdentity identity = EdgeIdentity::Directed);

/// overlap / (|x| + |y| - overlap) on physical length; 1 when both are empty.
double jaccard(const Path& x, const Path& y, EdgeIdentity identity = EdgeIdentity::Directed);

/// 1 - max_{q in set} jaccard(p, q); 1 for an empty set.
double dis(const Path& p, std::span<const Path> set, EdgeIdentity identity = EdgeIdentity::Directed);

struct SimilarityReport {
  double sim = 0.0;
  std::pair<std::size_t, std::size_t> argmax_pair{0, 1};
  std::vector<std::vector<double>> pairwise;
};

/// Maximum pairwise jaccard over distinct index pairs (i < j). The first pair
/// in row-major order attaining the maximum is reported.
/// Throws Error(UndefinedSimilarity) for fewer than two routes.
SimilarityReport set_similarity(std::span<const Path> routes,
                                EdgeIdentity identity = EdgeIdentity::Directed);

/// Incremental overlap bookkeeping for a growing set of kept routes over one
/// network. Produces exactly the values jaccard(candidate, kept[i]) would,
/// in O(|candidate|) per query regardless of how many routes are kept.
/// Supports up to 64 kept routes and directed edge identity.
class OverlapIndex {
 public:
  explicit OverlapIndex(std::size_t edge_count) : member_(edge_count, 0) {}

  void add(const Path& route);
  std::size_t size() const noexcept { return lengths_.size(); }

  /// jaccard(candidate, kept[i]) for every kept route i.
  std::vector<double> jaccard_all(const Path& candidate) const;

  /// dis(candidate, kept).
  double dis(const Path& candidate) const;

 private:
  std::vector<std::uint64_t> member_;
  std::vector<double> lengths_;
};

struct RouteViolation {
  std::size_t edge_index = 0;
  std::string message;
};

/// Checks contiguity, edge existence in net, simplicity and cached-sum
/// consistency (1e-6 relative). Empty result means the route is valid.
std::vector<RouteViolation> validate_route(const Path& p, const RoadNetwork& net);

}  // namespace altroute
