#include "altroute/dissimilarity.hpp"

#include <algorithm>
#include <utility>

#include "altroute/error.hpp"
#include "altroute/route_metrics.hpp"

namespace altroute {

std::vector<VertexId> via_candidates(const ShortestPathTree& tf, const ShortestPathTree& tb,
                                     double stretch_bound) {
  if (tf.orientation() != Orientation::Forward || tb.orientation() != Orientation::Backward ||
      &tf.network() != &tb.network()) {
    throw Error(ErrorCode::MismatchedTrees, "expected a Forward and a Backward tree on one network");
  }
  const VertexId t = tb.root();
  if (!tf.reachable(t)) return {};
  const double budget = stretch_bound * tf.dist(t);

  std::vector<std::pair<double, VertexId>> keyed;
  const auto n = static_cast<VertexId>(tf.network().vertex_count());
  for (VertexId u = 0; u < n; ++u) {
    if (!tf.reachable(u) || !tb.reachable(u)) continue;
    const double via = tf.dist(u) + tb.dist(u);
    if (via <= budget) keyed.emplace_back(via, u);
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<VertexId> out;
  out.reserve(keyed.size());
  for (const auto& [via, u] : keyed) out.push_back(u);
  return out;
}

namespace {

// Marks every vertex whose via path is identical to `path`, the via path of
// the vertex at position `via_index`: walking outwards from it, a vertex keeps
// the same via path as long as its own tree parent follows `path`.
void mark_same_via_path(const Path& path, std::size_t via_index, const ShortestPathTree& tf,
                        const ShortestPathTree& tb, std::vector<bool>& covered) {
  const auto& edges = path.edges;
  covered[via_index == 0 ? path.source : edges[via_index - 1].to] = true;
  for (std::size_t j = via_index; j-- > 0;) {
    const Edge& e = edges[j];
    if (tb.parent_edge(e.from) != e.id) break;
    covered[e.from] = true;
  }
  for (std::size_t j = via_index; j < edges.size(); ++j) {
    const Edge& e = edges[j];
    if (tf.parent_edge(e.to) != e.id) break;
    covered[e.to] = true;
  }
}

}  // namespace

AlternativeSet dissimilar_routes(const RoadNetwork& net, VertexId s, VertexId t,
                                 const DissimilarityConfig& cfg) {
  if (cfg.k < 1) throw Error(ErrorCode::InvalidInput, "k must be at least 1");
  if (!(cfg.theta >= 0.0 && cfg.theta <= 1.0)) throw Error(ErrorCode::InvalidInput, "theta must be in [0,1]");
  if (!(cfg.stretch_bound >= 1.0)) throw Error(ErrorCode::InvalidInput, "stretch bound must be >= 1");
  if (!net.has_vertex(t)) throw Error(ErrorCode::UnknownVertex, "target vertex not in network");

  const ShortestPathTree tf = build_tree(net, s, Orientation::Forward);
  if (!tf.reachable(t)) {
    throw Error(ErrorCode::NoRoute, "no route from " + std::to_string(s) + " to " + std::to_string(t));
  }
  AlternativeSet out;
  out.engine = kDissimilarityEngine;
  out.routes.push_back(tf.path_to(t));
  if (cfg.k == 1) return out;

  const ShortestPathTree tb = build_tree(net, t, Orientation::Backward);
  OverlapIndex kept(net.edge_count());
  kept.add(out.routes.front());

  // The fastest path is the via path of t itself.
  std::vector<bool> covered(net.vertex_count(), false);
  mark_same_via_path(out.routes.front(), out.routes.front().edges.size(), tf, tb, covered);

  std::vector<std::uint32_t> seen(net.vertex_count(), 0);
  std::uint32_t stamp = 0;

  for (VertexId u : via_candidates(tf, tb, cfg.stretch_bound)) {
    if (out.routes.size() >= cfg.k) break;
    if (covered[u]) continue;  // via path already evaluated
    ++out.diagnostics.iterations;

    Path head = tf.path_to(u);
    const std::size_t via_index = head.edges.size();
    Path tail = tb.path_to(u);
    head.edges.insert(head.edges.end(), tail.edges.begin(), tail.edges.end());
    Path cand = make_path(s, t, std::move(head.edges));
    mark_same_via_path(cand, via_index, tf, tb, covered);

    ++stamp;
    bool simple = true;
    seen[s] = stamp;
    for (const Edge& e : cand.edges) {
      if (seen[e.to] == stamp) {
        simple = false;
        break;
      }
      seen[e.to] = stamp;
    }
    bool reject = !simple;
    for (const Path& r : out.routes) reject = reject || r.same_edges(cand);
    if (reject || !(kept.dis(cand) > cfg.theta)) {
      ++out.diagnostics.candidates_rejected;
      continue;
    }
    kept.add(cand);
    out.routes.push_back(std::move(cand));
  }
  out.diagnostics.partial = out.routes.size() < cfg.k;
  return out;
}

}  // namespace altroute
