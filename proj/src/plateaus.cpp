#include "altroute/plateaus.hpp"

#include <algorithm>

#include "altroute/error.hpp"

namespace altroute {

std::vector<Plateau> find_plateaus(const ShortestPathTree& tf, const ShortestPathTree& tb,
                                   JoinStats* stats) {
  if (tf.orientation() != Orientation::Forward || tb.orientation() != Orientation::Backward ||
      &tf.network() != &tb.network()) {
    throw Error(ErrorCode::MismatchedTrees, "expected a Forward and a Backward tree on one network");
  }
  const RoadNetwork& net = tf.network();
  const std::size_t n = net.vertex_count();
  std::uint64_t ops = 0;

  // An edge x->y is a plateau edge when it is y's parent in the forward tree
  // and x's parent in the backward tree. Each vertex therefore has at most one
  // plateau edge out and one in, and the plateau edges form disjoint chains.
  std::vector<EdgeId> plateau_out(n, kInvalidEdge);
  std::vector<bool> has_plateau_in(n, false);
  for (VertexId x = 0; x < n; ++x) {
    ++ops;
    const EdgeId e = tb.parent_edge(x);
    if (e == kInvalidEdge) continue;
    const VertexId y = net.edge(e).to;
    if (tf.parent_edge(y) == e) {
      plateau_out[x] = e;
      has_plateau_in[y] = true;
    }
  }

  std::vector<Plateau> out;
  for (VertexId x = 0; x < n; ++x) {
    ++ops;
    if (plateau_out[x] == kInvalidEdge || has_plateau_in[x]) continue;
    Plateau pl;
    pl.vertices.push_back(x);
    VertexId at = x;
    while (plateau_out[at] != kInvalidEdge) {
      ++ops;
      const Edge& e = net.edge(plateau_out[at]);
      pl.edges.push_back(e);
      pl.plateau_length += e.travel_time;
      at = e.to;
      pl.vertices.push_back(at);
    }
    out.push_back(std::move(pl));
  }
  std::sort(out.begin(), out.end(), [](const Plateau& a, const Plateau& b) {
    if (a.plateau_length != b.plateau_length) return a.plateau_length > b.plateau_length;
    return a.first() < b.first();
  });
  if (stats) stats->operations += ops;
  return out;
}

AlternativeSet plateau_routes(const RoadNetwork& net, VertexId s, VertexId t,
                              const PlateauConfig& cfg) {
  if (cfg.k < 1) throw Error(ErrorCode::InvalidInput, "k must be at least 1");
  if (!(cfg.stretch_bound >= 1.0)) throw Error(ErrorCode::InvalidInput, "stretch bound must be >= 1");
  if (!net.has_vertex(t)) throw Error(ErrorCode::UnknownVertex, "target vertex not in network");

  const ShortestPathTree tf = build_tree(net, s, Orientation::Forward);
  if (!tf.reachable(t)) {
    throw Error(ErrorCode::NoRoute, "no route from " + std::to_string(s) + " to " + std::to_string(t));
  }
  AlternativeSet out;
  out.engine = kPlateausEngine;
  out.routes.push_back(tf.path_to(t));
  if (cfg.k == 1) return out;

  const ShortestPathTree tb = build_tree(net, t, Orientation::Backward);
  const double fastest = out.routes.front().travel_time;
  const double limit = cfg.stretch_bound * fastest;

  for (const Plateau& pl : find_plateaus(tf, tb)) {
    if (out.routes.size() >= cfg.k) break;
    ++out.diagnostics.iterations;
    const VertexId u = pl.first();
    // Cheap pre-check on tree distances before materializing the path.
    if (tf.dist(u) + tb.dist(u) > limit * (1.0 + 1e-9)) {
      ++out.diagnostics.candidates_rejected;
      continue;
    }
    ViaPath cand = path_from_trees(tf, tb, u);
    bool reject = !cand.simple || cand.path.travel_time > limit;
    for (const Path& kept : out.routes) reject = reject || kept.same_edges(cand.path);
    if (reject) {
      ++out.diagnostics.candidates_rejected;
      continue;
    }
    out.routes.push_back(std::move(cand.path));
  }
  out.diagnostics.partial = out.routes.size() < cfg.k;
  return out;
}

}  // namespace altroute
