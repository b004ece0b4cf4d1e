#include "altroute/penalty.hpp"

#include <cmath>
#include <vector>

#include "altroute/error.hpp"
#include "altroute/shortest_path.hpp"

namespace altroute {

AlternativeSet penalty_routes(const RoadNetwork& net, VertexId s, VertexId t,
                              const PenaltyConfig& cfg) {
  if (cfg.k < 1) throw Error(ErrorCode::InvalidInput, "k must be at least 1");
  if (!(cfg.penalty_factor > 1.0)) throw Error(ErrorCode::InvalidInput, "penalty factor must exceed 1");
  const std::size_t cap = cfg.effective_max_iterations();
  if (cap < cfg.k) throw Error(ErrorCode::InvalidInput, "max_iterations must be at least k");

  AlternativeSet out;
  out.engine = kPenaltyEngine;
  out.routes.push_back(shortest_path(net, s, t));
  out.diagnostics.iterations = 1;

  std::vector<double> weights;
  std::vector<unsigned> times_penalized;
  auto penalize = [&](const Path& p) {
    for (const Edge& e : p.edges) {
      const unsigned m = ++times_penalized[e.id];
      weights[e.id] = e.travel_time * std::pow(cfg.penalty_factor, static_cast<double>(m));
    }
  };

  if (cfg.k > 1) {
    weights.resize(net.edge_count());
    for (const Edge& e : net.edges()) weights[e.id] = e.travel_time;
    times_penalized.assign(net.edge_count(), 0);
    penalize(out.routes.front());

    while (out.routes.size() < cfg.k && out.diagnostics.iterations < cap) {
      Path found = shortest_path(net, s, t, weights);
      ++out.diagnostics.iterations;
      bool duplicate = false;
      for (const Path& kept : out.routes) duplicate = duplicate || kept.same_edges(found);
      penalize(found);
      if (duplicate) {
        ++out.diagnostics.candidates_rejected;
      } else {
        // make_path sums the original edge travel times, not the working weights.
        out.routes.push_back(std::move(found));
      }
    }
    for (EdgeId e = 0; e < times_penalized.size(); ++e) {
      if (times_penalized[e] > 0) out.diagnostics.penalty_counts.emplace_back(e, times_penalized[e]);
    }
  }
  out.diagnostics.partial = out.routes.size() < cfg.k;
  return out;
}

}  // namespace altroute
