#include "altroute/engines.hpp"

#include <algorithm>

#include "altroute/error.hpp"

namespace altroute {

bool is_engine_id(std::string_view id) {
  return std::find(kEngineIds.begin(), kEngineIds.end(), id) != kEngineIds.end();
}

AlternativeSet run_engine(std::string_view engine, const RoadNetwork& net, VertexId s, VertexId t,
                          std::size_t k, const EngineParams& params) {
  if (!is_engine_id(engine)) {
    throw Error(ErrorCode::UnknownEngine, "unknown engine '" + std::string(engine) + "'");
  }
  if (s == t) throw Error(ErrorCode::SameEndpoints, "source and target are the same vertex");
  if (engine == kPenaltyEngine) {
    return penalty_routes(net, s, t,
                          PenaltyConfig{.k = k,
                                        .penalty_factor = params.penalty_factor,
                                        .max_iterations = params.penalty_max_iterations});
  }
  if (engine == kPlateausEngine) {
    return plateau_routes(net, s, t, PlateauConfig{.k = k, .stretch_bound = params.stretch_bound});
  }
  if (engine == kDissimilarityEngine) {
    return dissimilar_routes(
        net, s, t,
        DissimilarityConfig{.k = k, .theta = params.theta, .stretch_bound = params.stretch_bound});
  }
  throw Error(ErrorCode::UnknownEngine, "unknown engine '" + std::string(engine) + "'");
}

}  // namespace altroute
