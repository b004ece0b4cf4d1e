#pragma once

#include <array>
#include <string>
#include <string_view>

#include "altroute/alternative_set.hpp"
#include "altroute/dissimilarity.hpp"
#include "altroute/penalty.hpp"
#include "altroute/plateaus.hpp"

namespace altroute {

inline constexpr std::array<std::string_view, 3> kEngineIds = {kPenaltyEngine, kPlateausEngine,
                                                               kDissimilarityEngine};

/// Parameters shared by all engines; k is supplied per query.
struct EngineParams {
  double penalty_factor = 1.4;
  std::size_t penalty_max_iterations = 0;  // 0: 4k
  double stretch_bound = 1.4;
  double theta = 0.5;
};

bool is_engine_id(std::string_view id);

/// Dispatches on the engine identifier; Error(UnknownEngine) otherwise.
AlternativeSet run_engine(std::string_view engine, const RoadNetwork& net, VertexId s, VertexId t,
                          std::size_t k, const EngineParams& params = {});

}  // namespace altroute
