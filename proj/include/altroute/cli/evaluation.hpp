#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "altroute/engines.hpp"
#include "altroute/study/analytics.hpp"

namespace altroute::cli {

struct EvalQuery {
  GeoPoint source;
  GeoPoint target;
};

/// One `lat,lon lat,lon` pair per line; blank lines and lines starting with
/// '#' are skipped. Malformed lines throw a parse error naming the line.
std::vector<EvalQuery> parse_query_file(std::istream& in);

/// Samples `count` vertex pairs, spreading them evenly over the length
/// categories the network can produce. Deterministic for a given seed.
std::vector<EvalQuery> sample_queries(const RoadNetwork& net, std::size_t count, std::uint64_t seed,
                                      const study::LengthBoundaries& boundaries = {});

struct SimStats {
  std::size_t n = 0;
  double avg = 0.0;
  double sd = 0.0;  // sample standard deviation; 0 when n < 2
  double max = 0.0;
};

/// Row keys: "all", "small", "medium", "long".
inline constexpr std::array<const char*, 4> kEvalRows = {"all", "small", "medium", "long"};

struct EngineEval {
  std::string engine;
  std::map<std::string, SimStats> rows;
  std::size_t excluded = 0;  // queries answered with fewer than k routes
  std::size_t failed = 0;    // queries the engine threw on
};

struct EvalReport {
  std::size_t k = 3;
  std::size_t queries = 0;
  std::size_t skipped = 0;  // unroutable or degenerate queries
  std::map<std::string, std::size_t> queries_per_row;
  std::vector<EngineEval> engines;
};

/// Runs every engine on every query and aggregates Sim(T) over the queries
/// for which the engine returned exactly k routes. Work is spread over
/// `jobs` threads; results do not depend on the thread count.
EvalReport evaluate(const RoadNetwork& net, const std::vector<EvalQuery>& queries, std::size_t k,
                    const EngineParams& params = {}, const study::LengthBoundaries& boundaries = {},
                    unsigned jobs = 1);

std::string format_table(const EvalReport& report);
nlohmann::json to_json(const EvalReport& report);

}  // namespace altroute::cli
