#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "altroute/road_network.hpp"
#include "altroute/service/config.hpp"
#include "altroute/service/provider.hpp"
#include "altroute/service/rating_store.hpp"
#include "altroute/study/analytics.hpp"

namespace altroute::service {

inline constexpr const char* kExternalEngine = "external";

struct QueryRequest {
  GeoPoint source;
  GeoPoint target;
  std::optional<std::size_t> k;  // default from config
  std::optional<std::vector<std::string>> engines;
};

struct RouteView {
  double travel_time = 0.0;  // seconds, recomputed from the network
  double length = 0.0;       // meters
  int minutes = 0;
  std::vector<GeoPoint> geometry;
};

struct LabeledGroup {
  std::string label;
  std::string engine;  // server side only; never serialized
  std::vector<RouteView> routes;
};

struct QueryResult {
  std::string query_id;
  double fastest_time = 0.0;
  std::vector<LabeledGroup> groups;  // in label order
  std::vector<std::string> notes;
};

/// Rounds half up: 89 s -> 1, 90 s -> 2.
int display_minutes(double seconds);

/// Pairs labels "A", "B", ... with the engines present. Fixed orders engines as
/// external, plateaus, dissimilarity, penalty (others after, by name);
/// PerQueryShuffle permutes that order with a generator seeded by `seed`.
std::vector<std::pair<std::string, std::string>> assign_labels(std::vector<std::string> engines,
                                                               LabelPolicy policy, std::uint64_t seed);

/// Blinded JSON view: labels, minutes and GeoJSON geometry only.
nlohmann::json to_json(const QueryResult& result);

using Clock = std::function<std::int64_t()>;  // unix seconds

Clock system_clock();

class QueryService {
 public:
  QueryService(const RoadNetwork& net, ServiceConfig cfg, RatingStore& store,
               ProviderAdapter* provider = nullptr, Clock clock = system_clock());

  QueryResult handle_query(const QueryRequest& req);

  /// Scores are keyed by label. Returns the stored, un-blinded record.
  study::RatingRecord record_rating(const std::string& query_id, const std::map<std::string, int>& scores,
                                    bool resident);

  study::AggregateRow stats(study::CohortFilter filter) const;

  const ServiceConfig& config() const noexcept { return cfg_; }
  const RoadNetwork& network() const noexcept { return net_; }

 private:
  std::string next_query_id(std::uint64_t& number);

  const RoadNetwork& net_;
  ServiceConfig cfg_;
  RatingStore& store_;
  ProviderAdapter* provider_;
  Clock clock_;
  std::atomic<std::uint64_t> counter_;
};

}  // namespace altroute::service
