#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "altroute/engines.hpp"
#include "altroute/study/analytics.hpp"

namespace altroute::service {

enum class LabelPolicy { Fixed, PerQueryShuffle };

std::string_view to_string(LabelPolicy p);
std::optional<LabelPolicy> parse_label_policy(std::string_view s);

struct ServiceConfig {
  std::string network_path;
  std::string city = "default";
  EngineParams engine_params;
  std::vector<std::string> engines{"plateaus", "dissimilarity", "penalty"};
  std::size_t default_k = 3;
  LabelPolicy label_policy = LabelPolicy::Fixed;
  std::uint64_t label_seed = 0;
  std::string rating_store_path = "ratings.jsonl";
  std::size_t compaction_threshold = 1000;  // appended records between compactions
  std::int64_t query_ttl_seconds = 24 * 3600;
  std::string provider_fixture;  // empty: no external provider
  std::string listen_host = "127.0.0.1";
  int listen_port = 8080;
  std::string static_dir;  // empty: no static mount
  study::LengthBoundaries boundaries;
};

/// Environment lookup; returns nullopt for unset variables.
using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

EnvLookup process_environment();

/// Builds a config from defaults, then the JSON file (if `path` is non-empty),
/// then environment overrides. Unknown keys in the file are rejected.
///
/// File keys: network, city, engines, k, penalty_factor, penalty_max_iterations,
/// stretch_bound, theta, label_policy ("fixed" | "shuffle"), label_seed,
/// rating_store, compaction_threshold, query_ttl_hours, provider_fixture,
/// listen ("host:port"), static_dir, length_boundaries ([m1, m2, m3]).
///
/// Environment: ALTROUTE_NETWORK, ALTROUTE_CITY, ALTROUTE_ENGINES (comma list),
/// ALTROUTE_K, ALTROUTE_PENALTY_FACTOR, ALTROUTE_STRETCH_BOUND, ALTROUTE_THETA,
/// ALTROUTE_LABEL_POLICY, ALTROUTE_LABEL_SEED, ALTROUTE_RATING_STORE,
/// ALTROUTE_QUERY_TTL_HOURS, ALTROUTE_PROVIDER_FIXTURE, ALTROUTE_LISTEN,
/// ALTROUTE_STATIC_DIR.
ServiceConfig load_config(const std::string& path, const EnvLookup& env = process_environment());

void validate(const ServiceConfig& cfg);

}  // namespace altroute::service
