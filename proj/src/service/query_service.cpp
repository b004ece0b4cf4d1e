#include "altroute/service/query_service.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>

#include "altroute/engines.hpp"
#include "altroute/error.hpp"

namespace altroute::service {

int display_minutes(double seconds) { return static_cast<int>(std::floor(seconds / 60.0 + 0.5)); }

namespace {

int engine_rank(const std::string& engine) {
  static const std::vector<std::string> kOrder = {kExternalEngine, kPlateausEngine, kDissimilarityEngine,
                                                  kPenaltyEngine};
  auto it = std::find(kOrder.begin(), kOrder.end(), engine);
  return static_cast<int>(it - kOrder.begin());
}

std::string label_name(std::size_t i) { return std::string(1, static_cast<char>('A' + i)); }

RouteView view_of(const Path& p, const RoadNetwork& net) {
  RouteView v;
  v.travel_time = p.travel_time;
  v.length = p.length;
  v.minutes = display_minutes(p.travel_time);
  for (VertexId id : p.vertices()) v.geometry.push_back(net.vertex(id));
  return v;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> assign_labels(std::vector<std::string> engines,
                                                               LabelPolicy policy, std::uint64_t seed) {
  std::sort(engines.begin(), engines.end(), [](const std::string& a, const std::string& b) {
    const int ra = engine_rank(a);
    const int rb = engine_rank(b);
    return ra != rb ? ra < rb : a < b;
  });
  engines.erase(std::unique(engines.begin(), engines.end()), engines.end());
  if (engines.size() > 26) throw Error(ErrorCode::InvalidInput, "at most 26 labelled groups");
  if (policy == LabelPolicy::PerQueryShuffle) {
    // Fisher-Yates with explicit draws so the permutation is fixed by the seed
    // on every standard library.
    std::mt19937_64 rng(seed);
    for (std::size_t i = engines.size(); i > 1; --i) {
      const std::size_t j = rng() % i;
      std::swap(engines[i - 1], engines[j]);
    }
  }
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t i = 0; i < engines.size(); ++i) out.emplace_back(label_name(i), engines[i]);
  return out;
}

nlohmann::json to_json(const QueryResult& result) {
  using nlohmann::json;
  json groups = json::array();
  for (const auto& g : result.groups) {
    json routes = json::array();
    for (const auto& r : g.routes) {
      json coords = json::array();
      for (const GeoPoint& p : r.geometry) coords.push_back(json::array({p.lon, p.lat}));
      routes.push_back({{"travel_time", r.travel_time},
                        {"minutes", r.minutes},
                        {"length_m", r.length},
                        {"geometry", {{"type", "LineString"}, {"coordinates", coords}}}});
    }
    groups.push_back({{"label", g.label}, {"routes", routes}});
  }
  return {{"query_id", result.query_id},
          {"fastest_time", result.fastest_time},
          {"fastest_minutes", display_minutes(result.fastest_time)},
          {"groups", groups},
          {"notes", result.notes}};
}

Clock system_clock() {
  return [] {
    return std::chrono::duration_cast<std::chrono::seconds>(std::chrono::system_clock::now().time_since_epoch())
        .count();
  };
}

QueryService::QueryService(const RoadNetwork& net, ServiceConfig cfg, RatingStore& store,
                           ProviderAdapter* provider, Clock clock)
    : net_(net),
      cfg_(std::move(cfg)),
      store_(store),
      provider_(provider),
      clock_(std::move(clock)),
      counter_(store.max_query_number()) {
  validate(cfg_);
  if (net_.empty()) throw Error(ErrorCode::EmptyNetwork, "service needs a loaded network");
}

std::string QueryService::next_query_id(std::uint64_t& number) {
  number = ++counter_;
  char buf[32];
  std::snprintf(buf, sizeof buf, "q%06llu", static_cast<unsigned long long>(number));
  return buf;
}

QueryResult QueryService::handle_query(const QueryRequest& req) {
  if (!req.source.valid() || !req.target.valid()) throw Error(ErrorCode::InvalidInput, "invalid coordinate");
  const std::size_t k = req.k.value_or(cfg_.default_k);
  if (k < 1 || k > 5) throw Error(ErrorCode::InvalidInput, "k must be in 1..5");
  for (const GeoPoint& p : {req.source, req.target}) {
    if (!net_.rect().contains(p)) throw Error(ErrorCode::OutOfArea, "point outside the served area");
  }

  std::vector<std::string> engines;
  if (req.engines) {
    for (const auto& e : *req.engines) {
      const bool configured = std::find(cfg_.engines.begin(), cfg_.engines.end(), e) != cfg_.engines.end();
      if (!configured && !(e == kExternalEngine && provider_)) {
        throw Error(ErrorCode::UnknownEngine, "approach '" + e + "' is not enabled");
      }
      engines.push_back(e);
    }
    if (engines.empty()) throw Error(ErrorCode::InvalidInput, "no approaches requested");
  } else {
    engines = cfg_.engines;
    if (provider_ && provider_->available()) engines.push_back(kExternalEngine);
  }

  const VertexId s = snap_to_vertex(req.source, net_);
  const VertexId t = snap_to_vertex(req.target, net_);
  if (s == t) throw Error(ErrorCode::SameEndpoints, "source and target snap to the same location");
  const Path fastest = shortest_path(net_, s, t);  // throws NoRoute

  std::map<std::string, std::vector<Path>> routes;
  std::size_t failed = 0;
  for (const auto& e : engines) {
    try {
      if (e == kExternalEngine) {
        if (!provider_ || !provider_->available()) throw Error(ErrorCode::NoRoute, "provider unavailable");
        std::vector<Path> paths;
        for (const Polyline& line : provider_->fetch(req.source, req.target, k)) {
          paths.push_back(polyline_to_path(net_, line));
        }
        if (paths.empty()) throw Error(ErrorCode::NoRoute, "provider returned no routes");
        routes[e] = std::move(paths);
      } else {
        routes[e] = run_engine(e, net_, s, t, k, cfg_.engine_params).routes;
      }
    } catch (const std::exception&) {
      ++failed;
    }
  }

  QueryResult result;
  std::uint64_t number = 0;
  result.query_id = next_query_id(number);
  result.fastest_time = fastest.travel_time;
  if (failed > 0) {
    result.notes.push_back(std::to_string(failed) + (failed == 1 ? " approach" : " approaches") +
                           " could not answer this query and " + (failed == 1 ? "was" : "were") + " omitted");
  }
  std::vector<std::string> present;
  for (const auto& [e, paths] : routes) present.push_back(e);
  const std::uint64_t seed = cfg_.label_seed ^ (0x9e3779b97f4a7c15ULL * number);
  const auto labels = assign_labels(present, cfg_.label_policy, seed);

  StoredQuery stored{result.query_id, cfg_.city, req.source, req.target, result.fastest_time, labels, clock_()};
  for (const auto& [label, engine] : labels) {
    LabeledGroup g{label, engine, {}};
    for (const Path& p : routes.at(engine)) g.routes.push_back(view_of(p, net_));
    result.groups.push_back(std::move(g));
  }
  store_.put_query(stored);
  return result;
}

study::RatingRecord QueryService::record_rating(const std::string& query_id,
                                                const std::map<std::string, int>& scores, bool resident) {
  const auto q = store_.find_query(query_id);
  if (!q) throw Error(ErrorCode::UnknownQuery, "unknown query id '" + query_id + "'");
  const std::int64_t now = clock_();
  if (now - q->created_at > cfg_.query_ttl_seconds) {
    throw Error(ErrorCode::UnknownQuery, "query '" + query_id + "' has expired");
  }

  study::RatingRecord r;
  r.response_id = q->id;
  r.city = q->city;
  r.source = q->source;
  r.target = q->target;
  r.fastest_time = q->fastest_time;
  r.resident = resident;
  r.timestamp = now;
  std::set<std::string> known;
  for (const auto& [label, engine] : q->labels) {
    known.insert(label);
    auto it = scores.find(label);
    if (it == scores.end()) throw Error(ErrorCode::InvalidInput, "missing score for label " + label);
    if (it->second < 1 || it->second > 5) {
      throw Error(ErrorCode::InvalidInput, "score for label " + label + " must be in 1..5");
    }
    r.scores[engine] = it->second;
  }
  for (const auto& [label, score] : scores) {
    if (!known.contains(label)) throw Error(ErrorCode::InvalidInput, "label " + label + " was not shown");
  }
  store_.put_rating(r);
  return r;
}

study::AggregateRow QueryService::stats(study::CohortFilter filter) const {
  filter.boundaries = cfg_.boundaries;
  return study::aggregate(store_.ratings(), filter);
}

}  // namespace altroute::service
