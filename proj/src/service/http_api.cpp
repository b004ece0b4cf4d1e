#include "altroute/service/http_api.hpp"

#include <httplib.h>

#include "altroute/error.hpp"

namespace altroute::service {

using nlohmann::json;

int http_status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownQuery:
      return 404;
    case ErrorCode::OutOfArea:
    case ErrorCode::NoRoute:
    case ErrorCode::EmptyCohort:
    case ErrorCode::IncompleteScores:
    case ErrorCode::UndefinedSimilarity:
      return 422;
    case ErrorCode::InvalidInput:
    case ErrorCode::Parse:
    case ErrorCode::SameEndpoints:
    case ErrorCode::UnknownEngine:
    case ErrorCode::UnknownVertex:
      return 400;
    default:
      return 500;
  }
}

namespace {

ApiResponse error_response(ErrorCode code, const std::string& message) {
  return {http_status_for(code), json{{"error", std::string(to_string(code))}, {"message", message}}.dump()};
}

template <typename F>
ApiResponse guarded(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    return error_response(e.code(), e.what());
  } catch (const json::exception& e) {
    return error_response(ErrorCode::InvalidInput, std::string("bad request body: ") + e.what());
  }
}

GeoPoint point_from(const json& j, const char* field) {
  if (!j.is_object() || !j.contains("lat") || !j.contains("lon")) {
    throw Error(ErrorCode::InvalidInput, std::string(field) + " must be {lat, lon}");
  }
  return {j.at("lat").get<double>(), j.at("lon").get<double>()};
}

json parse_body(const std::string& body) {
  json j = json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw Error(ErrorCode::Parse, "request body must be a JSON object");
  return j;
}

}  // namespace

ApiResponse HttpApi::post_routes(const std::string& body) {
  return guarded([&] {
    const json j = parse_body(body);
    QueryRequest req;
    req.source = point_from(j.at("source"), "source");
    req.target = point_from(j.at("target"), "target");
    if (j.contains("k")) {
      const auto k = j.at("k").get<long long>();
      if (k < 1 || k > 5) throw Error(ErrorCode::InvalidInput, "k must be in 1..5");
      req.k = static_cast<std::size_t>(k);
    }
    if (j.contains("engines")) req.engines = j.at("engines").get<std::vector<std::string>>();
    return ApiResponse{200, to_json(service_.handle_query(req)).dump()};
  });
}

ApiResponse HttpApi::post_ratings(const std::string& body) {
  return guarded([&] {
    const json j = parse_body(body);
    const auto id = j.at("query_id").get<std::string>();
    const auto scores = j.at("scores").get<std::map<std::string, int>>();
    const bool resident = j.value("resident", false);
    service_.record_rating(id, scores, resident);
    return ApiResponse{200, json{{"query_id", id}, {"status", "stored"}}.dump()};
  });
}

ApiResponse HttpApi::get_stats(const std::map<std::string, std::string>& params) {
  return guarded([&] {
    study::CohortFilter f;
    if (auto it = params.find("city"); it != params.end() && !it->second.empty()) f.city = it->second;
    if (auto it = params.find("residents"); it != params.end() && !it->second.empty()) {
      const std::string& v = it->second;
      if (v == "true" || v == "1") f.resident = true;
      else if (v == "false" || v == "0") f.resident = false;
      else throw Error(ErrorCode::InvalidInput, "residents must be true or false");
    }
    if (auto it = params.find("category"); it != params.end() && !it->second.empty()) {
      f.category = study::parse_length_category(it->second);
      if (!f.category) throw Error(ErrorCode::InvalidInput, "category must be small, medium or long");
    }
    const auto row = service_.stats(f);
    json approaches = json::array();
    for (const auto& a : row.approaches) {
      approaches.push_back({{"approach", a.approach}, {"mean", a.mean}, {"sd", a.sd}, {"n", a.n},
                            {"sd_defined", a.sd_defined}});
    }
    return ApiResponse{200, json{{"cohort", row.cohort}, {"count", row.count}, {"approaches", approaches}}.dump()};
  });
}

ApiResponse HttpApi::get_health() const {
  const auto& net = service_.network();
  return {200, json{{"status", "ok"}, {"vertices", net.vertex_count()}, {"edges", net.edge_count()}}.dump()};
}

void HttpApi::install(httplib::Server& server) {
  auto reply = [](httplib::Response& res, const ApiResponse& r) {
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };
  server.Post("/api/routes", [this, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, post_routes(req.body));
  });
  server.Post("/api/ratings", [this, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, post_ratings(req.body));
  });
  server.Get("/api/stats", [this, reply](const httplib::Request& req, httplib::Response& res) {
    std::map<std::string, std::string> params(req.params.begin(), req.params.end());
    reply(res, get_stats(params));
  });
  server.Get("/healthz", [this, reply](const httplib::Request&, httplib::Response& res) {
    reply(res, get_health());
  });
  if (!service_.config().static_dir.empty() && !server.set_mount_point("/", service_.config().static_dir)) {
    throw Error(ErrorCode::Io, "cannot mount static directory '" + service_.config().static_dir + "'");
  }
}

}  // namespace altroute::service
