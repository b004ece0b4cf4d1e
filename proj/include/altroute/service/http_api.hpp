#pragma once

#include <map>
#include <string>

#include "altroute/error.hpp"
#include "altroute/service/query_service.hpp"

namespace httplib {
class Server;
}

namespace altroute::service {

struct ApiResponse {
  int status = 200;
  std::string body;  // JSON
};

/// Transport-independent handlers for the JSON API. Error bodies are
/// {"error": "<code>", "message": "..."}; status 400 for malformed requests,
/// 404 for unknown query ids, 422 for well-formed requests that cannot be
/// answered (outside the area, no route, empty cohort).
class HttpApi {
 public:
  explicit HttpApi(QueryService& service) : service_(service) {}

  ApiResponse post_routes(const std::string& body);
  ApiResponse post_ratings(const std::string& body);
  ApiResponse get_stats(const std::map<std::string, std::string>& params);
  ApiResponse get_health() const;

  /// Registers POST /api/routes, POST /api/ratings, GET /api/stats and
  /// GET /healthz, plus a static mount at "/" when the config names a directory.
  void install(httplib::Server& server);

 private:
  QueryService& service_;
};

int http_status_for(ErrorCode code);

}  // namespace altroute::service
