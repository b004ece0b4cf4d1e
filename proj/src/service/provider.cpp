#include "altroute/service/provider.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "altroute/error.hpp"

namespace altroute::service {

namespace {

GeoPoint point_of(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2) throw Error(ErrorCode::Parse, "expected [lat, lon] pair");
  GeoPoint p{j[0].get<double>(), j[1].get<double>()};
  if (!p.valid()) throw Error(ErrorCode::Parse, "coordinate out of range");
  return p;
}

}  // namespace

ReplayStubProvider ReplayStubProvider::from_json(const std::string& text) {
  ReplayStubProvider out;
  try {
    const auto j = nlohmann::json::parse(text);
    out.decimals_ = j.value("cell_decimals", 3);
    if (out.decimals_ < 0 || out.decimals_ > 9) throw Error(ErrorCode::Parse, "cell_decimals must be in 0..9");
    for (const auto& q : j.at("queries")) {
      std::vector<Polyline> routes;
      for (const auto& r : q.at("routes")) {
        Polyline line;
        for (const auto& p : r) line.push_back(point_of(p));
        if (line.size() < 2) throw Error(ErrorCode::Parse, "route needs at least two points");
        routes.push_back(std::move(line));
      }
      out.routes_[out.key(point_of(q.at("source")), point_of(q.at("target")))] = std::move(routes);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("provider fixture: ") + e.what());
  }
  return out;
}

ReplayStubProvider ReplayStubProvider::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open provider fixture '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

ReplayStubProvider::CellKey ReplayStubProvider::key(const GeoPoint& s, const GeoPoint& t) const {
  const double scale = std::pow(10.0, decimals_);
  auto r = [&](double v) { return std::llround(v * scale); };
  return {{r(s.lat), r(s.lon)}, {r(t.lat), r(t.lon)}};
}

std::vector<Polyline> ReplayStubProvider::fetch(const GeoPoint& source, const GeoPoint& target,
                                                std::size_t k) {
  auto it = routes_.find(key(source, target));
  if (it == routes_.end()) throw Error(ErrorCode::NoRoute, "no replayed routes for this cell");
  std::vector<Polyline> out = it->second;
  if (out.size() > k) out.resize(k);
  return out;
}

Path polyline_to_path(const RoadNetwork& net, const Polyline& line) {
  std::vector<VertexId> stops;
  for (const GeoPoint& p : line) {
    const VertexId v = snap_to_vertex(p, net);
    if (stops.empty() || stops.back() != v) stops.push_back(v);
  }
  if (stops.size() < 2) throw Error(ErrorCode::NoRoute, "route collapses to a single vertex");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < stops.size(); ++i) {
    const Edge* direct = nullptr;
    for (const Edge& e : net.out_edges(stops[i])) {
      if (e.to == stops[i + 1] && (!direct || e.travel_time < direct->travel_time)) direct = &e;
    }
    if (direct) {
      edges.push_back(*direct);
    } else {
      const Path gap = shortest_path(net, stops[i], stops[i + 1]);
      edges.insert(edges.end(), gap.edges.begin(), gap.edges.end());
    }
  }
  return make_path(stops.front(), stops.back(), std::move(edges));
}

}  // namespace altroute::service
