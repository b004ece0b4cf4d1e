#include "fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "altroute/osm_extract.hpp"

namespace altroute::testing {

GeoPoint diamond_point(VertexId v) {
  switch (v) {
    case kS: return {-37.80, 144.90};
    case kA: return {-37.79, 144.91};
    case kB: return {-37.81, 144.91};
    default: return {-37.80, 144.92};
  }
}

BoundingRect diamond_rect() { return {{-37.82, 144.89}, {-37.78, 144.93}}; }

RoadNetwork diamond_network(double unit) {
  RoadNetworkBuilder b(diamond_rect());
  for (VertexId v = 0; v < 4; ++v) b.add_vertex(diamond_point(v));
  b.add_edge(kS, kA, 2 * unit, 3.6, RoadClass::Motorway);
  b.add_edge(kA, kT, 2 * unit, 3.6, RoadClass::Motorway);
  b.add_edge(kS, kB, 3 * unit, 3.6, RoadClass::Motorway);
  b.add_edge(kB, kT, 2 * unit, 3.6, RoadClass::Motorway);
  b.add_edge(kA, kB, 1 * unit, 3.6, RoadClass::Motorway);
  return std::move(b).build();
}

RoadNetwork network_from_arcs(std::size_t vertex_count, const std::vector<WeightedArc>& arcs) {
  RoadNetworkBuilder b;
  for (std::size_t i = 0; i < vertex_count; ++i) {
    const double angle = 2.0 * 3.14159265358979 * static_cast<double>(i) / static_cast<double>(vertex_count);
    b.add_vertex({-37.8 + 0.01 * std::sin(angle), 144.9 + 0.01 * std::cos(angle)});
  }
  for (const auto& a : arcs) b.add_edge(a.from, a.to, a.weight, 3.6, RoadClass::Motorway);
  return std::move(b).build();
}

RoadNetwork random_small_network(std::mt19937_64& rng, std::size_t max_vertices, int max_weight,
                                 double edge_probability) {
  std::uniform_int_distribution<std::size_t> nv(2, max_vertices);
  std::uniform_int_distribution<int> w(1, max_weight);
  std::bernoulli_distribution coin(edge_probability);
  const std::size_t n = nv(rng);
  std::vector<WeightedArc> arcs;
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = 0; v < n; ++v) {
      if (u != v && coin(rng)) arcs.push_back({u, v, static_cast<double>(w(rng))});
    }
  }
  return network_from_arcs(n, arcs);
}

std::vector<std::vector<EdgeId>> enumerate_simple_paths(const RoadNetwork& net, VertexId s,
                                                        VertexId t) {
  std::vector<std::vector<EdgeId>> out;
  std::vector<EdgeId> stack;
  std::vector<bool> on_path(net.vertex_count(), false);
  std::function<void(VertexId)> dfs = [&](VertexId v) {
    if (v == t) {
      out.push_back(stack);
      return;
    }
    on_path[v] = true;
    for (const Edge& e : net.out_edges(v)) {
      if (on_path[e.to]) continue;
      stack.push_back(e.id);
      dfs(e.to);
      stack.pop_back();
    }
    on_path[v] = false;
  };
  dfs(s);
  return out;
}

OracleRoute oracle_shortest(const RoadNetwork& net, VertexId s, VertexId t,
                            const std::vector<double>& weights) {
  OracleRoute best;
  for (const auto& p : enumerate_simple_paths(net, s, t)) {
    double cost = 0.0;
    for (EdgeId e : p) cost += weights.empty() ? net.edge(e).travel_time : weights[e];
    bool better = !best.reachable || cost < best.cost;
    if (!better && cost == best.cost) {
      better = std::lexicographical_compare(p.rbegin(), p.rend(), best.edges.rbegin(), best.edges.rend());
    }
    if (better) {
      best.reachable = true;
      best.cost = cost;
      best.edges = p;
    }
  }
  return best;
}

// --- synthetic city ------------------------------------------------------

namespace {

constexpr double kMetersPerDegLat = 111320.0;

}  // namespace

BoundingRect synthetic_city_rect(const CityOptions& o) {
  const double dlat = o.spacing_m / kMetersPerDegLat;
  const double dlon = o.spacing_m / (kMetersPerDegLat * std::cos(o.origin.lat * 3.14159265358979 / 180.0));
  return {{o.origin.lat - dlat, o.origin.lon - dlon},
          {o.origin.lat + dlat * o.rows, o.origin.lon + dlon * o.cols}};
}

std::string synthetic_city_osm(const CityOptions& o) {
  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> jitter(-0.2, 0.2);
  std::bernoulli_distribution drop(0.07);
  std::bernoulli_distribution oneway(0.12);
  std::bernoulli_distribution posted(0.3);

  const double dlat = o.spacing_m / kMetersPerDegLat;
  const double dlon = o.spacing_m / (kMetersPerDegLat * std::cos(o.origin.lat * 3.14159265358979 / 180.0));
  auto node_id = [&](int r, int c) { return static_cast<long long>(r) * o.cols + c + 1; };

  std::ostringstream xml;
  xml.precision(9);
  xml << "<?xml version='1.0' encoding='UTF-8'?>\n<osm version=\"0.6\" generator=\"synthetic\">\n";
  for (int r = 0; r < o.rows; ++r) {
    for (int c = 0; c < o.cols; ++c) {
      const double lat = o.origin.lat + dlat * (r + jitter(rng));
      const double lon = o.origin.lon + dlon * (c + jitter(rng));
      xml << "  <node id=\"" << node_id(r, c) << "\" lat=\"" << lat << "\" lon=\"" << lon << "\"/>\n";
    }
  }

  long long way_id = 1;
  auto emit_way = [&](const std::vector<long long>& refs, const std::string& highway,
                      const std::string& maxspeed, const std::string& ow) {
    if (refs.size() < 2) return;
    xml << "  <way id=\"" << way_id++ << "\">\n";
    for (long long ref : refs) xml << "    <nd ref=\"" << ref << "\"/>\n";
    xml << "    <tag k=\"highway\" v=\"" << highway << "\"/>\n";
    if (!maxspeed.empty()) xml << "    <tag k=\"maxspeed\" v=\"" << maxspeed << "\"/>\n";
    if (!ow.empty()) xml << "    <tag k=\"oneway\" v=\"" << ow << "\"/>\n";
    xml << "  </way>\n";
  };

  // Streets along a row or column, split into separate ways at dropped segments.
  auto street = [&](std::vector<long long> line, bool arterial, const std::string& arterial_class) {
    std::vector<long long> current{line.front()};
    auto flush = [&] {
      if (arterial) {
        emit_way(current, arterial_class, "60", "");
      } else {
        std::string ow;
        if (oneway(rng)) ow = (rng() & 1U) ? "yes" : "-1";
        emit_way(current, "residential", posted(rng) ? "40" : "", ow);
      }
    };
    for (std::size_t i = 1; i < line.size(); ++i) {
      if (!arterial && drop(rng)) {
        flush();
        current = {line[i]};
      } else {
        current.push_back(line[i]);
      }
    }
    flush();
  };

  for (int r = 0; r < o.rows; ++r) {
    std::vector<long long> line;
    for (int c = 0; c < o.cols; ++c) line.push_back(node_id(r, c));
    street(line, r % 8 == 4, "primary");
  }
  for (int c = 0; c < o.cols; ++c) {
    std::vector<long long> line;
    for (int r = 0; r < o.rows; ++r) line.push_back(node_id(r, c));
    street(line, c % 8 == 4, "secondary");
  }

  // Diagonal avenues.
  for (int start = 0; start < o.cols; start += std::max(8, o.cols / 3)) {
    std::vector<long long> line;
    for (int r = 0, c = start; r < o.rows && c < o.cols; ++r, ++c) line.push_back(node_id(r, c));
    emit_way(line, "tertiary", "", "");
  }

  // Motorway along one row, one carriageway per direction.
  {
    const int r = o.rows / 3;
    std::vector<long long> east;
    for (int c = 0; c < o.cols; c += 3) east.push_back(node_id(r, c));
    std::vector<long long> west(east.rbegin(), east.rend());
    emit_way(east, "motorway", "100", "");
    emit_way(west, "motorway", "100", "");
  }

  // Footpaths are not drivable and must be ignored.
  for (int r = 1; r + 1 < o.rows; r += 7) {
    emit_way({node_id(r, 0), node_id(r + 1, 1)}, "footway", "", "");
  }

  xml << "</osm>\n";
  return xml.str();
}

RoadNetwork synthetic_city(const CityOptions& opts) {
  std::istringstream in(synthetic_city_osm(opts));
  return parse_extract(in, synthetic_city_rect(opts));
}

}  // namespace altroute::testing
