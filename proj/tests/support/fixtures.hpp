#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "altroute/road_network.hpp"
#include "altroute/shortest_path.hpp"

namespace altroute::testing {

/// Vertex ids of the diamond fixture.
inline constexpr VertexId kS = 0;
inline constexpr VertexId kA = 1;
inline constexpr VertexId kB = 2;
inline constexpr VertexId kT = 3;

/// Diamond D: s->a 2, a->t 2, s->b 3, b->t 2, a->b 1, each weight multiplied
/// by `unit` seconds. Edges are motorway segments at 3.6 km/h (1 m/s), so
/// travel time equals length exactly.
RoadNetwork diamond_network(double unit = 1.0);

/// Coordinates used by diamond_network, and its rect.
GeoPoint diamond_point(VertexId v);
BoundingRect diamond_rect();

struct WeightedArc {
  VertexId from;
  VertexId to;
  double weight;  // seconds
};

/// Network with exact travel times (1 m/s motorway edges); vertices placed on
/// a small circle.
RoadNetwork network_from_arcs(std::size_t vertex_count, const std::vector<WeightedArc>& arcs);

/// Random directed graph with 2..max_vertices vertices and integer weights in
/// [1, max_weight]; small weight ranges produce many equal-cost ties.
RoadNetwork random_small_network(std::mt19937_64& rng, std::size_t max_vertices = 10,
                                 int max_weight = 4, double edge_probability = 0.35);

// --- brute-force oracles -------------------------------------------------

/// All simple directed paths s -> t, as edge-id sequences.
std::vector<std::vector<EdgeId>> enumerate_simple_paths(const RoadNetwork& net, VertexId s,
                                                        VertexId t);

struct OracleRoute {
  bool reachable = false;
  double cost = 0.0;
  std::vector<EdgeId> edges;
};

/// Minimum-cost simple path by enumeration, summing weights in path order.
/// Among equal-cost paths picks the one whose reversed edge sequence is
/// lexicographically smallest: the path the smallest-(from,to)-parent rule
/// produces when walking back from t.
OracleRoute oracle_shortest(const RoadNetwork& net, VertexId s, VertexId t,
                            const std::vector<double>& weights = {});

// --- synthetic city ------------------------------------------------------

struct CityOptions {
  int rows = 40;
  int cols = 40;
  double spacing_m = 180.0;
  std::uint64_t seed = 1;
  GeoPoint origin{-37.85, 144.90};
};

/// OSM XML for a jittered street grid with arterials, a two-carriageway
/// motorway, diagonal avenues, one-way streets, dropped segments and some
/// non-drivable paths.
std::string synthetic_city_osm(const CityOptions& opts);

/// Rectangle enclosing every node synthetic_city_osm can emit.
BoundingRect synthetic_city_rect(const CityOptions& opts);

RoadNetwork synthetic_city(const CityOptions& opts);

}  // namespace altroute::testing
