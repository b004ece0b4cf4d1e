#include "altroute/osm_extract.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "altroute/error.hpp"
#include "altroute/network_io.hpp"
#include "fixtures.hpp"

namespace altroute {
namespace {

const BoundingRect kRect{{-37.83, 144.95}, {-37.79, 144.99}};

RoadNetwork parse(const std::string& xml, const BoundingRect& rect = kRect) {
  std::istringstream in(xml);
  return parse_extract(in, rect);
}

std::string two_node_extract(double second_lat) {
  std::ostringstream s;
  s << R"(<osm version="0.6">
  <node id="1" lat="-37.81" lon="144.96"/>
  <node id="2" lat=")" << second_lat << R"(" lon="144.97"/>
  <way id="10"><nd ref="1"/><nd ref="2"/><tag k="highway" v="residential"/></way>
</osm>)";
  return s.str();
}

TEST(ParseExtractTest, TwoWayStreetBecomesTwoEdges) {
  const RoadNetwork net = parse(two_node_extract(-37.80));
  EXPECT_EQ(net.vertex_count(), 2u);
  ASSERT_EQ(net.edge_count(), 2u);
  EXPECT_EQ(net.edge(0).from, 0u);
  EXPECT_EQ(net.edge(0).to, 1u);
  EXPECT_EQ(net.edge(1).from, 1u);
  EXPECT_EQ(net.edge(1).to, 0u);
  EXPECT_DOUBLE_EQ(net.edge(0).max_speed, 50.0);  // residential default
  EXPECT_EQ(net.edge(0).road_class, RoadClass::Other);
}

TEST(ParseExtractTest, NodeOutsideRectIsClipped) {
  const RoadNetwork net = parse(two_node_extract(-37.90));
  EXPECT_EQ(net.vertex_count(), 1u);
  EXPECT_EQ(net.edge_count(), 0u);
  EXPECT_EQ(net.vertex(0), (GeoPoint{-37.81, 144.96}));
}

TEST(ParseExtractTest, MiniFixtureMatchesGoldenCounts) {
  std::ifstream golden_in(std::string(ALTROUTE_TEST_DATA_DIR) + "/mini_golden.json");
  const auto golden = nlohmann::json::parse(golden_in);
  const auto r = golden["rect"];
  const BoundingRect rect{{r[0], r[1]}, {r[2], r[3]}};
  const RoadNetwork net = parse_extract_file(std::string(ALTROUTE_TEST_DATA_DIR) + "/mini.osm", rect);

  EXPECT_EQ(net.vertex_count(), golden["vertices"].get<std::size_t>());
  EXPECT_EQ(net.edge_count(), golden["edges"].get<std::size_t>());
  std::size_t motorway = 0;
  std::vector<std::vector<VertexId>> pairs;
  for (const Edge& e : net.edges()) {
    motorway += e.road_class == RoadClass::Motorway;
    pairs.push_back({e.from, e.to});
    EXPECT_EQ(e.travel_time, edge_travel_time(e.length, e.max_speed, e.road_class));
  }
  EXPECT_EQ(motorway, golden["motorway_edges"].get<std::size_t>());
  EXPECT_EQ(pairs, golden["directed_edges"].get<std::vector<std::vector<VertexId>>>());

  // The posted "50 mph" limit on the motorway is converted to km/h.
  const auto mw = std::find_if(net.edges().begin(), net.edges().end(),
                               [](const Edge& e) { return e.road_class == RoadClass::Motorway; });
  EXPECT_NEAR(mw->max_speed, 80.4672, 1e-9);

  // Centroid snap, frozen from an independent linear-scan computation.
  GeoPoint centroid{0, 0};
  for (const GeoPoint& p : net.vertices()) {
    centroid.lat += p.lat / static_cast<double>(net.vertex_count());
    centroid.lon += p.lon / static_cast<double>(net.vertex_count());
  }
  EXPECT_EQ(snap_to_vertex(centroid, net), golden["centroid_snap_vertex"].get<VertexId>());
}

TEST(ParseExtractTest, ParsingIsDeterministic) {
  const testing::CityOptions opts{.rows = 20, .cols = 20, .seed = 9};
  const std::string xml = testing::synthetic_city_osm(opts);
  EXPECT_EQ(parse(xml, testing::synthetic_city_rect(opts)),
            parse(xml, testing::synthetic_city_rect(opts)));
}

TEST(ParseExtractTest, MalformedXmlReportsLine) {
  const std::string xml = "<osm>\n  <node id=\"1\" lat=\"-37.8\" lon=\"144.9\">\n</osm>\n";
  try {
    parse(xml);
    FAIL() << "expected parse error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Parse);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(ParseExtractTest, BadCoordinateReportsElement) {
  const std::string xml = "<osm>\n<node id=\"5\" lat=\"north\" lon=\"144.9\"/>\n</osm>\n";
  try {
    parse(xml);
    FAIL() << "expected parse error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Parse);
    const std::string msg = e.what();
    EXPECT_NE(msg.find("<node>"), std::string::npos) << msg;
    EXPECT_NE(msg.find("line 2"), std::string::npos) << msg;
  }
}

TEST(ParseExtractTest, NothingDrivableIsEmptyNetworkError) {
  const std::string xml = R"(<osm>
  <node id="1" lat="-37.81" lon="144.96"/><node id="2" lat="-37.80" lon="144.97"/>
  <way id="1"><nd ref="1"/><nd ref="2"/><tag k="highway" v="footway"/></way>
</osm>)";
  try {
    parse(xml);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyNetwork);
  }
}

TEST(ParseExtractTest, OnewayVariants) {
  auto extract = [](const std::string& tags) {
    return R"(<osm><node id="1" lat="-37.81" lon="144.96"/><node id="2" lat="-37.80" lon="144.97"/>
      <way id="1"><nd ref="1"/><nd ref="2"/>)" + tags + "</way></osm>";
  };
  auto edges_of = [&](const std::string& tags) {
    std::vector<std::pair<VertexId, VertexId>> out;
    const RoadNetwork net = parse(extract(tags));
    for (const Edge& e : net.edges()) out.emplace_back(e.from, e.to);
    return out;
  };
  using P = std::vector<std::pair<VertexId, VertexId>>;
  EXPECT_EQ(edges_of(R"(<tag k="highway" v="primary"/><tag k="oneway" v="yes"/>)"), (P{{0, 1}}));
  EXPECT_EQ(edges_of(R"(<tag k="highway" v="primary"/><tag k="oneway" v="-1"/>)"), (P{{1, 0}}));
  EXPECT_EQ(edges_of(R"(<tag k="highway" v="motorway"/>)"), (P{{0, 1}}));
  EXPECT_EQ(edges_of(R"(<tag k="highway" v="motorway"/><tag k="oneway" v="no"/>)"), (P{{0, 1}, {1, 0}}));
  EXPECT_EQ(edges_of(R"(<tag k="highway" v="tertiary"/><tag k="junction" v="roundabout"/>)"), (P{{0, 1}}));
}

TEST(MaxspeedTest, Units) {
  EXPECT_EQ(parse_maxspeed("50"), 50.0);
  EXPECT_EQ(parse_maxspeed("50 km/h"), 50.0);
  EXPECT_NEAR(*parse_maxspeed("30 mph"), 48.28032, 1e-9);
  EXPECT_EQ(parse_maxspeed("none"), std::nullopt);
  EXPECT_EQ(parse_maxspeed("0"), std::nullopt);
  EXPECT_EQ(parse_maxspeed("60;80"), 60.0);
}

TEST(ParseExtractTest, BinaryInputIsReclipped) {
  const RoadNetwork net = testing::diamond_network();
  std::stringstream buf;
  write_network(buf, net);
  // Keep s, a and b; t lies east of 144.915.
  const BoundingRect rect{{-37.82, 144.89}, {-37.78, 144.915}};
  const RoadNetwork clipped = parse_extract(buf, rect);
  EXPECT_EQ(clipped.vertex_count(), 3u);
  EXPECT_EQ(clipped.edge_count(), 3u);  // s->a, s->b, a->b
}

}  // namespace
}  // namespace altroute
