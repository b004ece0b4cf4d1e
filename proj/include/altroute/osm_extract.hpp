#pragma once

#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "altroute/road_network.hpp"

namespace altroute {

/// Default max speed (km/h) per OSM highway value, used when a way carries no
/// usable maxspeed tag. Only highway values present in the table are treated
/// as drivable.
struct SpeedTable {
  std::map<std::string, double, std::less<>> kmh = {
      {"motorway", 100.0},      {"motorway_link", 60.0}, {"trunk", 80.0},
      {"trunk_link", 50.0},     {"primary", 60.0},       {"primary_link", 50.0},
      {"secondary", 60.0},      {"secondary_link", 50.0}, {"tertiary", 50.0},
      {"tertiary_link", 40.0},  {"unclassified", 40.0},  {"residential", 50.0},
      {"living_street", 20.0},  {"service", 20.0},       {"road", 40.0},
  };

  std::optional<double> lookup(std::string_view highway) const;
};

struct ExtractOptions {
  SpeedTable speeds;
};

/// Road class of an OSM highway value: motorway and motorway_link are
/// Motorway, everything else is Other.
RoadClass classify_highway(std::string_view highway);

/// Parses a maxspeed tag value ("50", "50 km/h", "30 mph"). Returns nullopt
/// for values that carry no numeric limit ("none", "signals", garbage).
std::optional<double> parse_maxspeed(std::string_view value);

/// Builds a network from an extract clipped to rect. The stream may hold OSM
/// XML or a binary network file (detected by its magic bytes); a binary
/// network is re-clipped to rect.
///
/// Only segments of drivable ways whose two endpoints both fall inside rect
/// are kept. Vertices are the inside nodes referenced by drivable ways, numbered
/// in order of first reference. Throws Error(Parse) with line context for
/// malformed XML, Error(EmptyNetwork) when nothing survives clipping.
RoadNetwork parse_extract(std::istream& source, const BoundingRect& rect,
                          const ExtractOptions& options = {});

RoadNetwork parse_extract_file(const std::string& path, const BoundingRect& rect,
                               const ExtractOptions& options = {});

/// Restricts an existing network to the vertices inside rect.
RoadNetwork clip_network(const RoadNetwork& net, const BoundingRect& rect);

}  // namespace altroute
