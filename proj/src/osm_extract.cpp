#include "altroute/osm_extract.hpp"

#include <expat.h>

#include <array>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <memory>
#include <unordered_map>
#include <vector>

#include "altroute/error.hpp"
#include "altroute/network_io.hpp"

namespace altroute {

std::optional<double> SpeedTable::lookup(std::string_view highway) const {
  auto it = kmh.find(highway);
  if (it == kmh.end()) return std::nullopt;
  return it->second;
}

RoadClass classify_highway(std::string_view highway) {
  return (highway == "motorway" || highway == "motorway_link") ? RoadClass::Motorway
                                                               : RoadClass::Other;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::optional<double> to_double(std::string_view s) {
  s = trim(s);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<std::int64_t> to_int64(std::string_view s) {
  s = trim(s);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

std::optional<double> parse_maxspeed(std::string_view value) {
  value = trim(value);
  // "50;60" style lists: take the first entry.
  if (auto semi = value.find(';'); semi != std::string_view::npos) value = trim(value.substr(0, semi));
  double factor = 1.0;
  if (value.size() > 3 && value.substr(value.size() - 3) == "mph") {
    factor = 1.609344;
    value = trim(value.substr(0, value.size() - 3));
  } else if (value.size() > 4 && value.substr(value.size() - 4) == "km/h") {
    value = trim(value.substr(0, value.size() - 4));
  } else if (value.size() > 3 && value.substr(value.size() - 3) == "kmh") {
    value = trim(value.substr(0, value.size() - 3));
  }
  auto v = to_double(value);
  if (!v || !(*v > 0.0)) return std::nullopt;
  return *v * factor;
}

namespace {

enum class Oneway { No, Forward, Backward };

struct RawWay {
  std::int64_t id = 0;
  std::vector<std::int64_t> refs;
  std::string highway;
  std::string maxspeed;
  std::string oneway;
  std::string junction;
};

struct XmlState {
  XML_Parser parser = nullptr;
  std::unordered_map<std::int64_t, GeoPoint> nodes;
  std::vector<RawWay> ways;
  bool in_way = false;
  std::string error;

  void fail(const std::string& element, const std::string& what) {
    if (!error.empty()) return;
    error = "line " + std::to_string(XML_GetCurrentLineNumber(parser)) + ", <" + element +
            ">: " + what;
    XML_StopParser(parser, XML_FALSE);
  }
};

const char* find_attr(const XML_Char** attrs, const char* name) {
  for (int i = 0; attrs[i] != nullptr; i += 2) {
    if (std::strcmp(attrs[i], name) == 0) return attrs[i + 1];
  }
  return nullptr;
}

void XMLCALL on_start(void* user, const XML_Char* name, const XML_Char** attrs) {
  auto& st = *static_cast<XmlState*>(user);
  const std::string_view el(name);
  if (el == "node") {
    const char* id = find_attr(attrs, "id");
    const char* lat = find_attr(attrs, "lat");
    const char* lon = find_attr(attrs, "lon");
    if (!id || !lat || !lon) return st.fail("node", "missing id/lat/lon attribute");
    auto nid = to_int64(id);
    auto la = to_double(lat);
    auto lo = to_double(lon);
    if (!nid) return st.fail("node", std::string("bad id '") + id + "'");
    if (!la || !lo) return st.fail("node", "bad coordinate on node " + std::to_string(*nid));
    GeoPoint p{*la, *lo};
    if (!p.valid()) return st.fail("node", "coordinate out of range on node " + std::to_string(*nid));
    st.nodes[*nid] = p;
  } else if (el == "way") {
    const char* id = find_attr(attrs, "id");
    auto wid = id ? to_int64(id) : std::nullopt;
    if (!wid) return st.fail("way", "missing or bad id attribute");
    RawWay w;
    w.id = *wid;
    st.ways.push_back(std::move(w));
    st.in_way = true;
  } else if (el == "nd" && st.in_way) {
    const char* ref = find_attr(attrs, "ref");
    auto r = ref ? to_int64(ref) : std::nullopt;
    if (!r) return st.fail("nd", "missing or bad ref in way " + std::to_string(st.ways.back().id));
    st.ways.back().refs.push_back(*r);
  } else if (el == "tag" && st.in_way) {
    const char* k = find_attr(attrs, "k");
    const char* v = find_attr(attrs, "v");
    if (!k || !v) return st.fail("tag", "missing k/v in way " + std::to_string(st.ways.back().id));
    const std::string_view key(k);
    auto& w = st.ways.back();
    if (key == "highway") w.highway = v;
    else if (key == "maxspeed") w.maxspeed = v;
    else if (key == "oneway") w.oneway = v;
    else if (key == "junction") w.junction = v;
  }
}

void XMLCALL on_end(void* user, const XML_Char* name) {
  auto& st = *static_cast<XmlState*>(user);
  if (std::string_view(name) == "way") st.in_way = false;
}

Oneway oneway_of(const RawWay& w) {
  if (w.oneway == "yes" || w.oneway == "true" || w.oneway == "1") return Oneway::Forward;
  if (w.oneway == "-1" || w.oneway == "reverse") return Oneway::Backward;
  if (w.oneway == "no" || w.oneway == "false" || w.oneway == "0") return Oneway::No;
  // implied one-way roads
  if (w.highway == "motorway" || w.junction == "roundabout") return Oneway::Forward;
  return Oneway::No;
}

RoadNetwork build_from_xml(XmlState& st, const BoundingRect& rect, const ExtractOptions& options) {
  RoadNetworkBuilder builder(rect);
  std::unordered_map<std::int64_t, VertexId> vertex_of;

  auto inside = [&](std::int64_t ref) -> const GeoPoint* {
    auto it = st.nodes.find(ref);
    if (it == st.nodes.end() || !rect.contains(it->second)) return nullptr;
    return &it->second;
  };
  auto vertex_for = [&](std::int64_t ref, const GeoPoint& p) {
    auto [it, inserted] = vertex_of.try_emplace(ref, kInvalidVertex);
    if (inserted) it->second = builder.add_vertex(p);
    return it->second;
  };

  for (const auto& w : st.ways) {
    const auto default_speed = options.speeds.lookup(w.highway);
    if (!default_speed) continue;  // not drivable
    const double speed = parse_maxspeed(w.maxspeed).value_or(*default_speed);
    const RoadClass rc = classify_highway(w.highway);
    const Oneway dir = oneway_of(w);

    // Vertices are registered in reference order, including inside nodes
    // whose neighbouring segments get clipped away.
    std::vector<VertexId> ids(w.refs.size(), kInvalidVertex);
    for (std::size_t i = 0; i < w.refs.size(); ++i) {
      if (const GeoPoint* p = inside(w.refs[i])) ids[i] = vertex_for(w.refs[i], *p);
    }
    for (std::size_t i = 0; i + 1 < w.refs.size(); ++i) {
      const VertexId a = ids[i];
      const VertexId b = ids[i + 1];
      if (a == kInvalidVertex || b == kInvalidVertex || a == b) continue;
      const double length = haversine_meters(st.nodes.at(w.refs[i]), st.nodes.at(w.refs[i + 1]));
      if (!(length > 0.0)) continue;  // coincident nodes
      if (dir != Oneway::Backward) builder.add_edge(a, b, length, speed, rc);
      if (dir != Oneway::Forward) builder.add_edge(b, a, length, speed, rc);
    }
  }
  if (builder.vertex_count() == 0) {
    throw Error(ErrorCode::EmptyNetwork, "no drivable road data inside the rectangle");
  }
  return std::move(builder).build();
}

}  // namespace

RoadNetwork parse_extract(std::istream& source, const BoundingRect& rect,
                          const ExtractOptions& options) {
  if (!rect.valid()) throw Error(ErrorCode::InvalidInput, "invalid bounding rectangle");

  if (looks_like_network_file(source)) {
    return clip_network(read_network(source), rect);
  }

  XmlState st;
  std::unique_ptr<std::remove_pointer_t<XML_Parser>, decltype(&XML_ParserFree)> parser(
      XML_ParserCreate(nullptr), &XML_ParserFree);
  if (!parser) throw Error(ErrorCode::Io, "cannot allocate XML parser");
  st.parser = parser.get();
  XML_SetUserData(st.parser, &st);
  XML_SetElementHandler(st.parser, on_start, on_end);

  std::array<char, 1 << 16> buf{};
  bool done = false;
  while (!done) {
    source.read(buf.data(), buf.size());
    const auto got = source.gcount();
    done = got < static_cast<std::streamsize>(buf.size());
    if (XML_Parse(st.parser, buf.data(), static_cast<int>(got), done ? XML_TRUE : XML_FALSE) ==
        XML_STATUS_ERROR) {
      if (!st.error.empty()) throw Error(ErrorCode::Parse, st.error);
      throw Error(ErrorCode::Parse,
                  "line " + std::to_string(XML_GetCurrentLineNumber(st.parser)) + ": " +
                      XML_ErrorString(XML_GetErrorCode(st.parser)));
    }
  }
  return build_from_xml(st, rect, options);
}

RoadNetwork parse_extract_file(const std::string& path, const BoundingRect& rect,
                               const ExtractOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open extract '" + path + "'");
  return parse_extract(in, rect, options);
}

RoadNetwork clip_network(const RoadNetwork& net, const BoundingRect& rect) {
  RoadNetworkBuilder builder(rect);
  std::vector<VertexId> remap(net.vertex_count(), kInvalidVertex);
  for (VertexId v = 0; v < net.vertex_count(); ++v) {
    if (rect.contains(net.vertex(v))) remap[v] = builder.add_vertex(net.vertex(v));
  }
  for (const Edge& e : net.edges()) {
    if (remap[e.from] == kInvalidVertex || remap[e.to] == kInvalidVertex) continue;
    builder.add_edge(remap[e.from], remap[e.to], e.length, e.max_speed, e.road_class);
  }
  if (builder.vertex_count() == 0) {
    throw Error(ErrorCode::EmptyNetwork, "no vertices inside the rectangle");
  }
  return std::move(builder).build();
}

}  // namespace altroute
