#include "altroute/network_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <vector>

#include "altroute/error.hpp"

namespace altroute {

static_assert(std::endian::native == std::endian::little,
              "network file I/O assumes a little-endian host");

namespace {

class Fnv1a {
 public:
  void update(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      hash_ ^= p[i];
      hash_ *= 0x100000001b3ULL;
    }
  }
  std::uint64_t value() const { return hash_; }

 private:
  std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}

  template <typename T>
  void put(const T& v) {
    raw(&v, sizeof(T));
  }
  void raw(const void* data, std::size_t n) {
    out_.write(static_cast<const char*>(data), static_cast<std::streamsize>(n));
    sum_.update(data, n);
  }
  std::uint64_t checksum() const { return sum_.value(); }

 private:
  std::ostream& out_;
  Fnv1a sum_;
};

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  template <typename T>
  T get() {
    T v{};
    raw(&v, sizeof(T));
    return v;
  }
  void raw(void* data, std::size_t n) {
    in_.read(static_cast<char*>(data), static_cast<std::streamsize>(n));
    if (in_.gcount() != static_cast<std::streamsize>(n)) {
      throw Error(ErrorCode::CorruptFile, "network file is truncated");
    }
    sum_.update(data, n);
  }
  std::uint64_t checksum() const { return sum_.value(); }

 private:
  std::istream& in_;
  Fnv1a sum_;
};

}  // namespace

void write_network(std::ostream& out, const RoadNetwork& net) {
  Writer w(out);
  w.raw(kNetworkMagic, sizeof(kNetworkMagic));
  w.put(kNetworkFormatVersion);
  w.put(std::uint32_t{0});
  w.put(static_cast<std::uint64_t>(net.vertex_count()));
  w.put(static_cast<std::uint64_t>(net.edge_count()));
  w.put(net.rect().min_corner.lat);
  w.put(net.rect().min_corner.lon);
  w.put(net.rect().max_corner.lat);
  w.put(net.rect().max_corner.lon);
  for (const GeoPoint& p : net.vertices()) {
    w.put(p.lat);
    w.put(p.lon);
  }
  const std::uint8_t pad[7] = {};
  for (const Edge& e : net.edges()) {
    w.put(e.from);
    w.put(e.to);
    w.put(e.length);
    w.put(e.max_speed);
    w.put(e.travel_time);
    w.put(static_cast<std::uint8_t>(e.road_class));
    w.raw(pad, sizeof(pad));
  }
  const std::uint64_t sum = w.checksum();
  out.write(reinterpret_cast<const char*>(&sum), sizeof(sum));
  if (!out) throw Error(ErrorCode::Io, "failed writing network file");
}

RoadNetwork read_network(std::istream& in) {
  Reader r(in);
  char magic[sizeof(kNetworkMagic)];
  r.raw(magic, sizeof(magic));
  if (std::memcmp(magic, kNetworkMagic, sizeof(magic)) != 0) {
    throw Error(ErrorCode::CorruptFile, "not a network file (bad magic)");
  }
  const auto version = r.get<std::uint32_t>();
  if (version != kNetworkFormatVersion) {
    throw Error(ErrorCode::VersionMismatch, "unsupported network file version " +
                                                std::to_string(version) + " (expected " +
                                                std::to_string(kNetworkFormatVersion) + ")");
  }
  r.get<std::uint32_t>();
  const auto nv = r.get<std::uint64_t>();
  const auto ne = r.get<std::uint64_t>();
  if (nv >= kInvalidVertex || ne >= kInvalidEdge) {
    throw Error(ErrorCode::CorruptFile, "network file counts out of range");
  }
  BoundingRect rect;
  rect.min_corner.lat = r.get<double>();
  rect.min_corner.lon = r.get<double>();
  rect.max_corner.lat = r.get<double>();
  rect.max_corner.lon = r.get<double>();
  if (!rect.valid()) throw Error(ErrorCode::CorruptFile, "network file has an invalid rect");

  std::vector<GeoPoint> vertices;
  vertices.reserve(nv);
  for (std::uint64_t i = 0; i < nv; ++i) {
    GeoPoint p;
    p.lat = r.get<double>();
    p.lon = r.get<double>();
    vertices.push_back(p);
  }
  std::vector<Edge> edges;
  edges.reserve(ne);
  for (std::uint64_t i = 0; i < ne; ++i) {
    Edge e;
    e.id = static_cast<EdgeId>(i);
    e.from = r.get<std::uint32_t>();
    e.to = r.get<std::uint32_t>();
    e.length = r.get<double>();
    e.max_speed = r.get<double>();
    e.travel_time = r.get<double>();
    const auto rc = r.get<std::uint8_t>();
    std::uint8_t pad[7];
    r.raw(pad, sizeof(pad));
    if (rc > static_cast<std::uint8_t>(RoadClass::Other)) {
      throw Error(ErrorCode::CorruptFile, "bad road class in edge record " + std::to_string(i));
    }
    e.road_class = static_cast<RoadClass>(rc);
    edges.push_back(e);
  }
  const std::uint64_t expected = r.checksum();
  std::uint64_t stored = 0;
  in.read(reinterpret_cast<char*>(&stored), sizeof(stored));
  if (in.gcount() != sizeof(stored)) throw Error(ErrorCode::CorruptFile, "network file is truncated");
  if (stored != expected) throw Error(ErrorCode::CorruptFile, "network file checksum mismatch");

  RoadNetworkBuilder builder(rect);
  for (const GeoPoint& p : vertices) {
    try {
      builder.add_vertex(p);
    } catch (const Error& err) {
      throw Error(ErrorCode::CorruptFile, std::string("bad vertex record: ") + err.what());
    }
  }
  for (const Edge& e : edges) {
    try {
      builder.add_edge(e.from, e.to, e.length, e.max_speed, e.road_class);
    } catch (const Error& err) {
      throw Error(ErrorCode::CorruptFile, "bad edge record " + std::to_string(e.id) + ": " + err.what());
    }
  }
  RoadNetwork net = std::move(builder).build();
  // The builder re-sorts by (from, to); a well-formed file is already sorted,
  // so ids and derived travel times must come back unchanged.
  for (const Edge& e : edges) {
    if (!(net.edge(e.id) == e)) {
      throw Error(ErrorCode::CorruptFile, "edge record " + std::to_string(e.id) +
                                              " is out of order or has an inconsistent travel time");
    }
  }
  return net;
}

void save_network(const RoadNetwork& net, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot open '" + path + "' for writing");
  write_network(out, net);
}

RoadNetwork load_network(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open network file '" + path + "'");
  return read_network(in);
}

bool looks_like_network_file(std::istream& in) {
  char magic[sizeof(kNetworkMagic)] = {};
  const auto pos = in.tellg();
  in.read(magic, sizeof(magic));
  const bool match = in.gcount() == sizeof(magic) &&
                     std::memcmp(magic, kNetworkMagic, sizeof(magic)) == 0;
  in.clear();
  in.seekg(pos);
  return match;
}

}  // namespace altroute
