#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>

#include "altroute/road_network.hpp"

namespace altroute {

// Binary network file, little-endian:
//
//   offset  size  field
//   0       8     magic "ALTRNET\0"
//   8       4     u32 format version (kNetworkFormatVersion)
//   12      4     u32 reserved, zero
//   16      8     u64 vertex count V
//   24      8     u64 edge count E
//   32      32    f64 x4 rect: min lat, min lon, max lat, max lon
//   64      16*V  vertex records: f64 lat, f64 lon
//   ...     40*E  edge records: u32 from, u32 to, f64 length_m, f64 max_speed_kmh,
//                 f64 travel_time_s, u8 road_class, 7 zero bytes
//   ...     8     u64 FNV-1a 64 checksum over every preceding byte
//
// Edge records are written in id order, so ids survive a round trip.

inline constexpr char kNetworkMagic[8] = {'A', 'L', 'T', 'R', 'N', 'E', 'T', '\0'};
inline constexpr std::uint32_t kNetworkFormatVersion = 1;

void write_network(std::ostream& out, const RoadNetwork& net);
RoadNetwork read_network(std::istream& in);

void save_network(const RoadNetwork& net, const std::string& path);
RoadNetwork load_network(const std::string& path);

/// Peeks at the stream without consuming it.
bool looks_like_network_file(std::istream& in);

}  // namespace altroute
