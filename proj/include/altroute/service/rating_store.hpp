#pragma once

#include <cstdint>
#include <cstdio>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "altroute/geo.hpp"
#include "altroute/study/analytics.hpp"

namespace altroute::service {

inline constexpr int kRatingStoreSchema = 1;

/// Server-side record of an answered query, kept for the rating join.
struct StoredQuery {
  std::string id;
  std::string city;
  GeoPoint source;
  GeoPoint target;
  double fastest_time = 0.0;
  std::vector<std::pair<std::string, std::string>> labels;  // label -> engine, in label order
  std::int64_t created_at = 0;

  friend bool operator==(const StoredQuery&, const StoredQuery&) = default;
};

/// Append-only JSON-lines store for queries and ratings.
///
/// Line 1:  {"kind":"header","schema":1}
/// Then any mix of
///   {"kind":"query","id":..,"city":..,"source":[lat,lon],"target":[lat,lon],
///    "fastest_time":s,"labels":[["A","<engine>"],..],"created_at":unix}
///   {"kind":"rating","response_id":..,"city":..,"source":[..],"target":[..],
///    "fastest_time":s,"resident":bool,"scores":{"<engine>":1..5},"timestamp":unix}
///
/// A later rating with the same response_id replaces the earlier one. Every
/// append is flushed and fsync'ed. After `compaction_threshold` appends the file
/// is rewritten with live records only (temp file + rename). A torn final line
/// from an interrupted write is dropped on load; damage anywhere else is a
/// corrupt-file error. An empty path keeps everything in memory.
///
/// ReadOnly opens an existing file without creating, repairing or appending;
/// the put_* calls then throw.
class RatingStore {
 public:
  enum class Mode { ReadWrite, ReadOnly };

  explicit RatingStore(std::string path = {}, std::size_t compaction_threshold = 1000,
                       Mode mode = Mode::ReadWrite);
  ~RatingStore();

  RatingStore(const RatingStore&) = delete;
  RatingStore& operator=(const RatingStore&) = delete;

  void put_query(const StoredQuery& q);
  std::optional<StoredQuery> find_query(const std::string& id) const;

  void put_rating(const study::RatingRecord& r);
  std::optional<study::RatingRecord> find_rating(const std::string& response_id) const;

  /// Snapshot of the latest rating per response id, ordered by id.
  std::vector<study::RatingRecord> ratings() const;

  /// Largest numeric suffix among stored query ids ("q000042" -> 42).
  std::uint64_t max_query_number() const;

  void compact();

  std::size_t appends_since_compaction() const;
  const std::string& path() const noexcept { return path_; }

 private:
  void load();
  void append_line(const std::string& line);
  void maybe_compact();
  void compact_locked();

  std::string path_;
  std::size_t compaction_threshold_;
  Mode mode_;
  std::FILE* file_ = nullptr;
  std::size_t appends_ = 0;
  mutable std::mutex mu_;
  std::map<std::string, StoredQuery> queries_;
  std::map<std::string, study::RatingRecord> ratings_;
};

}  // namespace altroute::service
