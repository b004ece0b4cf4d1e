#include "altroute/service/rating_store.hpp"

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>

#include "altroute/error.hpp"

namespace altroute::service {

namespace {

using nlohmann::json;

json point_json(const GeoPoint& p) { return json::array({p.lat, p.lon}); }

GeoPoint point_from(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

json query_json(const StoredQuery& q) {
  json labels = json::array();
  for (const auto& [label, engine] : q.labels) labels.push_back(json::array({label, engine}));
  return {{"kind", "query"},       {"id", q.id},
          {"city", q.city},        {"source", point_json(q.source)},
          {"target", point_json(q.target)}, {"fastest_time", q.fastest_time},
          {"labels", labels},      {"created_at", q.created_at}};
}

StoredQuery query_from(const json& j) {
  StoredQuery q;
  q.id = j.at("id").get<std::string>();
  q.city = j.at("city").get<std::string>();
  q.source = point_from(j.at("source"));
  q.target = point_from(j.at("target"));
  q.fastest_time = j.at("fastest_time").get<double>();
  for (const auto& l : j.at("labels")) {
    q.labels.emplace_back(l.at(0).get<std::string>(), l.at(1).get<std::string>());
  }
  q.created_at = j.at("created_at").get<std::int64_t>();
  return q;
}

json rating_json(const study::RatingRecord& r) {
  return {{"kind", "rating"},          {"response_id", r.response_id},
          {"city", r.city},            {"source", point_json(r.source)},
          {"target", point_json(r.target)}, {"fastest_time", r.fastest_time},
          {"resident", r.resident},    {"scores", r.scores},
          {"timestamp", r.timestamp}};
}

study::RatingRecord rating_from(const json& j) {
  study::RatingRecord r;
  r.response_id = j.at("response_id").get<std::string>();
  r.city = j.at("city").get<std::string>();
  r.source = point_from(j.at("source"));
  r.target = point_from(j.at("target"));
  r.fastest_time = j.at("fastest_time").get<double>();
  r.resident = j.at("resident").get<bool>();
  r.scores = j.at("scores").get<std::map<std::string, int>>();
  r.timestamp = j.at("timestamp").get<std::int64_t>();
  return r;
}

std::string header_line() {
  return json{{"kind", "header"}, {"schema", kRatingStoreSchema}}.dump();
}

void write_all(std::FILE* f, const std::string& data, const std::string& path) {
  if (std::fwrite(data.data(), 1, data.size(), f) != data.size() || std::fflush(f) != 0 ||
      ::fsync(fileno(f)) != 0) {
    throw Error(ErrorCode::Io, "write to rating store '" + path + "' failed");
  }
}

}  // namespace

RatingStore::RatingStore(std::string path, std::size_t compaction_threshold, Mode mode)
    : path_(std::move(path)), compaction_threshold_(compaction_threshold), mode_(mode) {
  if (path_.empty()) return;
  if (mode_ == Mode::ReadOnly) {
    if (!std::filesystem::exists(path_)) throw Error(ErrorCode::Io, "rating store '" + path_ + "' does not exist");
    load();
    return;
  }
  if (std::filesystem::exists(path_)) load();
  if (file_ == nullptr) file_ = std::fopen(path_.c_str(), "ab");
  if (file_ == nullptr) throw Error(ErrorCode::Io, "cannot open rating store '" + path_ + "'");
  if (std::filesystem::file_size(path_) == 0) write_all(file_, header_line() + "\n", path_);
}

RatingStore::~RatingStore() {
  if (file_ != nullptr) std::fclose(file_);
}

void RatingStore::load() {
  std::ifstream in(path_, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read rating store '" + path_ + "'");
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(std::move(line));
  // std::getline cannot tell whether the last line had its newline; check the file.
  bool last_terminated = true;
  {
    std::ifstream tail(path_, std::ios::binary | std::ios::ate);
    if (tail.tellg() > 0) {
      tail.seekg(-1, std::ios::end);
      last_terminated = tail.get() == '\n';
    }
  }
  if (lines.empty()) return;

  for (std::size_t i = 0; i < lines.size(); ++i) {
    const bool torn_tail = i + 1 == lines.size() && !last_terminated;
    json j;
    try {
      j = json::parse(lines[i]);
      const std::string kind = j.at("kind").get<std::string>();
      if (i == 0) {
        if (kind != "header") throw Error(ErrorCode::CorruptFile, "missing header line");
        const int schema = j.at("schema").get<int>();
        if (schema != kRatingStoreSchema) {
          throw Error(ErrorCode::VersionMismatch, "rating store schema " + std::to_string(schema) +
                                                      ", expected " + std::to_string(kRatingStoreSchema));
        }
      } else if (kind == "query") {
        StoredQuery q = query_from(j);
        queries_[q.id] = std::move(q);
      } else if (kind == "rating") {
        study::RatingRecord r = rating_from(j);
        ratings_[r.response_id] = std::move(r);
      } else {
        throw Error(ErrorCode::CorruptFile, "unknown record kind '" + kind + "'");
      }
    } catch (const json::exception& e) {
      if (torn_tail) break;
      throw Error(ErrorCode::CorruptFile, "rating store '" + path_ + "' line " + std::to_string(i + 1) +
                                              ": " + e.what());
    }
  }
  if (!last_terminated && mode_ == Mode::ReadWrite) {
    // Rewrite so the torn fragment is not glued to the next append.
    compact_locked();
  }
}

void RatingStore::append_line(const std::string& line) {
  if (mode_ == Mode::ReadOnly) throw Error(ErrorCode::Io, "rating store '" + path_ + "' is open read-only");
  ++appends_;
  if (file_ == nullptr) return;
  write_all(file_, line + "\n", path_);
}

void RatingStore::maybe_compact() {
  if (compaction_threshold_ > 0 && appends_ >= compaction_threshold_) compact_locked();
}

void RatingStore::put_query(const StoredQuery& q) {
  std::lock_guard lock(mu_);
  append_line(query_json(q).dump());
  queries_[q.id] = q;
  maybe_compact();
}

std::optional<StoredQuery> RatingStore::find_query(const std::string& id) const {
  std::lock_guard lock(mu_);
  auto it = queries_.find(id);
  if (it == queries_.end()) return std::nullopt;
  return it->second;
}

void RatingStore::put_rating(const study::RatingRecord& r) {
  std::lock_guard lock(mu_);
  append_line(rating_json(r).dump());
  ratings_[r.response_id] = r;
  maybe_compact();
}

std::optional<study::RatingRecord> RatingStore::find_rating(const std::string& response_id) const {
  std::lock_guard lock(mu_);
  auto it = ratings_.find(response_id);
  if (it == ratings_.end()) return std::nullopt;
  return it->second;
}

std::vector<study::RatingRecord> RatingStore::ratings() const {
  std::lock_guard lock(mu_);
  std::vector<study::RatingRecord> out;
  out.reserve(ratings_.size());
  for (const auto& [id, r] : ratings_) out.push_back(r);
  return out;
}

std::uint64_t RatingStore::max_query_number() const {
  std::lock_guard lock(mu_);
  std::uint64_t best = 0;
  for (const auto& [id, q] : queries_) {
    if (id.size() < 2 || id[0] != 'q') continue;
    try {
      best = std::max<std::uint64_t>(best, std::stoull(id.substr(1)));
    } catch (const std::exception&) {
    }
  }
  return best;
}

std::size_t RatingStore::appends_since_compaction() const {
  std::lock_guard lock(mu_);
  return appends_;
}

void RatingStore::compact() {
  std::lock_guard lock(mu_);
  compact_locked();
}

void RatingStore::compact_locked() {
  appends_ = 0;
  if (path_.empty() || mode_ == Mode::ReadOnly) return;
  std::string data = header_line() + "\n";
  for (const auto& [id, q] : queries_) data += query_json(q).dump() + "\n";
  for (const auto& [id, r] : ratings_) data += rating_json(r).dump() + "\n";

  const std::string tmp = path_ + ".tmp";
  std::FILE* out = std::fopen(tmp.c_str(), "wb");
  if (out == nullptr) throw Error(ErrorCode::Io, "cannot create '" + tmp + "'");
  try {
    write_all(out, data, tmp);
  } catch (...) {
    std::fclose(out);
    throw;
  }
  std::fclose(out);
  if (file_ != nullptr) {
    std::fclose(file_);
    file_ = nullptr;
  }
  std::filesystem::rename(tmp, path_);
  file_ = std::fopen(path_.c_str(), "ab");
  if (file_ == nullptr) throw Error(ErrorCode::Io, "cannot reopen rating store '" + path_ + "'");
}

}  // namespace altroute::service
