#include "altroute/service/config.hpp"

#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "altroute/error.hpp"

namespace altroute::service {

std::string_view to_string(LabelPolicy p) {
  return p == LabelPolicy::Fixed ? "fixed" : "shuffle";
}

std::optional<LabelPolicy> parse_label_policy(std::string_view s) {
  if (s == "fixed") return LabelPolicy::Fixed;
  if (s == "shuffle" || s == "per_query_shuffle") return LabelPolicy::PerQueryShuffle;
  return std::nullopt;
}

EnvLookup process_environment() {
  return [](const std::string& name) -> std::optional<std::string> {
    const char* v = std::getenv(name.c_str());
    if (v == nullptr) return std::nullopt;
    return std::string(v);
  };
}

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::InvalidInput, "config " + where + ": " + what);
}

double to_number(const std::string& where, const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    bad(where, "not a number: '" + s + "'");
  }
  if (used != s.size()) bad(where, "not a number: '" + s + "'");
  return v;
}

std::uint64_t to_unsigned(const std::string& where, const std::string& s) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    bad(where, "not a non-negative integer: '" + s + "'");
  }
  if (used != s.size() || s.front() == '-') bad(where, "not a non-negative integer: '" + s + "'");
  return v;
}

void set_listen(ServiceConfig& cfg, const std::string& where, const std::string& value) {
  const auto colon = value.rfind(':');
  if (colon == std::string::npos) bad(where, "expected host:port, got '" + value + "'");
  cfg.listen_host = value.substr(0, colon);
  const auto port = to_unsigned(where, value.substr(colon + 1));
  if (port > 65535) bad(where, "port out of range");
  cfg.listen_port = static_cast<int>(port);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void apply_file(ServiceConfig& cfg, const nlohmann::json& j) {
  if (!j.is_object()) bad("file", "top level must be an object");
  static const std::set<std::string> kKeys = {
      "network", "city", "engines", "k", "penalty_factor", "penalty_max_iterations",
      "stretch_bound", "theta", "label_policy", "label_seed", "rating_store",
      "compaction_threshold", "query_ttl_hours", "provider_fixture", "listen", "static_dir",
      "length_boundaries"};
  for (const auto& [key, value] : j.items()) {
    if (!kKeys.contains(key)) bad("file", "unknown key '" + key + "'");
  }
  try {
    if (j.contains("network")) cfg.network_path = j["network"].get<std::string>();
    if (j.contains("city")) cfg.city = j["city"].get<std::string>();
    if (j.contains("engines")) cfg.engines = j["engines"].get<std::vector<std::string>>();
    if (j.contains("k")) cfg.default_k = j["k"].get<std::size_t>();
    if (j.contains("penalty_factor")) cfg.engine_params.penalty_factor = j["penalty_factor"].get<double>();
    if (j.contains("penalty_max_iterations")) {
      cfg.engine_params.penalty_max_iterations = j["penalty_max_iterations"].get<std::size_t>();
    }
    if (j.contains("stretch_bound")) cfg.engine_params.stretch_bound = j["stretch_bound"].get<double>();
    if (j.contains("theta")) cfg.engine_params.theta = j["theta"].get<double>();
    if (j.contains("label_policy")) {
      auto p = parse_label_policy(j["label_policy"].get<std::string>());
      if (!p) bad("label_policy", "expected 'fixed' or 'shuffle'");
      cfg.label_policy = *p;
    }
    if (j.contains("label_seed")) cfg.label_seed = j["label_seed"].get<std::uint64_t>();
    if (j.contains("rating_store")) cfg.rating_store_path = j["rating_store"].get<std::string>();
    if (j.contains("compaction_threshold")) {
      cfg.compaction_threshold = j["compaction_threshold"].get<std::size_t>();
    }
    if (j.contains("query_ttl_hours")) {
      cfg.query_ttl_seconds = static_cast<std::int64_t>(j["query_ttl_hours"].get<double>() * 3600.0);
    }
    if (j.contains("provider_fixture")) cfg.provider_fixture = j["provider_fixture"].get<std::string>();
    if (j.contains("listen")) set_listen(cfg, "listen", j["listen"].get<std::string>());
    if (j.contains("static_dir")) cfg.static_dir = j["static_dir"].get<std::string>();
    if (j.contains("length_boundaries")) {
      const auto b = j["length_boundaries"].get<std::vector<double>>();
      if (b.size() != 3) bad("length_boundaries", "expected three minute values");
      cfg.boundaries.upper_minutes = {b[0], b[1], b[2]};
    }
  } catch (const nlohmann::json::exception& e) {
    bad("file", e.what());
  }
}

void apply_env(ServiceConfig& cfg, const EnvLookup& env) {
  auto get = [&](const char* name) { return env(name); };
  if (auto v = get("ALTROUTE_NETWORK")) cfg.network_path = *v;
  if (auto v = get("ALTROUTE_CITY")) cfg.city = *v;
  if (auto v = get("ALTROUTE_ENGINES")) cfg.engines = split_list(*v);
  if (auto v = get("ALTROUTE_K")) cfg.default_k = to_unsigned("ALTROUTE_K", *v);
  if (auto v = get("ALTROUTE_PENALTY_FACTOR")) {
    cfg.engine_params.penalty_factor = to_number("ALTROUTE_PENALTY_FACTOR", *v);
  }
  if (auto v = get("ALTROUTE_STRETCH_BOUND")) {
    cfg.engine_params.stretch_bound = to_number("ALTROUTE_STRETCH_BOUND", *v);
  }
  if (auto v = get("ALTROUTE_THETA")) cfg.engine_params.theta = to_number("ALTROUTE_THETA", *v);
  if (auto v = get("ALTROUTE_LABEL_POLICY")) {
    auto p = parse_label_policy(*v);
    if (!p) bad("ALTROUTE_LABEL_POLICY", "expected 'fixed' or 'shuffle'");
    cfg.label_policy = *p;
  }
  if (auto v = get("ALTROUTE_LABEL_SEED")) cfg.label_seed = to_unsigned("ALTROUTE_LABEL_SEED", *v);
  if (auto v = get("ALTROUTE_RATING_STORE")) cfg.rating_store_path = *v;
  if (auto v = get("ALTROUTE_QUERY_TTL_HOURS")) {
    cfg.query_ttl_seconds = static_cast<std::int64_t>(to_number("ALTROUTE_QUERY_TTL_HOURS", *v) * 3600.0);
  }
  if (auto v = get("ALTROUTE_PROVIDER_FIXTURE")) cfg.provider_fixture = *v;
  if (auto v = get("ALTROUTE_LISTEN")) set_listen(cfg, "ALTROUTE_LISTEN", *v);
  if (auto v = get("ALTROUTE_STATIC_DIR")) cfg.static_dir = *v;
}

}  // namespace

void validate(const ServiceConfig& cfg) {
  if (cfg.default_k < 1 || cfg.default_k > 5) bad("k", "must be in 1..5");
  if (!(cfg.engine_params.penalty_factor > 1.0)) bad("penalty_factor", "must exceed 1");
  if (!(cfg.engine_params.stretch_bound >= 1.0)) bad("stretch_bound", "must be at least 1");
  if (!(cfg.engine_params.theta >= 0.0 && cfg.engine_params.theta <= 1.0)) bad("theta", "must be in [0,1]");
  if (cfg.engines.empty()) bad("engines", "at least one engine is required");
  for (const auto& e : cfg.engines) {
    if (!is_engine_id(e)) bad("engines", "unknown engine '" + e + "'");
  }
  if (cfg.query_ttl_seconds <= 0) bad("query_ttl_hours", "must be positive");
  if (!cfg.boundaries.valid()) bad("length_boundaries", "must be positive and increasing");
}

ServiceConfig load_config(const std::string& path, const EnvLookup& env) {
  ServiceConfig cfg;
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open config '" + path + "'");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::Parse, "config '" + path + "': " + e.what());
    }
    apply_file(cfg, j);
  }
  apply_env(cfg, env);
  validate(cfg);
  return cfg;
}

}  // namespace altroute::service
