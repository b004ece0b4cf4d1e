#include "altroute/cli/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <random>
#include <sstream>
#include <thread>

#include "altroute/error.hpp"
#include "altroute/route_metrics.hpp"

namespace altroute::cli {

namespace {

std::optional<GeoPoint> parse_point(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) return std::nullopt;
  try {
    std::size_t a = 0;
    std::size_t b = 0;
    const std::string lat = s.substr(0, comma);
    const std::string lon = s.substr(comma + 1);
    GeoPoint p{std::stod(lat, &a), std::stod(lon, &b)};
    if (a != lat.size() || b != lon.size() || !p.valid()) return std::nullopt;
    return p;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace

std::vector<EvalQuery> parse_query_file(std::istream& in) {
  std::vector<EvalQuery> out;
  std::string line;
  for (std::size_t no = 1; std::getline(in, line); ++no) {
    std::istringstream fields(line);
    std::string a;
    std::string b;
    std::string extra;
    if (!(fields >> a)) continue;
    if (a.front() == '#') continue;
    fields >> b;
    auto s = parse_point(a);
    auto t = parse_point(b);
    if (!s || !t || (fields >> extra)) {
      throw Error(ErrorCode::Parse, "query file line " + std::to_string(no) + ": expected 'lat,lon lat,lon'");
    }
    out.push_back({*s, *t});
  }
  return out;
}

std::vector<EvalQuery> sample_queries(const RoadNetwork& net, std::size_t count, std::uint64_t seed,
                                      const study::LengthBoundaries& boundaries) {
  if (net.vertex_count() < 2) throw Error(ErrorCode::EmptyNetwork, "network too small to sample queries");
  std::mt19937_64 rng(seed);
  const auto n = static_cast<std::uint64_t>(net.vertex_count());

  std::array<std::size_t, 3> have{};
  std::array<bool, 3> seen{};
  const std::size_t attempts_limit = 100 + 50 * count;
  std::vector<EvalQuery> out;
  for (std::size_t attempt = 0; out.size() < count && attempt < attempts_limit; ++attempt) {
    const auto s = static_cast<VertexId>(rng() % n);
    const ShortestPathTree tree = build_tree(net, s, Orientation::Forward);
    std::array<std::vector<VertexId>, 3> bucket;
    for (VertexId v = 0; v < n; ++v) {
      if (v == s || !tree.reachable(v)) continue;
      if (auto c = study::categorize(tree.dist(v), boundaries)) bucket[static_cast<int>(*c)].push_back(v);
    }
    for (int c = 0; c < 3; ++c) seen[c] = seen[c] || !bucket[c].empty();
    // The most under-filled category goes next. Categories no source has
    // reached in the first 30 draws are taken to be absent from the network.
    int want = -1;
    for (int c = 0; c < 3; ++c) {
      if (attempt >= 30 && !seen[c]) continue;
      if (want < 0 || have[c] < have[want]) want = c;
    }
    if (want < 0 || bucket[want].empty()) continue;
    const VertexId t = bucket[want][rng() % bucket[want].size()];
    out.push_back({net.vertex(s), net.vertex(t)});
    ++have[want];
  }
  return out;
}

namespace {

struct QueryOutcome {
  bool skipped = false;
  std::string row;
  std::vector<std::optional<double>> sim;  // per engine; nullopt: excluded
  std::vector<bool> failed;
};

QueryOutcome run_query(const RoadNetwork& net, const EvalQuery& q, std::size_t k, const EngineParams& params,
                       const study::LengthBoundaries& boundaries) {
  QueryOutcome out;
  out.sim.assign(kEngineIds.size(), std::nullopt);
  out.failed.assign(kEngineIds.size(), false);
  const VertexId s = snap_to_vertex(q.source, net);
  const VertexId t = snap_to_vertex(q.target, net);
  double fastest = 0.0;
  try {
    if (s == t) throw Error(ErrorCode::SameEndpoints, "degenerate query");
    fastest = shortest_path(net, s, t).travel_time;
  } catch (const Error&) {
    out.skipped = true;
    return out;
  }
  const auto cat = study::categorize(fastest, boundaries);
  out.row = cat ? std::string(study::to_string(*cat)) : std::string();
  for (std::size_t i = 0; i < kEngineIds.size(); ++i) {
    try {
      const AlternativeSet set = run_engine(kEngineIds[i], net, s, t, k, params);
      if (set.routes.size() != k) continue;
      out.sim[i] = k >= 2 ? set_similarity(set.routes).sim : 0.0;
    } catch (const Error&) {
      out.failed[i] = true;
    }
  }
  return out;
}

SimStats summarize(const std::vector<double>& xs) {
  SimStats s;
  s.n = xs.size();
  if (xs.empty()) return s;
  double sum = 0.0;
  for (double x : xs) sum += x;
  s.avg = sum / static_cast<double>(xs.size());
  s.max = *std::max_element(xs.begin(), xs.end());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - s.avg) * (x - s.avg);
    s.sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return s;
}

}  // namespace

EvalReport evaluate(const RoadNetwork& net, const std::vector<EvalQuery>& queries, std::size_t k,
                    const EngineParams& params, const study::LengthBoundaries& boundaries, unsigned jobs) {
  if (k < 1) throw Error(ErrorCode::InvalidInput, "k must be at least 1");
  std::vector<QueryOutcome> outcomes(queries.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < queries.size(); i = next++) {
      outcomes[i] = run_query(net, queries[i], k, params, boundaries);
    }
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(1, queries.size()))));
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  EvalReport report;
  report.k = k;
  report.queries = queries.size();
  std::vector<std::map<std::string, std::vector<double>>> values(kEngineIds.size());
  for (auto& e : kEngineIds) report.engines.push_back({std::string(e), {}, 0, 0});
  for (const auto& o : outcomes) {
    if (o.skipped) {
      ++report.skipped;
      continue;
    }
    ++report.queries_per_row["all"];
    if (!o.row.empty()) ++report.queries_per_row[o.row];
    for (std::size_t i = 0; i < kEngineIds.size(); ++i) {
      if (o.failed[i]) {
        ++report.engines[i].failed;
      } else if (!o.sim[i]) {
        ++report.engines[i].excluded;
      } else {
        values[i]["all"].push_back(*o.sim[i]);
        if (!o.row.empty()) values[i][o.row].push_back(*o.sim[i]);
      }
    }
  }
  for (std::size_t i = 0; i < kEngineIds.size(); ++i) {
    for (const char* row : kEvalRows) report.engines[i].rows[row] = summarize(values[i][row]);
  }
  return report;
}

std::string format_table(const EvalReport& report) {
  std::ostringstream out;
  out << "Sim(T) over queries with exactly " << report.k << " routes, shown as AVG (sd) MAX\n";
  out << std::left << std::setw(8) << "";
  for (const auto& e : report.engines) out << " | " << std::setw(20) << e.engine;
  out << " | queries\n";
  char cell[64];
  for (const char* row : kEvalRows) {
    out << std::setw(8) << row;
    for (const auto& e : report.engines) {
      const SimStats& s = e.rows.at(row);
      if (s.n == 0) {
        std::snprintf(cell, sizeof cell, "-");
      } else {
        std::snprintf(cell, sizeof cell, "%.3f (%.2f) %.3f", s.avg, s.sd, s.max);
      }
      out << " | " << std::setw(20) << cell;
    }
    const auto it = report.queries_per_row.find(row);
    out << " | " << (it == report.queries_per_row.end() ? 0 : it->second) << "\n";
  }
  out << "excluded (fewer than " << report.k << " routes):";
  for (const auto& e : report.engines) out << " " << e.engine << "=" << e.excluded;
  out << "\nengine errors:";
  for (const auto& e : report.engines) out << " " << e.engine << "=" << e.failed;
  out << "\nskipped queries (no route or same endpoints): " << report.skipped << "\n";
  return out.str();
}

nlohmann::json to_json(const EvalReport& report) {
  using nlohmann::json;
  json engines = json::array();
  for (const auto& e : report.engines) {
    json rows = json::object();
    for (const auto& [name, s] : e.rows) {
      rows[name] = {{"n", s.n}, {"avg", s.avg}, {"sd", s.sd}, {"max", s.max}};
    }
    engines.push_back({{"engine", e.engine}, {"excluded", e.excluded}, {"failed", e.failed}, {"rows", rows}});
  }
  return {{"k", report.k},
          {"queries", report.queries},
          {"skipped", report.skipped},
          {"queries_per_row", report.queries_per_row},
          {"engines", engines}};
}

}  // namespace altroute::cli
