// Acceptance gate: prints one PASS/FAIL line per criterion and exits non-zero
// if any criterion fails.

#include <httplib.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "altroute/cli/evaluation.hpp"
#include "altroute/dissimilarity.hpp"
#include "altroute/error.hpp"
#include "altroute/penalty.hpp"
#include "altroute/plateaus.hpp"
#include "altroute/route_metrics.hpp"
#include "altroute/service/http_api.hpp"
#include "altroute/service/query_service.hpp"
#include "altroute/service/rating_store.hpp"
#include "altroute/study/analytics.hpp"
#include "fixtures.hpp"

namespace {

using namespace altroute;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

constexpr double kStretch = 1.4;
constexpr double kStretchSlack = 1e-6;
constexpr double kTheta = 0.5;
constexpr double kPenaltyRel = 1e-9;
constexpr std::size_t kCityQueries = 1000;
constexpr int kCitySize = 110;  // ~12k vertices

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const Outcome& o) {
  std::cout << (o.pass ? "PASS" : "FAIL") << " [" << id << "] " << name << ": " << o.detail << std::endl;
  if (!o.pass) ++failures;
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::vector<EdgeId> ids_of(const Path& p) {
  std::vector<EdgeId> out;
  for (const Edge& e : p.edges) out.push_back(e.id);
  return out;
}

// --- 1 ---------------------------------------------------------------------

Outcome oracle_equivalence() {
  const auto start = Clock::now();
  std::mt19937_64 rng(20240601);
  std::size_t pairs = 0;
  std::size_t mismatches = 0;
  std::vector<RoadNetwork> graphs;
  graphs.push_back(testing::diamond_network());
  for (int g = 0; g < 200; ++g) graphs.push_back(testing::random_small_network(rng, 10, 4, 0.3));
  for (const RoadNetwork& net : graphs) {
    for (VertexId s = 0; s < net.vertex_count(); ++s) {
      for (VertexId t = 0; t < net.vertex_count(); ++t) {
        if (s == t) continue;
        const auto oracle = testing::oracle_shortest(net, s, t);
        ++pairs;
        try {
          const Path p = shortest_path(net, s, t);
          if (!oracle.reachable || p.travel_time != oracle.cost || ids_of(p) != oracle.edges) ++mismatches;
        } catch (const Error& e) {
          if (oracle.reachable || e.code() != ErrorCode::NoRoute) ++mismatches;
        }
      }
    }
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  Outcome o;
  o.pass = mismatches == 0 && secs < 30.0;
  o.detail = std::to_string(graphs.size()) + " graphs, " + std::to_string(pairs) + " (s,t) pairs, " +
             std::to_string(mismatches) + " mismatches, " + fmt("%.2f s", secs) + " (limit 30 s)";
  return o;
}

// --- 2..5: one pass over the mid-size extract -------------------------------

struct CityResults {
  Outcome stretch;
  Outcome dissimilarity;
  Outcome plateau_structure;
  Outcome penalty;
};

CityResults city_checks() {
  testing::CityOptions opts;
  opts.rows = opts.cols = kCitySize;
  opts.seed = 42;
  const RoadNetwork net = testing::synthetic_city(opts);
  const auto queries = cli::sample_queries(net, kCityQueries, 7);

  std::size_t routes_checked = 0;
  std::size_t stretch_violations = 0;
  double worst_stretch = 0.0;

  std::size_t dis_sets = 0;
  std::size_t dis_violations = 0;
  double worst_sim = 0.0;

  std::size_t plateau_edges = 0;
  std::size_t plateau_edge_violations = 0;
  std::size_t longest_mismatch = 0;

  std::size_t penalty_first_mismatch = 0;
  std::size_t penalty_time_mismatch = 0;
  std::size_t pen_route_count = 0;
  std::size_t queries_run = 0;

  for (const auto& q : queries) {
    const VertexId s = snap_to_vertex(q.source, net);
    const VertexId t = snap_to_vertex(q.target, net);
    if (s == t) continue;
    ++queries_run;
    const ShortestPathTree tf = build_tree(net, s, Orientation::Forward);
    const ShortestPathTree tb = build_tree(net, t, Orientation::Backward);
    const double fastest = tf.dist(t);
    const double limit = kStretch * fastest * (1.0 + kStretchSlack);

    const AlternativeSet pl = plateau_routes(net, s, t, {.k = 3, .stretch_bound = kStretch});
    const AlternativeSet ds = dissimilar_routes(net, s, t, {.k = 3, .theta = kTheta, .stretch_bound = kStretch});
    for (const AlternativeSet* set : {&pl, &ds}) {
      for (const Path& p : set->routes) {
        ++routes_checked;
        worst_stretch = std::max(worst_stretch, p.travel_time / fastest);
        if (p.travel_time > limit) ++stretch_violations;
      }
    }

    ++dis_sets;
    bool set_ok = true;
    for (std::size_t i = 0; i < ds.routes.size(); ++i) {
      for (std::size_t j = i + 1; j < ds.routes.size(); ++j) {
        const double jac = jaccard(ds.routes[i], ds.routes[j]);
        worst_sim = std::max(worst_sim, jac);
        set_ok = set_ok && jac < kTheta;
      }
    }
    if (!set_ok) ++dis_violations;

    const auto plateaus = find_plateaus(tf, tb);
    for (const Plateau& p : plateaus) {
      for (const Edge& e : p.edges) {
        ++plateau_edges;
        if (tf.parent_edge(e.to) != e.id || tb.parent_edge(e.from) != e.id) ++plateau_edge_violations;
      }
    }
    if (plateaus.empty() || plateaus.front().vertices != tf.path_to(t).vertices()) ++longest_mismatch;

    const AlternativeSet pen = penalty_routes(net, s, t, {.k = 3, .penalty_factor = 1.4});
    const Path plain = shortest_path(net, s, t);
    if (pen.routes.empty() || !pen.routes.front().same_edges(plain)) ++penalty_first_mismatch;
    for (const Path& p : pen.routes) {
      ++pen_route_count;
      double recomputed = 0.0;
      for (const Edge& e : p.edges) recomputed += net.edge(e.id).travel_time;
      if (std::abs(recomputed - p.travel_time) > kPenaltyRel * std::max(1.0, recomputed)) ++penalty_time_mismatch;
    }
  }

  // Linear growth of the plateau join counter across three network sizes.
  std::vector<std::pair<double, double>> points;  // (|V|, mean ops)
  for (int size : {40, 80, kCitySize}) {
    testing::CityOptions o;
    o.rows = o.cols = size;
    o.seed = 42;
    const RoadNetwork g = size == kCitySize ? RoadNetwork(net) : testing::synthetic_city(o);
    const auto qs = cli::sample_queries(g, 20, 3);
    double total = 0.0;
    for (const auto& q : qs) {
      const ShortestPathTree tf = build_tree(g, snap_to_vertex(q.source, g), Orientation::Forward);
      const ShortestPathTree tb = build_tree(g, snap_to_vertex(q.target, g), Orientation::Backward);
      JoinStats stats;
      find_plateaus(tf, tb, &stats);
      total += static_cast<double>(stats.operations);
    }
    points.emplace_back(static_cast<double>(g.vertex_count()), total / static_cast<double>(qs.size()));
  }
  double num = 0.0;
  double den = 0.0;
  for (auto [v, ops] : points) {
    num += v * ops;
    den += v * v;
  }
  const double slope = num / den;
  bool linear = true;
  std::string ratios;
  for (auto [v, ops] : points) {
    const double ratio = ops / (slope * v);
    linear = linear && ratio >= 0.5 && ratio <= 2.0;
    ratios += (ratios.empty() ? "" : ", ") + std::to_string(static_cast<long>(v)) + "V:" + fmt("%.3f", ratio);
  }

  CityResults r;
  const std::string where = std::to_string(queries_run) + " queries on " + std::to_string(net.vertex_count()) +
                            " vertices";
  r.stretch.pass = stretch_violations == 0 && queries_run >= kCityQueries;
  r.stretch.detail = where + ", " + std::to_string(routes_checked) + " routes, " +
                     std::to_string(stretch_violations) + " violations, worst ratio " + fmt("%.4f", worst_stretch);
  r.dissimilarity.pass = dis_violations == 0 && dis_sets >= kCityQueries;
  r.dissimilarity.detail = where + ", " + std::to_string(dis_violations) + " sets with a pair >= 0.5, max Sim(T) " +
                           fmt("%.3f", worst_sim);
  r.plateau_structure.pass = plateau_edge_violations == 0 && longest_mismatch == 0 && linear;
  r.plateau_structure.detail = where + ", " + std::to_string(plateau_edges) + " plateau edges, " +
                               std::to_string(plateau_edge_violations) + " not in both trees, " +
                               std::to_string(longest_mismatch) + " longest-plateau mismatches; ops/fit " + ratios;
  r.penalty.pass = penalty_first_mismatch == 0 && penalty_time_mismatch == 0 && queries_run >= kCityQueries;
  r.penalty.detail = where + ", " + std::to_string(penalty_first_mismatch) + " first-route mismatches, " +
                     std::to_string(penalty_time_mismatch) + " of " + std::to_string(pen_route_count) +
                     " travel times off by > 1e-9";
  return r;
}

// --- 6 -----------------------------------------------------------------------

double brute_jaccard(const Path& x, const Path& y) {
  std::map<EdgeId, double> a;
  std::map<EdgeId, double> b;
  for (const Edge& e : x.edges) a[e.id] = e.length;
  for (const Edge& e : y.edges) b[e.id] = e.length;
  if (a.empty() && b.empty()) return 1.0;
  double inter = 0.0;
  double uni = 0.0;
  for (const auto& [id, len] : a) {
    uni += len;
    if (b.count(id)) inter += len;
  }
  for (const auto& [id, len] : b) {
    if (!a.count(id)) uni += len;
  }
  return uni > 0.0 ? inter / uni : 0.0;
}

Outcome jaccard_checks() {
  // 2000 m + 3000 m route against 2000 m + 4000 m route sharing the first leg.
  RoadNetworkBuilder b;
  for (int i = 0; i < 4; ++i) b.add_vertex({-37.80 + 0.01 * i, 144.90});
  b.add_edge(0, 1, 2000, 50, RoadClass::Other);
  b.add_edge(1, 2, 3000, 50, RoadClass::Other);
  b.add_edge(1, 3, 4000, 50, RoadClass::Other);
  const RoadNetwork ex = std::move(b).build();
  const Path x = make_path(0, 2, {ex.edge(0), ex.edge(1)});
  const Path y = make_path(0, 3, {ex.edge(0), ex.edge(2)});
  const double j = jaccard(x, y);
  const bool example_ok = std::abs(j - 2.0 / 9.0) <= 1e-12;

  std::mt19937_64 rng(99);
  std::size_t pairs = 0;
  std::size_t bad = 0;
  std::vector<RoadNetwork> nets;
  nets.reserve(20000);
  while (pairs < 10000) {
    nets.push_back(testing::random_small_network(rng, 8, 9, 0.45));
    const RoadNetwork& net = nets.back();
    const VertexId t = static_cast<VertexId>(net.vertex_count() - 1);
    const auto paths = testing::enumerate_simple_paths(net, 0, t);
    if (paths.size() < 2) continue;
    for (int rep = 0; rep < 10 && pairs < 10000; ++rep) {
      auto build = [&](const std::vector<EdgeId>& ids) {
        std::vector<Edge> edges;
        for (EdgeId id : ids) edges.push_back(net.edge(id));
        return make_path(0, t, std::move(edges));
      };
      const Path p = build(paths[rng() % paths.size()]);
      const Path q = build(paths[rng() % paths.size()]);
      ++pairs;
      const double pq = jaccard(p, q);
      const double qp = jaccard(q, p);
      const bool ok = pq >= 0.0 && pq <= 1.0 && std::abs(pq - qp) <= 1e-12 &&
                      std::abs(pq - brute_jaccard(p, q)) <= 1e-12 && jaccard(p, p) == 1.0 &&
                      (pq == 1.0) == p.same_edges(q);
      if (!ok) ++bad;
    }
  }
  Outcome o;
  o.pass = example_ok && bad == 0;
  o.detail = "worked example " + fmt("%.15f", j) + " vs 2/9; " + std::to_string(pairs) +
             " random pairs, " + std::to_string(bad) + " property failures";
  return o;
}

// --- 7 -----------------------------------------------------------------------

Outcome category_checks() {
  using study::LengthCategory;
  const std::pair<double, LengthCategory> cases[] = {{600, LengthCategory::Small},
                                                     {601, LengthCategory::Medium},
                                                     {1500, LengthCategory::Medium},
                                                     {1501, LengthCategory::Long}};
  Outcome o;
  for (const auto& [secs, want] : cases) {
    const auto got = study::categorize(secs);
    const bool ok = got == want;
    o.pass = o.pass && ok;
    o.detail += (o.detail.empty() ? "" : ", ") + std::to_string(static_cast<int>(secs)) + " s -> " +
                (got ? std::string(study::to_string(*got)) : std::string("none"));
  }
  return o;
}

// --- 8 -----------------------------------------------------------------------

std::vector<study::RatingRecord> records_from(const json& scores, const std::vector<std::string>& names) {
  std::vector<study::RatingRecord> out;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    study::RatingRecord r;
    r.response_id = "r" + std::to_string(i);
    r.fastest_time = 600;
    for (std::size_t j = 0; j < names.size(); ++j) r.scores[names[j]] = scores[i][j].get<int>();
    out.push_back(r);
  }
  return out;
}

Outcome anova_checks() {
  std::ifstream in(std::string(ALTROUTE_TEST_DATA_DIR) + "/anova_golden.json");
  const json g = json::parse(in);
  const auto names = g["approaches"].get<std::vector<std::string>>();

  const json flat = json::array({{3, 3, 3, 3}, {4, 4, 4, 4}, {2, 2, 2, 2}});
  const auto zero = study::rm_anova(records_from(flat, names));
  const bool zero_ok = zero.f == 0.0 && zero.p == 1.0;

  const auto res = study::rm_anova(records_from(g["scores"], names));
  const double f_ref = g["F"].get<double>();
  const double p_ref = g["p"].get<double>();
  const double f_rel = std::abs(res.f - f_ref) / f_ref;
  const double p_rel = std::abs(res.p - p_ref) / p_ref;
  const bool golden_ok = f_rel <= 1e-6 && p_rel <= 1e-6 && res.df_between == g["df_between"].get<int>() &&
                         res.df_error == g["df_error"].get<int>();

  json shifted = g["scores"];
  const int shifts[] = {0, 1, 0, 1, 0};  // keeps all scores within 1..5
  for (std::size_t i = 0; i < shifted.size(); ++i) {
    for (auto& v : shifted[i]) v = v.get<int>() + shifts[i];
  }
  const auto sh = study::rm_anova(records_from(shifted, names));
  const double shift_rel = std::abs(sh.f - res.f) / res.f;
  const bool shift_ok = shift_rel <= 1e-9;

  Outcome o;
  o.pass = zero_ok && golden_ok && shift_ok;
  o.detail = "identical scores F=" + fmt("%g", zero.f) + " p=" + fmt("%g", zero.p) + "; golden F(" +
             std::to_string(res.df_between) + "," + std::to_string(res.df_error) + ")=" + fmt("%.9f", res.f) +
             " rel.err " + fmt("%.1e", f_rel) + ", p=" + fmt("%.9f", res.p) + " rel.err " + fmt("%.1e", p_rel) +
             "; shifted F rel.err " + fmt("%.1e", shift_rel);
  return o;
}

// --- 9 -----------------------------------------------------------------------

Outcome service_contract() {
  auto load = [](const std::string& name) {
    std::ifstream in(std::string(ALTROUTE_TEST_DATA_DIR) + "/golden/" + name);
    return json::parse(in);
  };
  const json routes_golden = load("routes_diamond.json");
  const json ratings_golden = load("ratings_diamond.json");

  const RoadNetwork net = testing::diamond_network(60.0);
  service::RatingStore store;
  service::ServiceConfig cfg;
  cfg.city = "testville";
  cfg.rating_store_path.clear();
  service::QueryService qs(net, cfg, store, nullptr, [] { return std::int64_t{1700000000}; });
  service::HttpApi api(qs);

  httplib::Server server;
  api.install(server);
  const int port = server.bind_to_any_port("127.0.0.1");
  std::thread th([&] { server.listen_after_bind(); });
  server.wait_until_ready();
  httplib::Client client("127.0.0.1", port);

  std::vector<std::string> problems;
  auto routes = client.Post("/api/routes", routes_golden["request"].dump(), "application/json");
  if (!routes || routes->status != 200 || json::parse(routes->body) != routes_golden["response"]) {
    problems.push_back("/api/routes differs from golden");
  }
  const char* engine_names[] = {"penalty", "plateaus", "dissimilarity", "external"};
  for (const char* name : engine_names) {
    if (routes && routes->body.find(name) != std::string::npos) problems.push_back(std::string("payload leaks ") + name);
  }
  auto rating = client.Post("/api/ratings", ratings_golden["request"].dump(), "application/json");
  if (!rating || rating->status != 200 || json::parse(rating->body) != ratings_golden["response"]) {
    problems.push_back("/api/ratings differs from golden");
  }
  const auto stored = store.find_rating("q000001");
  const auto query = store.find_query("q000001");
  if (!stored || !query) {
    problems.push_back("rating or query not stored");
  } else {
    const auto& scores = ratings_golden["request"]["scores"];
    for (const auto& [label, engine] : query->labels) {
      if (stored->scores.at(engine) != scores.at(label).get<int>()) problems.push_back("label " + label + " mis-joined");
    }
    if (stored->scores != ratings_golden["stored"]["scores"].get<std::map<std::string, int>>()) {
      problems.push_back("stored scores differ from golden");
    }
  }
  server.stop();
  th.join();

  Outcome o;
  o.pass = problems.empty();
  if (o.pass) {
    o.detail = "routes and ratings match golden files over HTTP, no engine names in payload, label join restored";
  } else {
    for (const auto& p : problems) o.detail += (o.detail.empty() ? "" : "; ") + p;
  }
  return o;
}

Outcome guarded(const std::function<Outcome()>& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    return {false, std::string("exception: ") + e.what()};
  }
}

}  // namespace

int main() {
  report(1, "shortest path matches exhaustive oracle", guarded(oracle_equivalence));
  CityResults city;
  try {
    city = city_checks();
  } catch (const std::exception& e) {
    const Outcome bad{false, std::string("exception: ") + e.what()};
    city = {bad, bad, bad, bad};
  }
  report(2, "stretch bound on plateaus and dissimilarity routes", city.stretch);
  report(3, "dissimilarity sets have pairwise jaccard below theta", city.dissimilarity);
  report(4, "plateau structure and linear join", city.plateau_structure);
  report(5, "penalty first route and original-weight travel times", city.penalty);
  report(6, "route-set similarity arithmetic and properties", guarded(jaccard_checks));
  report(7, "length category boundaries", guarded(category_checks));
  report(8, "repeated-measures ANOVA", guarded(anova_checks));
  report(9, "service HTTP contract", guarded(service_contract));
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
