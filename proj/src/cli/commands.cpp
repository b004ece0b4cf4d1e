#include "altroute/cli/commands.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "altroute/cli/evaluation.hpp"
#include "altroute/engines.hpp"
#include "altroute/error.hpp"
#include "altroute/network_io.hpp"
#include "altroute/osm_extract.hpp"
#include "altroute/service/rating_store.hpp"
#include "altroute/study/analytics.hpp"

namespace altroute::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> split_numbers(const std::string& s, std::size_t expected, const char* what) {
  std::vector<double> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw UsageError("");
    } catch (const std::exception&) {
      throw UsageError(std::string("bad ") + what + " '" + s + "'");
    }
  }
  if (out.size() != expected) throw UsageError(std::string("bad ") + what + " '" + s + "'");
  return out;
}

GeoPoint point_arg(const std::string& s) {
  const auto v = split_numbers(s, 2, "coordinate");
  GeoPoint p{v[0], v[1]};
  if (!p.valid()) throw UsageError("coordinate out of range '" + s + "'");
  return p;
}

struct EngineFlags {
  double penalty_factor = 1.4;
  double stretch = 1.4;
  double theta = 0.5;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--penalty-factor", penalty_factor, "Penalty multiplier per reuse")->capture_default_str();
    cmd->add_option("--stretch", stretch, "Stretch bound for plateaus and dissimilarity")->capture_default_str();
    cmd->add_option("--theta", theta, "Dissimilarity threshold")->capture_default_str();
  }

  EngineParams params() const {
    if (!(penalty_factor > 1.0)) throw UsageError("--penalty-factor must exceed 1");
    if (!(stretch >= 1.0)) throw UsageError("--stretch must be at least 1");
    if (!(theta >= 0.0 && theta <= 1.0)) throw UsageError("--theta must be in [0,1]");
    return {.penalty_factor = penalty_factor, .stretch_bound = stretch, .theta = theta};
  }
};

void check_k(std::size_t k) {
  if (k < 1 || k > 64) throw UsageError("--k must be in 1..64");
}

// --- extract ---

struct ExtractArgs {
  std::string input;
  std::string rect;
  std::string output;
};

int cmd_extract(const ExtractArgs& a, std::ostream& out) {
  const auto r = split_numbers(a.rect, 4, "rectangle");
  const BoundingRect rect{{r[0], r[1]}, {r[2], r[3]}};
  if (!rect.valid()) throw UsageError("rectangle must be min_lat,min_lon,max_lat,max_lon");
  const RoadNetwork net = parse_extract_file(a.input, rect);
  save_network(net, a.output);
  out << "wrote " << net.vertex_count() << " vertices and " << net.edge_count() << " edges to " << a.output
      << "\n";
  return kExitOk;
}

// --- route ---

struct RouteArgs {
  std::string net;
  std::string source;
  std::string target;
  std::string engine = "plateaus";
  std::size_t k = 3;
  EngineFlags flags;
};

int cmd_route(const RouteArgs& a, std::ostream& out) {
  check_k(a.k);
  std::vector<std::string> engines;
  if (a.engine == "all") {
    for (auto e : kEngineIds) engines.emplace_back(e);
  } else if (is_engine_id(a.engine)) {
    engines.push_back(a.engine);
  } else {
    throw UsageError("unknown engine '" + a.engine + "'");
  }
  const EngineParams params = a.flags.params();
  const GeoPoint sp = point_arg(a.source);
  const GeoPoint tp = point_arg(a.target);
  const RoadNetwork net = load_network(a.net);
  for (const GeoPoint& p : {sp, tp}) {
    if (!net.rect().contains(p)) throw Error(ErrorCode::OutOfArea, "point outside the network rectangle");
  }
  const VertexId s = snap_to_vertex(sp, net);
  const VertexId t = snap_to_vertex(tp, net);

  using nlohmann::json;
  json features = json::array();
  for (const auto& engine : engines) {
    const AlternativeSet set = run_engine(engine, net, s, t, a.k, params);
    for (std::size_t i = 0; i < set.routes.size(); ++i) {
      const Path& p = set.routes[i];
      json coords = json::array();
      for (VertexId v : p.vertices()) coords.push_back(json::array({net.vertex(v).lon, net.vertex(v).lat}));
      features.push_back({{"type", "Feature"},
                          {"geometry", {{"type", "LineString"}, {"coordinates", coords}}},
                          {"properties",
                           {{"engine", engine},
                            {"rank", i},
                            {"travel_time", p.travel_time},
                            {"length_m", p.length},
                            {"minutes", static_cast<int>(std::floor(p.travel_time / 60.0 + 0.5))}}}});
    }
  }
  out << json{{"type", "FeatureCollection"}, {"features", features}}.dump(2) << "\n";
  return kExitOk;
}

// --- eval ---

struct EvalArgs {
  std::string net;
  std::string queries;
  std::size_t sample = 0;
  std::uint64_t seed = 1;
  std::size_t k = 3;
  std::string json_out;
  unsigned jobs = 1;
  EngineFlags flags;
};

int cmd_eval(const EvalArgs& a, std::ostream& out) {
  check_k(a.k);
  if (a.queries.empty() == (a.sample == 0)) throw UsageError("give exactly one of --queries or --sample");
  const EngineParams params = a.flags.params();
  std::vector<EvalQuery> queries;
  if (!a.queries.empty()) {
    std::ifstream in(a.queries);
    if (!in) throw UsageError("cannot open query file '" + a.queries + "'");
    queries = parse_query_file(in);
    if (queries.empty()) throw UsageError("query file '" + a.queries + "' has no queries");
  }
  const RoadNetwork net = load_network(a.net);
  if (a.sample > 0) queries = sample_queries(net, a.sample, a.seed);
  const EvalReport report = evaluate(net, queries, a.k, params, {}, std::max(1u, a.jobs));
  out << format_table(report);
  if (!a.json_out.empty()) {
    std::ofstream js(a.json_out);
    if (!js) throw Error(ErrorCode::Io, "cannot write '" + a.json_out + "'");
    js << to_json(report).dump(2) << "\n";
  }
  return kExitOk;
}

// --- stats ---

struct StatsArgs {
  std::string db;
  std::string city;
  bool residents_only = false;
  bool non_residents_only = false;
  std::string category;
  bool anova = false;
};

int cmd_stats(const StatsArgs& a, std::ostream& out) {
  study::CohortFilter filter;
  if (!a.city.empty()) filter.city = a.city;
  if (a.residents_only && a.non_residents_only) {
    throw UsageError("--residents-only and --non-residents-only exclude each other");
  }
  if (a.residents_only) filter.resident = true;
  if (a.non_residents_only) filter.resident = false;
  if (!a.category.empty()) {
    filter.category = study::parse_length_category(a.category);
    if (!filter.category) throw UsageError("--category must be small, medium or long");
  }
  const service::RatingStore store(a.db, 0, service::RatingStore::Mode::ReadOnly);
  const auto records = store.ratings();
  const auto row = study::aggregate(records, filter);

  char buf[96];
  out << "cohort: " << row.cohort << " (" << row.count << " responses)\n";
  std::snprintf(buf, sizeof buf, "%-16s %s\n", "approach", "AVG (sd)");
  out << buf;
  for (const auto& s : row.approaches) {
    std::snprintf(buf, sizeof buf, "%-16s %.2f (%.2f)%s\n", s.approach.c_str(), s.mean, s.sd,
                  s.sd_defined ? "" : " [n=1]");
    out << buf;
  }
  if (a.anova) {
    std::vector<study::RatingRecord> kept;
    for (const auto& r : records) {
      if (filter.matches(r)) kept.push_back(r);
    }
    const auto res = study::rm_anova(kept);
    if (res.infinite_f) {
      std::snprintf(buf, sizeof buf, "F(%d,%d) = inf, p = 0\n", res.df_between, res.df_error);
    } else {
      std::snprintf(buf, sizeof buf, "F(%d,%d) = %.3f, p = %.3g\n", res.df_between, res.df_error, res.f, res.p);
    }
    out << buf;
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Alternative route planning tools", "altroute"};
  app.require_subcommand(1);

  ExtractArgs ex;
  auto* extract = app.add_subcommand("extract", "Build a network file from an OSM XML extract");
  extract->add_option("--input", ex.input, "OSM XML (or network) file")->required();
  extract->add_option("--rect", ex.rect, "min_lat,min_lon,max_lat,max_lon")->required();
  extract->add_option("--output", ex.output, "Network file to write")->required();

  RouteArgs ro;
  auto* route = app.add_subcommand("route", "Print alternative routes as GeoJSON");
  route->add_option("--net", ro.net, "Network file")->required();
  route->add_option("--source", ro.source, "lat,lon")->required();
  route->add_option("--target", ro.target, "lat,lon")->required();
  route->add_option("--engine", ro.engine, "penalty | plateaus | dissimilarity | all")->capture_default_str();
  route->add_option("--k", ro.k, "Routes per engine")->capture_default_str();
  ro.flags.add_to(route);

  EvalArgs ev;
  auto* eval = app.add_subcommand("eval", "Route-set similarity report per engine and length category");
  eval->add_option("--net", ev.net, "Network file")->required();
  eval->add_option("--queries", ev.queries, "Query file, one 'lat,lon lat,lon' per line");
  eval->add_option("--sample", ev.sample, "Sample this many queries instead");
  eval->add_option("--seed", ev.seed, "Sampler seed")->capture_default_str();
  eval->add_option("--k", ev.k, "Routes per engine")->capture_default_str();
  eval->add_option("--json", ev.json_out, "Also write the report as JSON");
  eval->add_option("--jobs", ev.jobs, "Worker threads")->capture_default_str();
  ev.flags.add_to(eval);

  StatsArgs st;
  auto* stats = app.add_subcommand("stats", "Rating aggregates and repeated-measures ANOVA");
  stats->add_option("--db", st.db, "Rating store file")->required();
  stats->add_option("--city", st.city, "Only this city");
  stats->add_flag("--residents-only", st.residents_only, "Only residents");
  stats->add_flag("--non-residents-only", st.non_residents_only, "Only non-residents");
  stats->add_option("--category", st.category, "small | medium | long");
  stats->add_flag("--anova", st.anova, "Append F(df1,df2) and p");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*extract) return cmd_extract(ex, out);
    if (*route) return cmd_route(ro, out);
    if (*eval) return cmd_eval(ev, out);
    if (*stats) return cmd_stats(st, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace altroute::cli
