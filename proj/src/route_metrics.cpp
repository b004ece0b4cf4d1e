#include "altroute/route_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_set>

#include "altroute/error.hpp"

namespace altroute {

namespace {

std::uint64_t edge_key(const Edge& e, EdgeIdentity identity) {
  if (identity == EdgeIdentity::Directed) return e.id;
  const auto lo = static_cast<std::uint64_t>(std::min(e.from, e.to));
  const auto hi = static_cast<std::uint64_t>(std::max(e.from, e.to));
  return (lo << 32) | hi;
}

bool close_rel(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

double overlap_length(const Path& x, const Path& y, EdgeIdentity identity) {
  std::unordered_set<std::uint64_t> in_y;
  in_y.reserve(y.edges.size() * 2);
  for (const Edge& e : y.edges) in_y.insert(edge_key(e, identity));
  std::unordered_set<std::uint64_t> counted;
  double total = 0.0;
  for (const Edge& e : x.edges) {
    const auto key = edge_key(e, identity);
    if (in_y.contains(key) && counted.insert(key).second) total += e.length;
  }
  return total;
}

double jaccard(const Path& x, const Path& y, EdgeIdentity identity) {
  if (x.edges.empty() && y.edges.empty()) return 1.0;
  const double overlap = overlap_length(x, y, identity);
  const double uni = x.length + y.length - overlap;
  if (!(uni > 0.0)) return 0.0;
  return std::clamp(overlap / uni, 0.0, 1.0);
}

double dis(const Path& p, std::span<const Path> set, EdgeIdentity identity) {
  double best = 0.0;
  if (set.empty()) return 1.0;
  for (const Path& q : set) best = std::max(best, jaccard(p, q, identity));
  return 1.0 - best;
}

SimilarityReport set_similarity(std::span<const Path> routes, EdgeIdentity identity) {
  if (routes.size() < 2) {
    throw Error(ErrorCode::UndefinedSimilarity, "similarity needs at least two routes");
  }
  const std::size_t n = routes.size();
  SimilarityReport rep;
  rep.pairwise.assign(n, std::vector<double>(n, 1.0));
  rep.sim = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = jaccard(routes[i], routes[j], identity);
      rep.pairwise[i][j] = rep.pairwise[j][i] = v;
      if (v > rep.sim) {
        rep.sim = v;
        rep.argmax_pair = {i, j};
      }
    }
  }
  return rep;
}

void OverlapIndex::add(const Path& route) {
  if (lengths_.size() == 64) throw Error(ErrorCode::InvalidInput, "OverlapIndex holds at most 64 routes");
  const std::uint64_t bit = std::uint64_t{1} << lengths_.size();
  for (const Edge& e : route.edges) member_.at(e.id) |= bit;
  lengths_.push_back(route.length);
}

std::vector<double> OverlapIndex::jaccard_all(const Path& candidate) const {
  const std::size_t k = lengths_.size();
  std::vector<double> overlap(k, 0.0);
  // Sums follow the candidate's edge order, matching overlap_length(candidate, kept).
  std::uint64_t any = 0;
  for (const Edge& e : candidate.edges) any |= member_[e.id];
  if (any != 0) {
    for (std::size_t i = 0; i < k; ++i) {
      if (!(any >> i & 1U)) continue;
      const std::uint64_t bit = std::uint64_t{1} << i;
      double total = 0.0;
      for (const Edge& e : candidate.edges) {
        if (member_[e.id] & bit) total += e.length;
      }
      overlap[i] = total;
    }
  }
  std::vector<double> out(k, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    if (candidate.edges.empty() && lengths_[i] == 0.0) {
      out[i] = 1.0;
      continue;
    }
    const double uni = candidate.length + lengths_[i] - overlap[i];
    out[i] = uni > 0.0 ? std::clamp(overlap[i] / uni, 0.0, 1.0) : 0.0;
  }
  return out;
}

double OverlapIndex::dis(const Path& candidate) const {
  if (lengths_.empty()) return 1.0;
  const auto all = jaccard_all(candidate);
  return 1.0 - *std::max_element(all.begin(), all.end());
}

std::vector<RouteViolation> validate_route(const Path& p, const RoadNetwork& net) {
  std::vector<RouteViolation> out;
  auto report = [&](std::size_t i, std::string msg) { out.push_back({i, std::move(msg)}); };

  if (!net.has_vertex(p.source)) report(0, "source vertex not in network");
  if (!net.has_vertex(p.target)) report(0, "target vertex not in network");

  VertexId at = p.source;
  double tt = 0.0;
  double len = 0.0;
  for (std::size_t i = 0; i < p.edges.size(); ++i) {
    const Edge& e = p.edges[i];
    if (e.from != at) report(i, "edge does not start where the previous one ends");
    if (e.id >= net.edge_count() || !(net.edge(e.id) == e)) {
      report(i, "edge " + std::to_string(e.id) + " does not exist in the network");
    }
    tt += e.travel_time;
    len += e.length;
    at = e.to;
  }
  if (at != p.target) report(p.edges.size(), "path does not end at its target");
  if (!p.is_simple()) report(0, "path repeats a vertex");
  if (!close_rel(tt, p.travel_time, 1e-6)) report(0, "cached travel time disagrees with edge sum");
  if (!close_rel(len, p.length, 1e-6)) report(0, "cached length disagrees with edge sum");
  return out;
}

}  // namespace altroute
