#include "altroute/shortest_path.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <utility>

#include "altroute/error.hpp"

namespace altroute {

std::vector<VertexId> Path::vertices() const {
  std::vector<VertexId> out;
  out.reserve(edges.size() + 1);
  out.push_back(source);
  for (const Edge& e : edges) out.push_back(e.to);
  return out;
}

bool Path::is_simple() const {
  auto vs = vertices();
  std::sort(vs.begin(), vs.end());
  return std::adjacent_find(vs.begin(), vs.end()) == vs.end();
}

bool Path::same_edges(const Path& other) const noexcept {
  if (edges.size() != other.edges.size()) return false;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].id != other.edges[i].id) return false;
  }
  return true;
}

Path make_path(VertexId source, VertexId target, std::vector<Edge> edges) {
  Path p;
  p.source = source;
  p.target = target;
  VertexId at = source;
  for (const Edge& e : edges) {
    if (e.from != at) throw Error(ErrorCode::InvalidInput, "path edges are not contiguous");
    p.travel_time += e.travel_time;
    p.length += e.length;
    at = e.to;
  }
  if (at != target) throw Error(ErrorCode::InvalidInput, "path does not end at its target");
  p.edges = std::move(edges);
  return p;
}

ShortestPathTree build_tree(const RoadNetwork& net, VertexId root, Orientation orientation,
                            std::span<const double> weights) {
  if (!net.has_vertex(root)) {
    throw Error(ErrorCode::UnknownVertex, "root vertex " + std::to_string(root) + " not in network");
  }
  if (!weights.empty() && weights.size() != net.edge_count()) {
    throw Error(ErrorCode::InvalidInput, "weight vector does not match the edge count");
  }
  const std::size_t n = net.vertex_count();
  ShortestPathTree tree;
  tree.net_ = &net;
  tree.root_ = root;
  tree.orientation_ = orientation;
  tree.dist_.assign(n, kUnreachable);
  tree.parent_.assign(n, kInvalidEdge);
  std::vector<bool> settled(n, false);

  auto weight = [&](const Edge& e) { return weights.empty() ? e.travel_time : weights[e.id]; };

  using Item = std::pair<double, VertexId>;  // (dist, vertex): ties pop the smaller id
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  tree.dist_[root] = 0.0;
  heap.emplace(0.0, root);

  auto relax = [&](const Edge& e, VertexId next, double base) {
    if (settled[next]) return;
    const double nd = base + weight(e);
    double& cur = tree.dist_[next];
    if (nd < cur) {
      cur = nd;
      tree.parent_[next] = e.id;
      heap.emplace(nd, next);
    } else if (nd == cur && e.id < tree.parent_[next]) {
      tree.parent_[next] = e.id;
    }
  };

  while (!heap.empty()) {
    const auto [d, v] = heap.top();
    heap.pop();
    if (settled[v] || d > tree.dist_[v]) continue;
    settled[v] = true;
    if (orientation == Orientation::Forward) {
      for (const Edge& e : net.out_edges(v)) relax(e, e.to, d);
    } else {
      for (EdgeId id : net.in_edges(v)) {
        const Edge& e = net.edge(id);
        relax(e, e.from, d);
      }
    }
  }
  return tree;
}

Path ShortestPathTree::path_to(VertexId v) const {
  if (!reachable(v)) {
    throw Error(ErrorCode::NoRoute, "vertex " + std::to_string(v) + " is unreachable in tree");
  }
  std::vector<Edge> edges;
  VertexId at = v;
  while (at != root_) {
    const Edge& e = net_->edge(parent_[at]);
    edges.push_back(e);
    at = orientation_ == Orientation::Forward ? e.from : e.to;
  }
  if (orientation_ == Orientation::Forward) {
    std::reverse(edges.begin(), edges.end());
    return make_path(root_, v, std::move(edges));
  }
  return make_path(v, root_, std::move(edges));
}

Path shortest_path(const RoadNetwork& net, VertexId s, VertexId t,
                   std::span<const double> weights) {
  if (!net.has_vertex(t)) {
    throw Error(ErrorCode::UnknownVertex, "target vertex " + std::to_string(t) + " not in network");
  }
  const ShortestPathTree tree = build_tree(net, s, Orientation::Forward, weights);
  if (!tree.reachable(t)) {
    throw Error(ErrorCode::NoRoute, "no route from " + std::to_string(s) + " to " + std::to_string(t));
  }
  return tree.path_to(t);
}

ViaPath path_from_trees(const ShortestPathTree& tf, const ShortestPathTree& tb, VertexId u) {
  if (tf.orientation() != Orientation::Forward || tb.orientation() != Orientation::Backward ||
      &tf.network() != &tb.network()) {
    throw Error(ErrorCode::MismatchedTrees, "expected a Forward and a Backward tree on one network");
  }
  if (!tf.reachable(u) || !tb.reachable(u)) {
    throw Error(ErrorCode::NoRoute, "via vertex " + std::to_string(u) + " is unreachable");
  }
  Path head = tf.path_to(u);
  Path tail = tb.path_to(u);
  std::vector<Edge> edges = std::move(head.edges);
  edges.insert(edges.end(), tail.edges.begin(), tail.edges.end());
  ViaPath out;
  out.path = make_path(tf.root(), tb.root(), std::move(edges));
  out.simple = out.path.is_simple();
  return out;
}

}  // namespace altroute
