#include "sw2l/levels.hpp"

#include <deque>

namespace sw2l {

LevelDecomposition bfs_levels(const Digraph& g, Vertex source) {
  if (!g.valid_vertex(source)) throw InputError("bfs_levels: source out of range");
  LevelDecomposition ld;
  ld.source = source;
  ld.dist = bfs_dist_from(g, source);

  std::int64_t max_dist = 0;
  for (std::int64_t d : ld.dist)
    if (reachable(d) && d > max_dist) max_dist = d;
  ld.levels.assign(static_cast<size_t>(max_dist) + 1, {});
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (reachable(ld.dist[static_cast<size_t>(v)]))
      ld.levels[static_cast<size_t>(ld.dist[static_cast<size_t>(v)])].push_back(v);

  ld.in_shortest.assign(static_cast<size_t>(g.arc_count()), 0);
  for (ArcId id = 0; id < g.arc_count(); ++id) {
    const Arc& a = g.arc(id);
    std::int64_t du = ld.dist[static_cast<size_t>(a.tail)];
    std::int64_t dv = ld.dist[static_cast<size_t>(a.head)];
    if (reachable(du) && dv == du + 1) {
      ld.in_shortest[static_cast<size_t>(id)] = 1;
      ld.shortest_arcs.push_back(id);
    }
  }
  return ld;
}

namespace {

std::vector<std::int64_t> dag_bfs_row(const Digraph& g, const LevelDecomposition& ld, Vertex x) {
  std::vector<std::int64_t> dist(static_cast<size_t>(g.vertex_count()), kUnreachable);
  std::deque<Vertex> queue;
  dist[static_cast<size_t>(x)] = 0;
  queue.push_back(x);
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    for (ArcId id : g.out_arcs(v)) {
      if (!ld.is_shortest_arc(id)) continue;
      Vertex w = g.arc(id).head;
      if (!reachable(dist[static_cast<size_t>(w)])) {
        dist[static_cast<size_t>(w)] = dist[static_cast<size_t>(v)] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

}  // namespace

std::int64_t dag_distance(const Digraph& g, const LevelDecomposition& ld, Vertex x, Vertex y) {
  if (!g.valid_vertex(x) || !g.valid_vertex(y)) throw InputError("dag_distance: vertex out of range");
  if (x == y) return 0;
  return dag_bfs_row(g, ld, x)[static_cast<size_t>(y)];
}

std::int64_t off_dag_arc_count(const Digraph& g, const LevelDecomposition& ld, const Path& p) {
  auto ids = p.arc_ids_in(g);
  if (!ids) throw InputError("off_dag_arc_count: not a path of the host graph");
  std::int64_t count = 0;
  for (ArcId id : *ids)
    if (!ld.is_shortest_arc(id)) ++count;
  return count;
}

std::int64_t DagDistanceCache::dist(Vertex x, Vertex y) {
  auto it = rows_.find(x);
  if (it == rows_.end()) it = rows_.emplace(x, dag_bfs_row(g_, ld_, x)).first;
  return it->second[static_cast<size_t>(y)];
}

}  // namespace sw2l
