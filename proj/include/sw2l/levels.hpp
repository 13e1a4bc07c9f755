#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "sw2l/digraph.hpp"

namespace sw2l {

/// BFS level decomposition from a source: per-vertex distances, the level
/// sets L^0, L^1, ..., and the set of arcs lying between consecutive levels
/// (exactly the arcs used by some shortest path from the source; they form
/// an acyclic subgraph).
struct LevelDecomposition {
  Vertex source = 0;
  std::vector<std::int64_t> dist;
  std::vector<std::vector<Vertex>> levels;
  std::vector<char> in_shortest;      // indexed by arc id
  std::vector<ArcId> shortest_arcs;   // ascending

  bool is_shortest_arc(ArcId id) const { return in_shortest[static_cast<size_t>(id)] != 0; }
};

LevelDecomposition bfs_levels(const Digraph& g, Vertex source);

// Distance from x to y using only arcs of ld.shortest_arcs; kUnreachable if none.
std::int64_t dag_distance(const Digraph& g, const LevelDecomposition& ld, Vertex x, Vertex y);

// Number of arcs of p that are not shortest arcs of ld.
// Precondition: p is a valid path in g (throws InputError otherwise).
std::int64_t off_dag_arc_count(const Digraph& g, const LevelDecomposition& ld, const Path& p);

/// Memoized per-source rows of dag_distance, for the many lookups the
/// feasibility checks make on one decomposition.
class DagDistanceCache {
 public:
  DagDistanceCache(const Digraph& g, const LevelDecomposition& ld) : g_(g), ld_(ld) {}
  std::int64_t dist(Vertex x, Vertex y);

 private:
  const Digraph& g_;
  const LevelDecomposition& ld_;
  std::map<Vertex, std::vector<std::int64_t>> rows_;
};

}  // namespace sw2l
