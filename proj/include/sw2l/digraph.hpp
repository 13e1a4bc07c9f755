#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sw2l/errors.hpp"

namespace sw2l {

using Vertex = int;
using ArcId = int;

// Distance sentinel for "no path". Kept as a dedicated value so that
// feasibility arithmetic never silently overflows a large stand-in.
inline constexpr std::int64_t kUnreachable = -1;

inline constexpr bool reachable(std::int64_t d) { return d >= 0; }

struct Arc {
  Vertex tail;
  Vertex head;
};

/// Simple digraph: no self-loops, no parallel arcs. Arc ids are a contiguous
/// range 0..m-1 in insertion order and stay stable for the object's lifetime.
class Digraph {
 public:
  Digraph() = default;
  explicit Digraph(int n);

  Vertex add_vertex();
  ArcId add_arc(Vertex tail, Vertex head);  // throws GraphError on violation

  int vertex_count() const { return n_; }
  int arc_count() const { return static_cast<int>(arcs_.size()); }

  const Arc& arc(ArcId id) const { return arcs_[static_cast<size_t>(id)]; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  const std::vector<ArcId>& out_arcs(Vertex v) const { return out_[static_cast<size_t>(v)]; }
  const std::vector<ArcId>& in_arcs(Vertex v) const { return in_[static_cast<size_t>(v)]; }
  std::optional<ArcId> find_arc(Vertex tail, Vertex head) const;

  bool valid_vertex(Vertex v) const { return v >= 0 && v < n_; }

  // Optional per-vertex text labels (role names for gadget graphs).
  // Not part of the instance file format.
  const std::string& label(Vertex v) const;
  void set_label(Vertex v, std::string text);

 private:
  static std::int64_t pair_key(Vertex t, Vertex h) {
    return (static_cast<std::int64_t>(t) << 32) | static_cast<std::uint32_t>(h);
  }

  int n_ = 0;
  std::vector<Arc> arcs_;
  std::vector<std::vector<ArcId>> out_;
  std::vector<std::vector<ArcId>> in_;
  std::unordered_map<std::int64_t, ArcId> index_;
  std::vector<std::string> labels_;
};

/// A directed path stored as its vertex sequence. A single vertex is the
/// empty path (zero arcs). Default-constructed paths are invalid.
struct Path {
  std::vector<Vertex> verts;

  Path() = default;
  explicit Path(std::vector<Vertex> v) : verts(std::move(v)) {}

  std::int64_t length() const { return static_cast<std::int64_t>(verts.size()) - 1; }
  Vertex source() const { return verts.front(); }
  Vertex target() const { return verts.back(); }

  // Arc ids of consecutive vertex pairs; nullopt if some pair is not an arc.
  std::optional<std::vector<ArcId>> arc_ids_in(const Digraph& g) const;
  bool vertex_simple() const;

  bool operator==(const Path& other) const { return verts == other.verts; }
};

struct LinkageQuery {
  Vertex s1, t1, s2, t2;
  std::int64_t k1, k2;
};

struct Instance {
  Digraph graph;
  std::optional<LinkageQuery> query;
};

// Instance file format (UTF-8, line oriented, `#` starts a comment line):
//   p dilink <n> <m>
//   a <tail> <head>                 (m lines, vertices 1-indexed)
//   q <s1> <t1> <s2> <t2> <k1> <k2> (optional)
Instance parse_instance(std::string_view text);
std::string serialize_instance(const Digraph& g, const std::optional<LinkageQuery>& query);

struct Certificate {
  bool yes = false;
  Path p1, p2;
};

// Certificate file format: `s YES` followed by `p1 <v0> <v1> ...` and
// `p2 <v0> <v1> ...`, or a single `s NO` line. Vertices 1-indexed.
Certificate parse_certificate(std::string_view text, const Digraph& g);
std::string serialize_certificate(const Certificate& cert);

// Arc-count BFS distances from / to a vertex (kUnreachable where none).
std::vector<std::int64_t> bfs_dist_from(const Digraph& g, Vertex source);
std::vector<std::int64_t> bfs_dist_to(const Digraph& g, Vertex sink);

// Smallest-index-first topological order; nullopt when the graph is cyclic.
std::optional<std::vector<Vertex>> topo_order(const Digraph& g);
bool is_acyclic(const Digraph& g);

}  // namespace sw2l
