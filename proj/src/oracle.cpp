#include "sw2l/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <unordered_map>

namespace sw2l {

namespace {

// Depth-first enumeration of simple (s,t)-paths of length <= cap, pruned by
// the admissible bound len + dist_to_t (distances in the full graph).
// Candidates are visited in ascending-arc-id order; `consume` returns true
// to stop the enumeration.
template <typename Fn>
bool for_each_bounded_path(const Digraph& g, Vertex s, Vertex t, std::int64_t cap,
                           const std::vector<std::int64_t>& dist_to_t, std::int64_t node_budget,
                           Fn&& consume) {
  std::vector<char> on_path(static_cast<size_t>(g.vertex_count()), 0);
  std::vector<Vertex> verts{s};
  std::vector<ArcId> arcs;
  std::int64_t expansions = 0;

  auto rec = [&](auto&& self, Vertex v) -> bool {
    if (++expansions > node_budget)
      throw LimitError("oracle path enumeration exceeded its node budget");
    if (v == t) return consume(verts, arcs);
    on_path[static_cast<size_t>(v)] = 1;
    for (ArcId id : g.out_arcs(v)) {
      Vertex w = g.arc(id).head;
      if (on_path[static_cast<size_t>(w)]) continue;
      std::int64_t onward = dist_to_t[static_cast<size_t>(w)];
      if (!reachable(onward)) continue;
      if (static_cast<std::int64_t>(arcs.size()) + 1 + onward > cap) continue;
      verts.push_back(w);
      arcs.push_back(id);
      bool stop = self(self, w);
      verts.pop_back();
      arcs.pop_back();
      if (stop) {
        on_path[static_cast<size_t>(v)] = 0;
        return true;
      }
    }
    on_path[static_cast<size_t>(v)] = 0;
    return false;
  };
  return rec(rec, s);
}

// First (s,t)-path in the graph minus `banned` arcs, of length <= cap if
// given; BFS tree path, deterministic by arc order.
std::optional<Path> residual_path(const Digraph& g, Vertex s, Vertex t,
                                  const std::vector<char>& banned,
                                  std::optional<std::int64_t> cap) {
  std::vector<ArcId> parent(static_cast<size_t>(g.vertex_count()), -1);
  std::vector<std::int64_t> dist(static_cast<size_t>(g.vertex_count()), kUnreachable);
  std::deque<Vertex> queue;
  dist[static_cast<size_t>(s)] = 0;
  queue.push_back(s);
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    for (ArcId id : g.out_arcs(v)) {
      if (banned[static_cast<size_t>(id)]) continue;
      Vertex w = g.arc(id).head;
      if (reachable(dist[static_cast<size_t>(w)])) continue;
      dist[static_cast<size_t>(w)] = dist[static_cast<size_t>(v)] + 1;
      parent[static_cast<size_t>(w)] = id;
      queue.push_back(w);
    }
  }
  if (!reachable(dist[static_cast<size_t>(t)])) return std::nullopt;
  if (cap && dist[static_cast<size_t>(t)] > *cap) return std::nullopt;
  std::vector<Vertex> verts;
  for (Vertex v = t; v != s; v = g.arc(parent[static_cast<size_t>(v)]).tail) verts.push_back(v);
  verts.push_back(s);
  std::reverse(verts.begin(), verts.end());
  return Path(std::move(verts));
}

}  // namespace

std::optional<std::pair<Path, Path>> brute_force_sw2l(const Digraph& g, const LinkageQuery& q,
                                                      const OracleLimits& limits) {
  if (g.vertex_count() > limits.max_n)
    throw LimitError("brute-force oracle limited to " + std::to_string(limits.max_n) +
                     " vertices, instance has " + std::to_string(g.vertex_count()));
  std::vector<std::int64_t> to_t1 = bfs_dist_to(g, q.t1);
  std::vector<std::int64_t> to_t2 = bfs_dist_to(g, q.t2);
  std::int64_t d1 = bfs_dist_from(g, q.s1)[static_cast<size_t>(q.t1)];
  std::int64_t d2 = bfs_dist_from(g, q.s2)[static_cast<size_t>(q.t2)];
  if (!reachable(d1) || !reachable(d2)) return std::nullopt;

  std::optional<std::pair<Path, Path>> found;
  for_each_bounded_path(
      g, q.s1, q.t1, d1 + q.k1, to_t1, limits.node_budget,
      [&](const std::vector<Vertex>& verts, const std::vector<ArcId>& arcs) {
        std::vector<char> banned(static_cast<size_t>(g.arc_count()), 0);
        for (ArcId id : arcs) banned[static_cast<size_t>(id)] = 1;
        // side 2 is length-bounded too, so enumerate rather than BFS
        std::optional<Path> p2;
        std::vector<char> on1 = banned;
        for_each_bounded_path(g, q.s2, q.t2, d2 + q.k2, to_t2, limits.node_budget,
                              [&](const std::vector<Vertex>& verts2,
                                  const std::vector<ArcId>& arcs2) {
                                for (ArcId id : arcs2)
                                  if (on1[static_cast<size_t>(id)]) return false;
                                p2 = Path(verts2);
                                return true;
                              });
        if (!p2) return false;
        found = {Path(verts), *p2};
        return true;
      });
  return found;
}

std::optional<std::pair<Path, Path>> ssw2l_solve(const Digraph& g, Vertex s1, Vertex t1,
                                                 Vertex s2, Vertex t2, std::int64_t k,
                                                 const OracleLimits& limits) {
  for (Vertex v : {s1, t1, s2, t2})
    if (!g.valid_vertex(v)) throw InputError("ssw2l_solve: vertex out of range");
  std::vector<std::int64_t> to_t1 = bfs_dist_to(g, t1);
  std::int64_t d1 = bfs_dist_from(g, s1)[static_cast<size_t>(t1)];
  if (!reachable(d1)) return std::nullopt;

  std::optional<std::pair<Path, Path>> found;
  for_each_bounded_path(g, s1, t1, d1 + k, to_t1, limits.node_budget,
                        [&](const std::vector<Vertex>& verts, const std::vector<ArcId>& arcs) {
                          std::vector<char> banned(static_cast<size_t>(g.arc_count()), 0);
                          for (ArcId id : arcs) banned[static_cast<size_t>(id)] = 1;
                          auto p2 = residual_path(g, s2, t2, banned, std::nullopt);
                          if (!p2) return false;
                          found = {Path(verts), *p2};
                          return true;
                        });
  return found;
}

namespace {

// Arc-adjacency graph: one vertex per arc of d, plus a source/sink vertex
// per terminal pair. Vertex-disjoint paths there are exactly arc-disjoint
// paths in d.
struct TokenGraph {
  Digraph h;
  std::vector<Vertex> sources, sinks;     // per pair
  std::vector<ArcId> arc_of_vertex;       // h vertex -> d arc, -1 for terminals
  std::vector<int> topo_pos;              // h vertex -> topological position
};

TokenGraph build_token_graph(const Digraph& d, const std::vector<PairRequest>& pairs) {
  TokenGraph tg;
  tg.h = Digraph(d.arc_count());
  tg.arc_of_vertex.assign(static_cast<size_t>(d.arc_count()), -1);
  for (ArcId id = 0; id < d.arc_count(); ++id) tg.arc_of_vertex[static_cast<size_t>(id)] = id;
  for (ArcId a = 0; a < d.arc_count(); ++a)
    for (ArcId b : d.out_arcs(d.arc(a).head)) tg.h.add_arc(a, b);
  for (const PairRequest& pr : pairs) {
    Vertex src = tg.h.add_vertex();
    Vertex snk = tg.h.add_vertex();
    tg.arc_of_vertex.push_back(-1);
    tg.arc_of_vertex.push_back(-1);
    tg.sources.push_back(src);
    tg.sinks.push_back(snk);
    for (ArcId id : d.out_arcs(pr.s)) tg.h.add_arc(src, id);
    for (ArcId id : d.in_arcs(pr.t)) tg.h.add_arc(id, snk);
  }
  auto order = topo_order(tg.h);
  if (!order) throw InternalError("token graph of a DAG must be acyclic");
  tg.topo_pos.assign(static_cast<size_t>(tg.h.vertex_count()), 0);
  for (size_t i = 0; i < order->size(); ++i)
    tg.topo_pos[static_cast<size_t>((*order)[i])] = static_cast<int>(i);
  return tg;
}

struct TokenState {
  std::vector<std::int32_t> data;  // positions, then per-token arc counts
  bool operator==(const TokenState& o) const { return data == o.data; }
};

struct TokenStateHash {
  size_t operator()(const TokenState& s) const {
    size_t h = 1469598103934665603ull;
    for (std::int32_t x : s.data) {
      h ^= static_cast<size_t>(x) + 0x9e3779b9;
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace

std::optional<std::vector<Path>> acyclic_weak_k_linkage(const WeakLinkageInstance& inst,
                                                        const OracleLimits& limits) {
  const Digraph& d = inst.graph;
  if (!is_acyclic(d)) throw InputError("acyclic_weak_k_linkage: input graph is not acyclic");
  if (inst.pairs.empty()) throw InputError("acyclic_weak_k_linkage: no terminal pairs");

  for (const PairRequest& pr : inst.pairs) {
    if (!d.valid_vertex(pr.s) || !d.valid_vertex(pr.t))
      throw InputError("acyclic_weak_k_linkage: terminal out of range");
    if (pr.cap) {
      std::int64_t dist = bfs_dist_from(d, pr.s)[static_cast<size_t>(pr.t)];
      if (!reachable(dist) || *pr.cap < dist)
        throw InputError("acyclic_weak_k_linkage: cap below shortest distance");
    }
  }

  // Pairs with s == t are satisfied by the empty path and do not join the
  // token game.
  std::vector<int> active;  // indices into inst.pairs
  for (size_t i = 0; i < inst.pairs.size(); ++i)
    if (inst.pairs[i].s != inst.pairs[i].t) active.push_back(static_cast<int>(i));

  std::vector<Path> out(inst.pairs.size());
  for (size_t i = 0; i < inst.pairs.size(); ++i)
    out[i] = Path({inst.pairs[i].s});
  if (active.empty()) return out;

  std::vector<PairRequest> pairs;
  for (int i : active) pairs.push_back(inst.pairs[static_cast<size_t>(i)]);
  TokenGraph tg = build_token_graph(d, pairs);
  int k = static_cast<int>(pairs.size());
  bool any_cap = false;
  for (const auto& pr : pairs) any_cap |= pr.cap.has_value();

  auto make_state = [&](const std::vector<Vertex>& posv, const std::vector<std::int32_t>& cnt) {
    TokenState st;
    st.data.reserve(static_cast<size_t>(any_cap ? 2 * k : k));
    for (Vertex v : posv) st.data.push_back(v);
    if (any_cap) st.data.insert(st.data.end(), cnt.begin(), cnt.end());
    return st;
  };

  struct Parent {
    TokenState prev;
    int token;
    Vertex moved_to;
  };
  std::unordered_map<TokenState, Parent, TokenStateHash> parents;
  std::deque<TokenState> frontier;

  std::vector<Vertex> start_pos(tg.sources.begin(), tg.sources.end());
  std::vector<std::int32_t> zero_cnt(static_cast<size_t>(k), 0);
  TokenState start = make_state(start_pos, zero_cnt);
  parents.emplace(start, Parent{start, -1, -1});
  frontier.push_back(start);

  auto positions_of = [&](const TokenState& st) {
    return std::vector<Vertex>(st.data.begin(), st.data.begin() + k);
  };
  auto counts_of = [&](const TokenState& st) {
    std::vector<std::int32_t> c(static_cast<size_t>(k), 0);
    if (any_cap) c.assign(st.data.begin() + k, st.data.end());
    return c;
  };

  std::optional<TokenState> goal;
  while (!frontier.empty() && !goal) {
    TokenState st = frontier.front();
    frontier.pop_front();
    std::vector<Vertex> posv = positions_of(st);
    std::vector<std::int32_t> cnt = counts_of(st);

    // The topologically least token not yet parked at its sink moves; this
    // keeps vertex visits unique across the whole play.
    int mover = -1;
    for (int i = 0; i < k; ++i) {
      if (posv[static_cast<size_t>(i)] == tg.sinks[static_cast<size_t>(i)]) continue;
      if (mover < 0 || tg.topo_pos[static_cast<size_t>(posv[static_cast<size_t>(i)])] <
                           tg.topo_pos[static_cast<size_t>(posv[static_cast<size_t>(mover)])])
        mover = i;
    }
    if (mover < 0) {
      goal = st;
      break;
    }
    Vertex at = posv[static_cast<size_t>(mover)];
    for (ArcId harc : tg.h.out_arcs(at)) {
      Vertex to = tg.h.arc(harc).head;
      // sinks belong to their own token; other tokens may not enter one
      bool is_sink = false;
      for (int i = 0; i < k; ++i)
        if (to == tg.sinks[static_cast<size_t>(i)]) {
          is_sink = true;
          if (i != mover) to = -1;
          break;
        }
      if (to < 0) continue;
      bool occupied = false;
      for (int i = 0; i < k; ++i)
        if (i != mover && posv[static_cast<size_t>(i)] == to) occupied = true;
      if (occupied) continue;
      std::vector<std::int32_t> ncnt = cnt;
      if (!is_sink) {
        // moving onto an arc vertex extends the token's path by one arc
        ++ncnt[static_cast<size_t>(mover)];
        const auto& cap = pairs[static_cast<size_t>(mover)].cap;
        if (cap && ncnt[static_cast<size_t>(mover)] > *cap) continue;
      }
      std::vector<Vertex> nposv = posv;
      nposv[static_cast<size_t>(mover)] = to;
      TokenState nst = make_state(nposv, ncnt);
      if (parents.count(nst)) continue;
      if (static_cast<std::int64_t>(parents.size()) >= limits.state_budget)
        throw LimitError("acyclic linkage state budget exceeded");
      parents.emplace(nst, Parent{st, mover, to});
      bool done = true;
      for (int i = 0; i < k; ++i)
        if (nposv[static_cast<size_t>(i)] != tg.sinks[static_cast<size_t>(i)]) done = false;
      if (done) {
        goal = nst;
        break;
      }
      frontier.push_back(nst);
    }
  }
  if (!goal) return std::nullopt;

  // Rebuild each token's arc sequence from the parent chain.
  std::vector<std::vector<ArcId>> token_arcs(static_cast<size_t>(k));
  TokenState cur = *goal;
  while (true) {
    const Parent& p = parents.at(cur);
    if (p.token < 0) break;
    ArcId darc = tg.arc_of_vertex[static_cast<size_t>(p.moved_to)];
    if (darc >= 0) token_arcs[static_cast<size_t>(p.token)].push_back(darc);
    cur = p.prev;
  }
  for (int i = 0; i < k; ++i) {
    auto& arcs = token_arcs[static_cast<size_t>(i)];
    std::reverse(arcs.begin(), arcs.end());
    std::vector<Vertex> verts{pairs[static_cast<size_t>(i)].s};
    for (ArcId id : arcs) verts.push_back(d.arc(id).head);
    out[static_cast<size_t>(active[static_cast<size_t>(i)])] = Path(std::move(verts));
  }
  return out;
}

std::optional<Assignment> sat_brute_force(int num_vars,
                                          const std::vector<std::vector<int>>& clauses) {
  if (num_vars < 0) throw InputError("negative variable count");
  if (num_vars > 24)
    throw LimitError("sat_brute_force limited to 24 variables, got " + std::to_string(num_vars));
  for (const auto& clause : clauses)
    for (int lit : clause)
      if (lit == 0 || std::abs(lit) > num_vars)
        throw InputError("literal " + std::to_string(lit) + " out of range");

  for (std::uint32_t mask = 0; mask < (1u << num_vars); ++mask) {
    bool ok = true;
    for (const auto& clause : clauses) {
      bool sat = false;
      for (int lit : clause) {
        bool v = (mask >> (std::abs(lit) - 1)) & 1u;
        if ((lit > 0) == v) {
          sat = true;
          break;
        }
      }
      if (!sat) {
        ok = false;
        break;
      }
    }
    if (ok) {
      Assignment a;
      a.value.resize(static_cast<size_t>(num_vars));
      for (int i = 0; i < num_vars; ++i) a.value[static_cast<size_t>(i)] = (mask >> i) & 1u;
      return a;
    }
  }
  return std::nullopt;
}

std::optional<Assignment> sat_brute_force(const CnfFormula& f) {
  std::vector<std::vector<int>> clauses;
  clauses.reserve(f.clauses.size());
  for (const auto& c : f.clauses) clauses.push_back({c[0], c[1], c[2]});
  return sat_brute_force(f.num_vars, clauses);
}

}  // namespace sw2l
