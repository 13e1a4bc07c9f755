#include "sw2l/solver.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <deque>
#include <exception>
#include <mutex>
#include <thread>
#include <unordered_map>
#include <unordered_set>

namespace sw2l {

namespace {

// Chained in-DAG distance sum through the sequence's endpoints, or
// kUnreachable when some hop has no in-DAG path.
std::int64_t side_chain_sum(const Digraph& g, DagDistanceCache& cache, Vertex s, Vertex t,
                            const std::vector<ArcId>& arcs) {
  Vertex cur = s;
  std::int64_t total = 0;
  for (ArcId id : arcs) {
    std::int64_t hop = cache.dist(cur, g.arc(id).tail);
    if (!reachable(hop)) return kUnreachable;
    total += hop + 1;
    cur = g.arc(id).head;
  }
  std::int64_t last = cache.dist(cur, t);
  if (!reachable(last)) return kUnreachable;
  return total + last;
}

}  // namespace

bool feasibility_check(const Digraph& g, const ExceptionSequence& e1, const ExceptionSequence& e2,
                       const LevelDecomposition& ld1, const LevelDecomposition& ld2,
                       const LinkageQuery& q) {
  DagDistanceCache c1(g, ld1), c2(g, ld2);
  std::int64_t d1 = ld1.dist[static_cast<size_t>(q.t1)];
  std::int64_t d2 = ld2.dist[static_cast<size_t>(q.t2)];
  if (!reachable(d1) || !reachable(d2)) return false;
  std::int64_t sum1 = side_chain_sum(g, c1, q.s1, q.t1, e1.arcs);
  if (!reachable(sum1) || sum1 > d1 + q.k1) return false;
  std::int64_t sum2 = side_chain_sum(g, c2, q.s2, q.t2, e2.arcs);
  return reachable(sum2) && sum2 <= d2 + q.k2;
}

void ExceptionPairEnumerator::build_side(const Digraph& g, Vertex s, Vertex t, std::int64_t k,
                                         const LevelDecomposition& ld, int side) {
  SideList& list = side_[side - 1];
  list.index_by_len.assign(static_cast<size_t>(k) + 1, {});

  std::int64_t d = ld.dist[static_cast<size_t>(t)];
  if (!reachable(d)) return;  // no sequence can be feasible
  std::int64_t budget = d + k;
  DagDistanceCache cache(g, ld);

  // Candidate exception arcs: outside the shortest-arc set, tail reachable
  // from s (a finite chain prefix forces that).
  std::vector<ArcId> candidates;
  for (ArcId id = 0; id < g.arc_count(); ++id)
    if (!ld.is_shortest_arc(id) && reachable(ld.dist[static_cast<size_t>(g.arc(id).tail)]))
      candidates.push_back(id);

  constexpr size_t kSideListGuard = 5000000;

  // Preorder DFS over tuples of distinct candidate arcs = global lex order.
  // `partial` is the chain sum up to the last head, a monotone lower bound
  // on any extension's chain, so branches with partial > budget are dead.
  std::vector<ArcId> tuple;
  auto emit_and_descend = [&](auto&& self, Vertex last, std::int64_t partial) -> void {
    std::int64_t tail_to_t = cache.dist(last, t);
    if (reachable(tail_to_t) && partial + tail_to_t <= budget) {
      ExceptionSequence seq;
      seq.side = side;
      seq.arcs = tuple;
      seq.slack_used = partial + tail_to_t - d;
      if (list.seqs.size() >= kSideListGuard)
        throw LimitError("exception sequence list exceeds guard; use a candidate limit");
      list.index_by_len[tuple.size()].push_back(static_cast<int>(list.seqs.size()));
      list.seqs.push_back(std::move(seq));
    }
    if (static_cast<std::int64_t>(tuple.size()) == k) return;
    for (ArcId id : candidates) {
      if (std::find(tuple.begin(), tuple.end(), id) != tuple.end()) continue;
      std::int64_t hop = cache.dist(last, g.arc(id).tail);
      if (!reachable(hop)) continue;
      std::int64_t next_partial = partial + hop + 1;
      if (next_partial > budget) continue;
      tuple.push_back(id);
      self(self, g.arc(id).head, next_partial);
      tuple.pop_back();
    }
  };
  emit_and_descend(emit_and_descend, s, 0);
}

ExceptionPairEnumerator::ExceptionPairEnumerator(const Digraph& g, const LinkageQuery& q,
                                                 const LevelDecomposition& ld1,
                                                 const LevelDecomposition& ld2) {
  build_side(g, q.s1, q.t1, q.k1, ld1, 1);
  build_side(g, q.s2, q.t2, q.k2, ld2, 2);
  k_total_ = q.k1 + q.k2;
  total_ = 0;
  i1_ = 0;
  j2_ = 0;
  done_ = side_[0].seqs.empty() || side_[1].seqs.empty();
}

// Positions (total_, i1_, j2_) walk the canonical order: for each total,
// side-1 sequences in lex order with a compatible length, cross the side-2
// sequences of exactly the remaining length.
bool ExceptionPairEnumerator::advance() {
  while (total_ <= k_total_) {
    const auto& s1 = side_[0].seqs;
    while (i1_ < s1.size()) {
      std::int64_t len1 = static_cast<std::int64_t>(s1[i1_].arcs.size());
      std::int64_t len2 = total_ - len1;
      if (len2 >= 0 && len2 < static_cast<std::int64_t>(side_[1].index_by_len.size())) {
        const auto& bucket = side_[1].index_by_len[static_cast<size_t>(len2)];
        if (j2_ < bucket.size()) return true;
      }
      ++i1_;
      j2_ = 0;
    }
    ++total_;
    i1_ = 0;
    j2_ = 0;
  }
  done_ = true;
  return false;
}

std::optional<ExceptionPairEnumerator::Item> ExceptionPairEnumerator::next() {
  if (done_ || !advance()) return std::nullopt;
  const ExceptionSequence& e1 = side_[0].seqs[i1_];
  std::int64_t len2 = total_ - static_cast<std::int64_t>(e1.arcs.size());
  const auto& bucket = side_[1].index_by_len[static_cast<size_t>(len2)];
  const ExceptionSequence& e2 = side_[1].seqs[static_cast<size_t>(bucket[j2_])];
  ++j2_;

  Item item;
  item.e1 = e1;
  item.e2 = e2;
  item.index = emitted_++;
  for (ArcId a : e1.arcs)
    if (std::find(e2.arcs.begin(), e2.arcs.end(), a) != e2.arcs.end()) {
      item.arcs_overlap = true;
      break;
    }
  return item;
}

namespace {

// Appends a fresh-internal connector path of the given length between
// `from` and `to`, one of which may be a primed terminal.
void add_connector(AuxiliaryGraph& aux, Vertex from, Vertex to, std::int64_t length, int side,
                   Vertex anchor) {
  Vertex prev = from;
  for (std::int64_t step = 1; step < length; ++step) {
    Vertex fresh = aux.graph.add_vertex();
    aux.origin.push_back({VertexOrigin::ConnectorInternal, side, anchor, static_cast<int>(step)});
    aux.graph.add_arc(prev, fresh);
    aux.arc_side.push_back(static_cast<signed char>(side));
    prev = fresh;
  }
  aux.graph.add_arc(prev, to);
  aux.arc_side.push_back(static_cast<signed char>(side));
}

std::vector<Vertex> dedup_keep_order(std::vector<Vertex> vs) {
  std::vector<Vertex> out;
  for (Vertex v : vs)
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  return out;
}

}  // namespace

AuxiliaryGraph build_auxiliary(const Digraph& g, const LinkageQuery& q,
                               const ExceptionSequence& e1, const ExceptionSequence& e2,
                               const LevelDecomposition& ld1, const LevelDecomposition& ld2,
                               const std::vector<std::int64_t>& dist_to_t1,
                               const std::vector<std::int64_t>& dist_to_t2) {
  AuxiliaryGraph aux;
  aux.graph = g;
  aux.orig_n = g.vertex_count();
  aux.orig_m = g.arc_count();
  aux.query = q;
  aux.origin.assign(static_cast<size_t>(aux.orig_n), {VertexOrigin::Original, 0, -1, 0});
  aux.arc_side.assign(static_cast<size_t>(aux.orig_m), 0);

  std::int64_t d1 = ld1.dist[static_cast<size_t>(q.t1)];
  std::int64_t d2 = ld2.dist[static_cast<size_t>(q.t2)];
  if (!reachable(d1) || !reachable(d2))
    throw InternalError("build_auxiliary: terminal unreachable");
  aux.shortest_len_1 = d1 + 2;
  aux.shortest_len_2 = d2 + 2;

  aux.s1p = aux.graph.add_vertex();
  aux.origin.push_back({VertexOrigin::AddedTerminal, 1, -1, 0});
  aux.t1p = aux.graph.add_vertex();
  aux.origin.push_back({VertexOrigin::AddedTerminal, 1, -1, 0});
  aux.s2p = aux.graph.add_vertex();
  aux.origin.push_back({VertexOrigin::AddedTerminal, 2, -1, 0});
  aux.t2p = aux.graph.add_vertex();
  aux.origin.push_back({VertexOrigin::AddedTerminal, 2, -1, 0});

  auto connect_side = [&](int side, Vertex s, Vertex t, Vertex sp, Vertex tp,
                          const ExceptionSequence& e, const LevelDecomposition& ld,
                          const std::vector<std::int64_t>& dist_to_t,
                          std::vector<Vertex>& out_anchors, std::vector<Vertex>& in_anchors,
                          std::vector<std::int64_t>& out_lens, std::vector<std::int64_t>& in_lens) {
    std::vector<Vertex> outs{s}, ins{t};
    for (ArcId id : e.arcs) {
      outs.push_back(g.arc(id).head);
      ins.push_back(g.arc(id).tail);
    }
    out_anchors = dedup_keep_order(std::move(outs));
    in_anchors = dedup_keep_order(std::move(ins));
    for (Vertex x : out_anchors) {
      std::int64_t d = ld.dist[static_cast<size_t>(x)];
      if (!reachable(d)) throw InternalError("build_auxiliary: unreachable out-anchor");
      add_connector(aux, sp, x, d + 1, side, x);
      out_lens.push_back(d + 1);
    }
    for (Vertex x : in_anchors) {
      std::int64_t d = dist_to_t[static_cast<size_t>(x)];
      if (!reachable(d)) throw InternalError("build_auxiliary: unreachable in-anchor");
      add_connector(aux, x, tp, d + 1, side, x);
      in_lens.push_back(d + 1);
    }
  };

  connect_side(1, q.s1, q.t1, aux.s1p, aux.t1p, e1, ld1, dist_to_t1, aux.out_anchors_1,
               aux.in_anchors_1, aux.out_lens_1, aux.in_lens_1);
  connect_side(2, q.s2, q.t2, aux.s2p, aux.t2p, e2, ld2, dist_to_t2, aux.out_anchors_2,
               aux.in_anchors_2, aux.out_lens_2, aux.in_lens_2);
  return aux;
}

AuxiliaryGraph build_auxiliary(const Digraph& g, const LinkageQuery& q,
                               const ExceptionSequence& e1, const ExceptionSequence& e2) {
  LevelDecomposition ld1 = bfs_levels(g, q.s1);
  LevelDecomposition ld2 = bfs_levels(g, q.s2);
  return build_auxiliary(g, q, e1, e2, ld1, ld2, bfs_dist_to(g, q.t1), bfs_dist_to(g, q.t2));
}

InnerInstance build_inner(const AuxiliaryGraph& aux, const ExceptionSequence& e1,
                          const ExceptionSequence& e2, const LevelDecomposition& ld1,
                          const LevelDecomposition& ld2) {
  InnerInstance inst;
  inst.aux = &aux;
  inst.a1 = static_cast<int>(e1.arcs.size()) + 1;
  inst.a2 = static_cast<int>(e2.arcs.size()) + 1;

  const Digraph& d = aux.graph;

  // Auxiliary distance law: the primed terminals sit exactly two arcs
  // further apart than the original ones.
  if (bfs_dist_from(d, aux.s1p)[static_cast<size_t>(aux.t1p)] != aux.shortest_len_1)
    throw InternalError("auxiliary distance law violated on side 1");
  if (bfs_dist_from(d, aux.s2p)[static_cast<size_t>(aux.t2p)] != aux.shortest_len_2)
    throw InternalError("auxiliary distance law violated on side 2");

  // Usable arcs per side: the side's level arcs plus its own connectors.
  // Any (s',t')-path inside the set is connector + level run + connector.
  auto side_dag = [&](const LevelDecomposition& ld, int side) {
    std::vector<char> dag(static_cast<size_t>(d.arc_count()), 0);
    for (ArcId id = 0; id < d.arc_count(); ++id) {
      if (id < aux.orig_m)
        dag[static_cast<size_t>(id)] = ld.is_shortest_arc(id) ? 1 : 0;
      else
        dag[static_cast<size_t>(id)] = aux.arc_side[static_cast<size_t>(id)] == side ? 1 : 0;
    }
    return dag;
  };
  inst.dag1 = side_dag(ld1, 1);
  inst.dag2 = side_dag(ld2, 2);

  // Exception arcs are traversed by the stitched paths themselves, so no
  // inner path on either side may occupy one.
  for (ArcId id : e1.arcs) {
    inst.dag1[static_cast<size_t>(id)] = 0;
    inst.dag2[static_cast<size_t>(id)] = 0;
  }
  for (ArcId id : e2.arcs) {
    inst.dag1[static_cast<size_t>(id)] = 0;
    inst.dag2[static_cast<size_t>(id)] = 0;
  }

  // Inner-DAG purity: original usable arcs are level arcs of their side.
  for (ArcId id = 0; id < aux.orig_m; ++id) {
    if (inst.dag1[static_cast<size_t>(id)] && !ld1.is_shortest_arc(id))
      throw InternalError("inner DAG purity violated on side 1");
    if (inst.dag2[static_cast<size_t>(id)] && !ld2.is_shortest_arc(id))
      throw InternalError("inner DAG purity violated on side 2");
  }
  return inst;
}

namespace {

struct UnitFlow {
  int value = 0;
  std::vector<char> used;  // flow of 1 on the arc
};

// Unit-capacity max flow by BFS augmentation, capped at `need`. Arc scan
// order is ascending id, so the flow (and its decomposition) is
// deterministic.
UnitFlow max_flow_unit(const Digraph& g, const std::vector<char>& allowed, Vertex s, Vertex t,
                       int need) {
  UnitFlow flow;
  flow.used.assign(static_cast<size_t>(g.arc_count()), 0);
  if (s == t) {
    flow.value = need;
    return flow;
  }
  while (flow.value < need) {
    std::vector<std::int32_t> parent_arc(static_cast<size_t>(g.vertex_count()), -1);
    std::vector<char> parent_dir(static_cast<size_t>(g.vertex_count()), 0);
    std::vector<char> seen(static_cast<size_t>(g.vertex_count()), 0);
    std::deque<Vertex> queue;
    seen[static_cast<size_t>(s)] = 1;
    queue.push_back(s);
    while (!queue.empty() && !seen[static_cast<size_t>(t)]) {
      Vertex v = queue.front();
      queue.pop_front();
      for (ArcId id : g.out_arcs(v)) {
        if (!allowed[static_cast<size_t>(id)] || flow.used[static_cast<size_t>(id)]) continue;
        Vertex w = g.arc(id).head;
        if (seen[static_cast<size_t>(w)]) continue;
        seen[static_cast<size_t>(w)] = 1;
        parent_arc[static_cast<size_t>(w)] = id;
        parent_dir[static_cast<size_t>(w)] = 1;
        queue.push_back(w);
      }
      for (ArcId id : g.in_arcs(v)) {
        if (!flow.used[static_cast<size_t>(id)]) continue;
        Vertex w = g.arc(id).tail;
        if (seen[static_cast<size_t>(w)]) continue;
        seen[static_cast<size_t>(w)] = 1;
        parent_arc[static_cast<size_t>(w)] = id;
        parent_dir[static_cast<size_t>(w)] = 0;
        queue.push_back(w);
      }
    }
    if (!seen[static_cast<size_t>(t)]) break;
    Vertex v = t;
    while (v != s) {
      ArcId id = parent_arc[static_cast<size_t>(v)];
      if (parent_dir[static_cast<size_t>(v)]) {
        flow.used[static_cast<size_t>(id)] = 1;
        v = g.arc(id).tail;
      } else {
        flow.used[static_cast<size_t>(id)] = 0;
        v = g.arc(id).head;
      }
    }
    ++flow.value;
  }
  return flow;
}

// Peels `count` arc-disjoint paths out of a unit flow on a DAG, smallest
// arc id first at every step.
std::vector<Path> decompose_flow(const Digraph& g, std::vector<char> used, Vertex s, Vertex t,
                                 int count) {
  std::vector<Path> paths;
  for (int c = 0; c < count; ++c) {
    std::vector<Vertex> verts{s};
    Vertex v = s;
    while (v != t) {
      ArcId chosen = -1;
      for (ArcId id : g.out_arcs(v))
        if (used[static_cast<size_t>(id)]) {
          chosen = id;
          break;
        }
      if (chosen < 0) throw InternalError("flow decomposition stuck before sink");
      used[static_cast<size_t>(chosen)] = 0;
      v = g.arc(chosen).head;
      verts.push_back(v);
    }
    paths.emplace_back(std::move(verts));
  }
  return paths;
}

}  // namespace

std::optional<std::vector<Path>> inner_solve(const InnerInstance& inst) {
  const AuxiliaryGraph& aux = *inst.aux;
  const Digraph& g = aux.graph;

  std::vector<ArcId> shared;
  for (ArcId id = 0; id < g.arc_count(); ++id)
    if (inst.dag1[static_cast<size_t>(id)] && inst.dag2[static_cast<size_t>(id)])
      shared.push_back(id);

  // assignment per shared arc: 0 unassigned, 1 side 1, 2 side 2, 3 neither
  std::unordered_map<ArcId, char> assign;
  for (ArcId id : shared) assign[id] = 0;

  auto allowed_for = [&](int side) {
    const std::vector<char>& dag = side == 1 ? inst.dag1 : inst.dag2;
    std::vector<char> allowed = dag;
    for (ArcId id : shared) {
      char a = assign[id];
      if (a != 0 && a != side) allowed[static_cast<size_t>(id)] = 0;
    }
    return allowed;
  };

  auto side_ok = [&](int side) {
    Vertex s = side == 1 ? aux.s1p : aux.s2p;
    Vertex t = side == 1 ? aux.t1p : aux.t2p;
    int need = side == 1 ? inst.a1 : inst.a2;
    return max_flow_unit(g, allowed_for(side), s, t, need).value >= need;
  };

  std::optional<std::vector<Path>> result;
  auto search = [&](auto&& self, size_t depth) -> bool {
    if (!side_ok(1) || !side_ok(2)) return false;
    if (depth == shared.size()) {
      auto allowed1 = allowed_for(1);
      auto allowed2 = allowed_for(2);
      UnitFlow f1 = max_flow_unit(g, allowed1, aux.s1p, aux.t1p, inst.a1);
      UnitFlow f2 = max_flow_unit(g, allowed2, aux.s2p, aux.t2p, inst.a2);
      std::vector<Path> paths = decompose_flow(g, f1.used, aux.s1p, aux.t1p, inst.a1);
      std::vector<Path> paths2 = decompose_flow(g, f2.used, aux.s2p, aux.t2p, inst.a2);
      paths.insert(paths.end(), paths2.begin(), paths2.end());
      result = std::move(paths);
      return true;
    }
    for (char choice : {char(1), char(2), char(3)}) {
      assign[shared[depth]] = choice;
      if (self(self, depth + 1)) return true;
    }
    assign[shared[depth]] = 0;
    return false;
  };
  search(search, 0);
  return result;
}

Path reconstruct_path(const std::vector<Path>& side_paths, const ExceptionSequence& e,
                      const AuxiliaryGraph& aux, ReconstructInfo* info) {
  const Digraph& ag = aux.graph;
  int side = e.side;
  Vertex s = side == 1 ? aux.query.s1 : aux.query.s2;
  Vertex t = side == 1 ? aux.query.t1 : aux.query.t2;

  // Original arcs used by the inner paths, plus the exception arcs.
  std::vector<ArcId> stitched;
  for (const Path& p : side_paths) {
    auto ids = p.arc_ids_in(ag);
    if (!ids) throw InternalError("reconstruct: inner path invalid in auxiliary graph");
    for (ArcId id : *ids)
      if (id < aux.orig_m) stitched.push_back(id);
  }
  std::int64_t connector_total = 0;
  for (const Path& p : side_paths)
    connector_total += p.length();
  connector_total -= static_cast<std::int64_t>(stitched.size());
  stitched.insert(stitched.end(), e.arcs.begin(), e.arcs.end());
  {
    std::unordered_set<ArcId> uniq(stitched.begin(), stitched.end());
    if (uniq.size() != stitched.size())
      throw InternalError("reconstruct: stitched arc set has duplicates");
  }

  // Budget audit: the inner paths consume every connector exactly once
  // (their added-arc spend equals the sum N of all connector lengths), and
  // the stitched count i + (total inner length) - N is exactly the
  // feasibility chain d + slack, which is within d + k.
  std::int64_t total_inner = 0;
  for (const Path& p : side_paths) total_inner += p.length();
  std::int64_t want_len = side == 1 ? aux.shortest_len_1 : aux.shortest_len_2;
  std::int64_t d = want_len - 2;
  std::int64_t k = side == 1 ? aux.query.k1 : aux.query.k2;
  std::int64_t i = static_cast<std::int64_t>(e.arcs.size());
  if (static_cast<std::int64_t>(side_paths.size()) != i + 1)
    throw InternalError("reconstruct: wrong inner path count");
  std::int64_t n_added = aux.added_arc_total(side);
  if (connector_total != n_added)
    throw InternalError("reconstruct: connector arc audit failed");
  if (static_cast<std::int64_t>(stitched.size()) != i + total_inner - n_added)
    throw InternalError("reconstruct: stitched arc count mismatch");
  if (static_cast<std::int64_t>(stitched.size()) != d + e.slack_used)
    throw InternalError("reconstruct: stitched arc count differs from the feasibility chain");
  if (static_cast<std::int64_t>(stitched.size()) > d + k)
    throw InternalError("reconstruct: stitched arc count exceeds length budget");

  if (info) {
    info->stitched_arc_count = static_cast<std::int64_t>(stitched.size());
    info->connector_arc_total = connector_total;
  }

  // Degree balance: s has one spare out-arc, t one spare in-arc (none when
  // s == t); everything else balances. Then a greedy walk from s can only
  // stop at t.
  std::unordered_map<Vertex, std::int64_t> balance;
  std::unordered_map<Vertex, std::vector<ArcId>> out_by_vertex;
  for (ArcId id : stitched) {
    const Arc& a = ag.arc(id);
    ++balance[a.tail];
    --balance[a.head];
    out_by_vertex[a.tail].push_back(id);
  }
  for (auto& [v, arcs] : out_by_vertex) std::sort(arcs.begin(), arcs.end());
  for (const auto& [v, b] : balance) {
    std::int64_t want = 0;
    if (s != t) {
      if (v == s) want = 1;
      if (v == t) want = -1;
    }
    if (b != want) throw InternalError("reconstruct: degree balance violated");
  }

  std::vector<Vertex> trail{s};
  std::unordered_map<Vertex, size_t> consumed;
  Vertex v = s;
  while (v != t) {
    auto& arcs = out_by_vertex[v];
    size_t& used = consumed[v];
    if (used >= arcs.size()) throw InternalError("reconstruct: walk stuck before target");
    ArcId id = arcs[used++];
    v = ag.arc(id).head;
    trail.push_back(v);
  }

  // Excise cycles: keep the first occurrence of every vertex.
  std::vector<Vertex> simple;
  std::unordered_map<Vertex, size_t> pos;
  for (Vertex w : trail) {
    auto it = pos.find(w);
    if (it != pos.end()) {
      for (size_t j = it->second + 1; j < simple.size(); ++j) pos.erase(simple[j]);
      simple.resize(it->second + 1);
    } else {
      pos[w] = simple.size();
      simple.push_back(w);
    }
  }
  return Path(std::move(simple));
}

const char* verify_code_name(VerifyCode code) {
  switch (code) {
    case VerifyCode::Valid: return "valid";
    case VerifyCode::BadEndpoint: return "bad-endpoint";
    case VerifyCode::NotPath: return "not-path";
    case VerifyCode::SharedArc: return "shared-arc";
    case VerifyCode::TooLong: return "too-long";
  }
  return "unknown";
}

VerifyResult verify_with_caps(const Digraph& g, Vertex s1, Vertex t1, Vertex s2, Vertex t2,
                              std::optional<std::int64_t> cap1, std::optional<std::int64_t> cap2,
                              const Path& p1, const Path& p2) {
  auto ids1 = p1.arc_ids_in(g);
  auto ids2 = p2.arc_ids_in(g);
  if (!ids1 || !p1.vertex_simple() || !ids2 || !p2.vertex_simple())
    return {false, VerifyCode::NotPath};
  if (p1.source() != s1 || p1.target() != t1 || p2.source() != s2 || p2.target() != t2)
    return {false, VerifyCode::BadEndpoint};
  std::unordered_set<ArcId> used(ids1->begin(), ids1->end());
  for (ArcId id : *ids2)
    if (used.count(id)) return {false, VerifyCode::SharedArc};
  if (cap1 && p1.length() > *cap1) return {false, VerifyCode::TooLong};
  if (cap2 && p2.length() > *cap2) return {false, VerifyCode::TooLong};
  return {true, VerifyCode::Valid};
}

VerifyResult verify_solution(const Digraph& g, const LinkageQuery& q, const Path& p1,
                             const Path& p2) {
  std::int64_t d1 = bfs_dist_from(g, q.s1)[static_cast<size_t>(q.t1)];
  std::int64_t d2 = bfs_dist_from(g, q.s2)[static_cast<size_t>(q.t2)];
  std::optional<std::int64_t> cap1, cap2;
  // Unreachable terminals leave the bound unsatisfiable for nonempty paths.
  cap1 = reachable(d1) ? d1 + q.k1 : std::int64_t{-1};
  cap2 = reachable(d2) ? d2 + q.k2 : std::int64_t{-1};
  return verify_with_caps(g, q.s1, q.t1, q.s2, q.t2, cap1, cap2, p1, p2);
}

namespace {

struct CandidateOutcome {
  std::int64_t index = -1;
  LinkageSolution solution;
};

}  // namespace

SolveResult solve(const Digraph& g, const LinkageQuery& q, const SolveOptions& opts) {
  for (Vertex v : {q.s1, q.t1, q.s2, q.t2})
    if (!g.valid_vertex(v)) throw InputError("solve: query vertex out of range");
  if (q.k1 < 0 || q.k2 < 0) throw InputError("solve: negative slack");

  SolveResult result;
  LevelDecomposition ld1 = bfs_levels(g, q.s1);
  LevelDecomposition ld2 = bfs_levels(g, q.s2);
  std::int64_t d1 = ld1.dist[static_cast<size_t>(q.t1)];
  std::int64_t d2 = ld2.dist[static_cast<size_t>(q.t2)];
  if (!reachable(d1) || !reachable(d2)) {
    result.status = SolveStatus::No;
    return result;
  }
  std::vector<std::int64_t> rdist1 = bfs_dist_to(g, q.t1);
  std::vector<std::int64_t> rdist2 = bfs_dist_to(g, q.t2);

  ExceptionPairEnumerator enumerator(g, q, ld1, ld2);

  std::mutex enum_mu;
  std::vector<char> overlap_flags;  // per candidate index
  bool exhausted = false;
  std::atomic<std::int64_t> best_index{std::numeric_limits<std::int64_t>::max()};
  std::mutex winner_mu;
  std::optional<CandidateOutcome> winner;
  std::exception_ptr failure;
  std::mutex failure_mu;

  auto attempt = [&](const ExceptionPairEnumerator::Item& item) {
    AuxiliaryGraph aux = build_auxiliary(g, q, item.e1, item.e2, ld1, ld2, rdist1, rdist2);
    InnerInstance inner = build_inner(aux, item.e1, item.e2, ld1, ld2);
    auto inner_paths = inner_solve(inner);
    if (!inner_paths) return;
    std::vector<Path> side1(inner_paths->begin(), inner_paths->begin() + inner.a1);
    std::vector<Path> side2(inner_paths->begin() + inner.a1, inner_paths->end());
    LinkageSolution sol;
    sol.p1 = reconstruct_path(side1, item.e1, aux);
    sol.p2 = reconstruct_path(side2, item.e2, aux);
    sol.witness_e1 = item.e1;
    sol.witness_e2 = item.e2;
    sol.len1 = sol.p1.length();
    sol.len2 = sol.p2.length();
    sol.bound1 = d1 + q.k1;
    sol.bound2 = d2 + q.k2;
    VerifyResult vr = verify_solution(g, q, sol.p1, sol.p2);
    if (!vr.ok)
      throw InternalError(std::string("solve: reconstructed certificate rejected: ") +
                          verify_code_name(vr.code));
    std::lock_guard<std::mutex> lock(winner_mu);
    if (item.index < best_index.load(std::memory_order_relaxed)) {
      best_index.store(item.index, std::memory_order_relaxed);
      winner = CandidateOutcome{item.index, std::move(sol)};
    }
  };

  auto worker = [&]() {
    while (true) {
      std::optional<ExceptionPairEnumerator::Item> item;
      {
        std::lock_guard<std::mutex> lock(enum_mu);
        std::int64_t next_index = enumerator.emitted();
        if (next_index > best_index.load(std::memory_order_relaxed)) break;
        if (opts.candidate_limit && next_index >= *opts.candidate_limit) break;
        item = enumerator.next();
        if (!item) {
          exhausted = true;
          break;
        }
        overlap_flags.push_back(item->arcs_overlap ? 1 : 0);
      }
      if (item->arcs_overlap) continue;
      if (item->index > best_index.load(std::memory_order_relaxed)) continue;
      try {
        attempt(*item);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
        best_index.store(-1, std::memory_order_relaxed);  // drain quickly
        break;
      }
    }
  };

  int threads = std::max(1, opts.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(threads));
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::int64_t emitted = enumerator.emitted();
  if (winner) {
    result.status = SolveStatus::Yes;
    result.solution = std::move(winner->solution);
    result.stats.feasible_pairs = winner->index + 1;
  } else if (!exhausted && opts.candidate_limit && emitted >= *opts.candidate_limit) {
    result.status = SolveStatus::Unknown;
    result.stats.feasible_pairs = emitted;
  } else {
    result.status = SolveStatus::No;
    result.stats.feasible_pairs = emitted;
  }
  std::int64_t overlap_within = 0;
  for (std::int64_t idx = 0; idx < result.stats.feasible_pairs &&
                             idx < static_cast<std::int64_t>(overlap_flags.size());
       ++idx)
    overlap_within += overlap_flags[static_cast<size_t>(idx)];
  result.stats.inner_searches = result.stats.feasible_pairs - overlap_within;
  result.stats.aux_checks = 2 * result.stats.inner_searches;
  result.stats.aux_violations = 0;
  return result;
}

std::optional<LinkageSolution> solve_simple(const Digraph& g, const LinkageQuery& q) {
  SolveResult r = solve(g, q);
  if (r.status == SolveStatus::Yes) return r.solution;
  return std::nullopt;
}

}  // namespace sw2l
