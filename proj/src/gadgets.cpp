#include "sw2l/gadgets.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sw2l {

std::string role_name(const VertexRole& role) {
  switch (role.kind) {
    case VertexRole::S1: return "s1";
    case VertexRole::T1: return "t1";
    case VertexRole::S2: return "s2";
    case VertexRole::T2: return "t2";
    case VertexRole::U: return "u_" + std::to_string(role.i);
    case VertexRole::V: return "v_" + std::to_string(role.i);
    case VertexRole::Y: return "y_" + std::to_string(role.i) + "_" + std::to_string(role.r);
    case VertexRole::YBar:
      return "ybar_" + std::to_string(role.i) + "_" + std::to_string(role.r);
    case VertexRole::C: return "c_" + std::to_string(role.i);
    case VertexRole::CPrime: return "cp_" + std::to_string(role.i);
    case VertexRole::Sub:
      return "sub_" + std::to_string(role.arc) + "_" + std::to_string(role.pos);
  }
  return "?";
}

int GadgetLayout::pre_subdivision_vertex_count() const {
  int count = 0;
  for (const VertexRole& r : roles)
    if (r.kind != VertexRole::Sub) ++count;
  return count;
}

GadgetLayout build_ssw2l_gadget(const CnfFormula& f, std::int64_t k, bool cheap_subdivision) {
  if (k < 0) throw InputError("negative slack");
  if (f.num_vars == 0 || f.clause_count() == 0)
    throw InputError("gadget needs at least one variable and one clause");
  int n = f.num_vars;
  int m = f.clause_count();

  GadgetLayout layout;
  layout.k = k;
  std::int64_t sum_a = 0;
  for (int a : f.occ_max) sum_a += a;
  layout.subdivision_count =
      cheap_subdivision ? (2 * static_cast<std::int64_t>(n) + k + sum_a + 1) / 2
                        : static_cast<std::int64_t>(m) * n + 2 * static_cast<std::int64_t>(n) + k;

  Digraph& g = layout.graph;
  auto fresh = [&](VertexRole role) {
    Vertex v = g.add_vertex();
    layout.roles.push_back(role);
    g.set_label(v, role_name(role));
    return v;
  };

  layout.s1 = fresh({VertexRole::S1, 0, 0, 0, 0});
  layout.t1 = fresh({VertexRole::T1, 0, 0, 0, 0});
  layout.s2 = fresh({VertexRole::S2, 0, 0, 0, 0});
  layout.t2 = fresh({VertexRole::T2, 0, 0, 0, 0});

  layout.u_of.resize(static_cast<size_t>(n));
  layout.v_of.resize(static_cast<size_t>(n));
  layout.y_of.assign(static_cast<size_t>(n), {});
  layout.ybar_of.assign(static_cast<size_t>(n), {});
  for (int i = 1; i <= n; ++i) {
    int a_i = f.occ_max[static_cast<size_t>(i - 1)];
    layout.u_of[static_cast<size_t>(i - 1)] = fresh({VertexRole::U, i, 0, 0, 0});
    layout.v_of[static_cast<size_t>(i - 1)] = fresh({VertexRole::V, i, 0, 0, 0});
    auto& ys = layout.y_of[static_cast<size_t>(i - 1)];
    auto& ybars = layout.ybar_of[static_cast<size_t>(i - 1)];
    for (int r = 1; r <= 2 * a_i; ++r) ys.push_back(fresh({VertexRole::Y, i, r, 0, 0}));
    for (int r = 1; r <= 2 * a_i; ++r) ybars.push_back(fresh({VertexRole::YBar, i, r, 0, 0}));
  }
  layout.c_of.resize(static_cast<size_t>(m));
  layout.cp_of.resize(static_cast<size_t>(m));
  for (int j = 1; j <= m; ++j) {
    layout.c_of[static_cast<size_t>(j - 1)] = fresh({VertexRole::C, j, 0, 0, 0});
    layout.cp_of[static_cast<size_t>(j - 1)] = fresh({VertexRole::CPrime, j, 0, 0, 0});
  }

  // Gadget spines: the true path u_i y_(i,2a) ... y_(i,1) v_i and the false
  // path through the ybar row, indices descending along the path.
  for (int i = 1; i <= n; ++i) {
    int a_i = f.occ_max[static_cast<size_t>(i - 1)];
    for (int pass = 0; pass < 2; ++pass) {
      const auto& row = pass == 0 ? layout.y_of[static_cast<size_t>(i - 1)]
                                  : layout.ybar_of[static_cast<size_t>(i - 1)];
      Vertex prev = layout.u_of[static_cast<size_t>(i - 1)];
      for (int r = 2 * a_i; r >= 1; --r) {
        g.add_arc(prev, row[static_cast<size_t>(r - 1)]);
        prev = row[static_cast<size_t>(r - 1)];
      }
      g.add_arc(prev, layout.v_of[static_cast<size_t>(i - 1)]);
    }
  }
  for (int i = 1; i < n; ++i)
    g.add_arc(layout.v_of[static_cast<size_t>(i - 1)], layout.u_of[static_cast<size_t>(i)]);
  g.add_arc(layout.s1, layout.u_of[0]);
  g.add_arc(layout.v_of[static_cast<size_t>(n - 1)], layout.t1);
  g.add_arc(layout.s2, layout.c_of[0]);
  g.add_arc(layout.cp_of[static_cast<size_t>(m - 1)], layout.t2);
  for (int j = 1; j < m; ++j)
    g.add_arc(layout.cp_of[static_cast<size_t>(j - 1)], layout.c_of[static_cast<size_t>(j)]);

  // Clause arcs, subdivided on the spot. The r'th occurrence of a literal
  // claims the row pair (2r, 2r-1): an arc from c_j into index 2r and one
  // from index 2r-1 back to c'_j.
  auto subdivided = [&](Vertex from, Vertex to, int arc_counter) {
    std::vector<Vertex> chain;
    Vertex prev = from;
    for (std::int64_t p = 1; p <= layout.subdivision_count; ++p) {
      Vertex w = fresh({VertexRole::Sub, 0, 0, arc_counter, static_cast<int>(p)});
      g.add_arc(prev, w);
      chain.push_back(w);
      prev = w;
    }
    g.add_arc(prev, to);
    return chain;
  };

  layout.wiring.resize(static_cast<size_t>(m));
  int arc_counter = 0;
  for (int j = 0; j < m; ++j) {
    for (int slot = 0; slot < 3; ++slot) {
      int lit = f.clauses[static_cast<size_t>(j)][static_cast<size_t>(slot)];
      int i = std::abs(lit);
      const auto& occ = lit > 0 ? f.pos_occ[static_cast<size_t>(i - 1)]
                                : f.neg_occ[static_cast<size_t>(i - 1)];
      int r = 0;
      for (size_t idx = 0; idx < occ.size(); ++idx)
        if (occ[idx].clause == j && occ[idx].slot == slot) {
          r = static_cast<int>(idx) + 1;
          break;
        }
      if (r == 0) throw InternalError("occurrence table lookup failed");
      const auto& row = lit > 0 ? layout.y_of[static_cast<size_t>(i - 1)]
                                : layout.ybar_of[static_cast<size_t>(i - 1)];
      GadgetLayout::ClauseWiring w;
      w.entry = row[static_cast<size_t>(2 * r - 1)];  // y_(i,2r)
      w.exit = row[static_cast<size_t>(2 * r - 2)];   // y_(i,2r-1)
      w.out_chain = subdivided(layout.c_of[static_cast<size_t>(j)], w.entry, arc_counter++);
      w.in_chain = subdivided(w.exit, layout.cp_of[static_cast<size_t>(j)], arc_counter++);
      layout.wiring[static_cast<size_t>(j)][static_cast<size_t>(slot)] = std::move(w);
    }
  }
  return layout;
}

std::pair<Path, Path> assignment_to_linkage(const GadgetLayout& layout, const CnfFormula& f,
                                            const Assignment& phi) {
  if (static_cast<int>(phi.value.size()) != f.num_vars)
    throw InputError("assignment size does not match formula");
  int violated = phi.first_violated_clause(f);
  if (violated >= 0)
    throw InputError("assignment does not satisfy clause " + std::to_string(violated + 1));

  // p1 crosses every gadget on the side opposite to the clause traffic the
  // assignment enables: variable true -> false path.
  std::vector<Vertex> p1{layout.s1};
  for (int i = 1; i <= f.num_vars; ++i) {
    p1.push_back(layout.u_of[static_cast<size_t>(i - 1)]);
    const auto& row = phi.value[static_cast<size_t>(i - 1)]
                          ? layout.ybar_of[static_cast<size_t>(i - 1)]
                          : layout.y_of[static_cast<size_t>(i - 1)];
    for (size_t r = row.size(); r >= 1; --r) p1.push_back(row[r - 1]);
    p1.push_back(layout.v_of[static_cast<size_t>(i - 1)]);
  }
  p1.push_back(layout.t1);

  std::vector<Vertex> p2{layout.s2};
  for (int j = 0; j < f.clause_count(); ++j) {
    p2.push_back(layout.c_of[static_cast<size_t>(j)]);
    int slot = -1;
    for (int s = 0; s < 3; ++s) {
      int lit = f.clauses[static_cast<size_t>(j)][static_cast<size_t>(s)];
      bool v = phi.value[static_cast<size_t>(std::abs(lit) - 1)];
      if ((lit > 0) == v) {
        slot = s;
        break;
      }
    }
    if (slot < 0) throw InternalError("satisfying assignment lost a clause");
    const auto& w = layout.wiring[static_cast<size_t>(j)][static_cast<size_t>(slot)];
    for (Vertex x : w.out_chain) p2.push_back(x);
    p2.push_back(w.entry);
    p2.push_back(w.exit);
    for (Vertex x : w.in_chain) p2.push_back(x);
    p2.push_back(layout.cp_of[static_cast<size_t>(j)]);
  }
  p2.push_back(layout.t2);
  return {Path(std::move(p1)), Path(std::move(p2))};
}

Assignment linkage_to_assignment(const GadgetLayout& layout, const Path& p1) {
  int n = static_cast<int>(layout.u_of.size());
  if (p1.verts.empty() || p1.source() != layout.s1 || p1.target() != layout.t1)
    throw InputError("malformed path: wrong endpoints");

  std::vector<char> uses_true(static_cast<size_t>(n), 0);
  std::vector<char> uses_false(static_cast<size_t>(n), 0);
  for (Vertex v : p1.verts) {
    const VertexRole& role = layout.roles[static_cast<size_t>(v)];
    switch (role.kind) {
      case VertexRole::C:
      case VertexRole::CPrime:
      case VertexRole::Sub:
      case VertexRole::S2:
      case VertexRole::T2:
        throw InputError("malformed path: touches clause machinery at vertex " +
                         std::to_string(v + 1));
      case VertexRole::Y: uses_true[static_cast<size_t>(role.i - 1)] = 1; break;
      case VertexRole::YBar: uses_false[static_cast<size_t>(role.i - 1)] = 1; break;
      default: break;
    }
  }
  Assignment phi;
  phi.value.resize(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    if (uses_true[static_cast<size_t>(i)] && uses_false[static_cast<size_t>(i)])
      throw InputError("malformed path: mixes sides in gadget " + std::to_string(i + 1));
    if (!uses_true[static_cast<size_t>(i)] && !uses_false[static_cast<size_t>(i)])
      throw InputError("malformed path: skips gadget " + std::to_string(i + 1));
    // using the true path pins the variable false, and vice versa
    phi.value[static_cast<size_t>(i)] = !uses_true[static_cast<size_t>(i)];
  }
  return phi;
}

std::string serialize_roles(const GadgetLayout& layout) {
  std::ostringstream out;
  for (size_t v = 0; v < layout.roles.size(); ++v)
    out << "v " << v + 1 << ' ' << role_name(layout.roles[v]) << '\n';
  return out.str();
}

Digraph subdivide_for_w1(const Digraph& g) {
  auto order = topo_order(g);
  if (!order) throw InputError("subdivide_for_w1: input graph is not acyclic");
  std::vector<int> pos(static_cast<size_t>(g.vertex_count()), 0);
  for (size_t i = 0; i < order->size(); ++i)
    pos[static_cast<size_t>((*order)[i])] = static_cast<int>(i);

  Digraph out(g.vertex_count());
  for (ArcId id = 0; id < g.arc_count(); ++id) {
    const Arc& a = g.arc(id);
    int gap = pos[static_cast<size_t>(a.head)] - pos[static_cast<size_t>(a.tail)];
    Vertex prev = a.tail;
    for (int step = 1; step < gap; ++step) {
      Vertex fresh = out.add_vertex();
      out.add_arc(prev, fresh);
      prev = fresh;
    }
    out.add_arc(prev, a.head);
  }
  return out;
}

Digraph pad_vertices(const Digraph& g, int target_n) {
  if (target_n < g.vertex_count())
    throw InputError("pad target " + std::to_string(target_n) + " below current order " +
                     std::to_string(g.vertex_count()));
  Digraph out = g;
  for (int i = g.vertex_count(); i < target_n; ++i) out.add_vertex();
  return out;
}

std::optional<std::int64_t> eth_padded_order(int n, double eps) {
  if (n < 1 || eps <= 0.0) return std::nullopt;
  double exponent = std::pow(static_cast<double>(n), 1.0 / (1.0 + eps));
  if (exponent >= 62.0) return std::nullopt;
  return static_cast<std::int64_t>(std::ceil(std::pow(2.0, exponent)));
}

std::pair<Digraph, LinkageQuery> gen_random_instance(std::uint64_t seed, int n,
                                                     double arc_probability, std::int64_t k1,
                                                     std::int64_t k2) {
  if (n < 2) throw InputError("instance needs at least 2 vertices");
  if (arc_probability < 0.0 || arc_probability > 1.0)
    throw InputError("arc probability outside [0,1]");
  if (k1 < 0 || k2 < 0) throw InputError("negative slack");

  SplitMix64 rng(seed);
  Digraph g(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v) {
      if (u == v) continue;
      if (rng.next_unit() < arc_probability) g.add_arc(u, v);
    }

  std::vector<std::pair<Vertex, Vertex>> reach_pairs;
  for (Vertex u = 0; u < n; ++u) {
    auto dist = bfs_dist_from(g, u);
    for (Vertex v = 0; v < n; ++v)
      if (u != v && reachable(dist[static_cast<size_t>(v)])) reach_pairs.emplace_back(u, v);
  }
  auto pick_pair = [&]() -> std::pair<Vertex, Vertex> {
    if (!reach_pairs.empty())
      return reach_pairs[static_cast<size_t>(rng.below(reach_pairs.size()))];
    Vertex s = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(n)));
    Vertex t = static_cast<Vertex>((s + 1 + rng.below(static_cast<std::uint64_t>(n - 1))) % n);
    return {s, t};
  };
  auto [s1, t1] = pick_pair();
  auto [s2, t2] = pick_pair();
  return {std::move(g), LinkageQuery{s1, t1, s2, t2, k1, k2}};
}

}  // namespace sw2l
