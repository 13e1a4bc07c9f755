#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sw2l/cnf.hpp"
#include "sw2l/digraph.hpp"

namespace sw2l {

// Hardness-construction compilers: the 3-SAT -> semi-short weak 2-linkage
// reduction (variable gadgets with paired true/false paths, clause vertices
// wired to literal occurrences, heavy subdivision of the clause arcs), the
// all-walks-shortest subdivision transform for acyclic graphs, and the
// independent-set padding used by the lower-bound argument.

struct VertexRole {
  enum Kind { S1, T1, S2, T2, U, V, Y, YBar, C, CPrime, Sub };
  Kind kind = Sub;
  int i = 0;    // variable index (U/V/Y/YBar) or clause index (C/CPrime), 1-based
  int r = 0;    // occurrence slot for Y/YBar, 1-based
  int arc = 0;  // clause-arc counter for Sub, 0-based in wiring order
  int pos = 0;  // 1-based position along the subdivided clause arc
};

std::string role_name(const VertexRole& role);

struct GadgetLayout {
  Digraph graph;
  Vertex s1 = -1, t1 = -1, s2 = -1, t2 = -1;
  std::vector<VertexRole> roles;  // indexed by vertex
  std::int64_t k = 0;
  std::int64_t subdivision_count = 0;  // internal vertices added per clause arc

  // Lookup tables, all 0-based on the outside (u_of[i-1] is u_i).
  std::vector<Vertex> u_of, v_of, c_of, cp_of;
  std::vector<std::vector<Vertex>> y_of, ybar_of;  // y_of[i-1][r-1] is y_(i,r)

  // Per clause and slot: the subdivided connector into the gadget and back.
  struct ClauseWiring {
    Vertex entry;                   // y_(i,2r) or ybar_(i,2r)
    Vertex exit;                    // y_(i,2r-1) or ybar_(i,2r-1)
    std::vector<Vertex> out_chain;  // internals of c_j -> entry, in order
    std::vector<Vertex> in_chain;   // internals of exit -> c'_j, in order
  };
  std::vector<std::array<ClauseWiring, 3>> wiring;  // per clause

  int pre_subdivision_vertex_count() const;
};

/// Emits the reduction graph for formula `f` and slack `k`. Each clause arc
/// is subdivided m*n + 2n + k times; with `cheap_subdivision` the smaller
/// sufficient count ceil((2n + k + sum a_i)/2) is used instead.
GadgetLayout build_ssw2l_gadget(const CnfFormula& f, std::int64_t k,
                                bool cheap_subdivision = false);

/// Satisfying assignment -> arc-disjoint pair: p1 threads the false side of
/// every gadget whose variable is true (and vice versa), p2 visits the
/// clause vertices in order, detouring through one true literal's occurrence
/// arcs per clause. Throws InputError naming the first violated clause if
/// phi does not satisfy f.
std::pair<Path, Path> assignment_to_linkage(const GadgetLayout& layout, const CnfFormula& f,
                                            const Assignment& phi);

/// Reads the assignment back from a near-shortest (s1,t1)-path: using the
/// true-side path of gadget i means x_i = 0. Throws InputError when p1
/// touches clause machinery, mixes sides, or has wrong endpoints.
Assignment linkage_to_assignment(const GadgetLayout& layout, const Path& p1);

// Sidecar role-map file: one `v <vertex> <role>` line per vertex, 1-indexed.
std::string serialize_roles(const GadgetLayout& layout);

/// Replaces every arc by a directed path whose length is the difference of
/// its endpoints' positions in the smallest-index-first topological order,
/// making every walk between original vertices a shortest walk. Original
/// vertex ids are preserved; internals are appended. Throws InputError on
/// cyclic input.
Digraph subdivide_for_w1(const Digraph& g);

/// Appends target_n - n isolated vertices (throws InputError if target_n < n).
Digraph pad_vertices(const Digraph& g, int target_n);

/// The padded order 2^(n^(1/(1+eps))) from the lower-bound argument, rounded
/// up; nullopt when it does not fit in 62 bits. Documentation parity only —
/// real padding always takes an explicit target size.
std::optional<std::int64_t> eth_padded_order(int n, double eps);

/// Seeded reproducible random instance: each ordered non-loop pair becomes
/// an arc with probability p; terminals are sampled among ordered pairs with
/// finite distance when any exist, otherwise among distinct pairs.
std::pair<Digraph, LinkageQuery> gen_random_instance(std::uint64_t seed, int n,
                                                     double arc_probability, std::int64_t k1,
                                                     std::int64_t k2);

/// splitmix64; the project-wide deterministic RNG (identical across
/// platforms, unlike <random> distributions).
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  std::uint64_t below(std::uint64_t bound) { return bound ? next() % bound : 0; }
};

}  // namespace sw2l
