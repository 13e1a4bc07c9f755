#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "sw2l/cnf.hpp"
#include "sw2l/digraph.hpp"
#include "sw2l/solver.hpp"

namespace sw2l {

// Ground-truth solvers. They favor clarity over speed: plain depth-first
// enumeration with admissible distance pruning only, deterministic ascending
// arc-id search order, and explicit size guards.

struct OracleLimits {
  int max_n = 14;                       // brute_force_sw2l vertex guard
  std::int64_t node_budget = 50000000;  // DFS expansion guard for ssw2l_solve
  std::int64_t state_budget = 5000000;  // pebble-state guard for the acyclic solver
};

/// Exhaustive search for the two-sided length-bounded instance: enumerates
/// every (s1,t1)-path of length <= d(s1,t1)+k1 and, per candidate, searches
/// for an arc-disjoint (s2,t2)-path of length <= d(s2,t2)+k2 in the residual
/// graph. Throws LimitError when the graph exceeds max_n vertices.
std::optional<std::pair<Path, Path>> brute_force_sw2l(const Digraph& g, const LinkageQuery& q,
                                                      const OracleLimits& limits = {});

/// Semi-short variant: only side 1 is length-bounded (<= d(s1,t1)+k); side 2
/// is decided by one reachability search per candidate. No vertex guard —
/// the cost scales with the bounded-side search frontier, so subdivision-
/// heavy graphs are fine. node_budget caps the frontier instead.
std::optional<std::pair<Path, Path>> ssw2l_solve(const Digraph& g, Vertex s1, Vertex t1,
                                                 Vertex s2, Vertex t2, std::int64_t k,
                                                 const OracleLimits& limits = {});

struct PairRequest {
  Vertex s, t;
  std::optional<std::int64_t> cap;  // max path length in arcs; absent = unbounded
};

struct WeakLinkageInstance {
  Digraph graph;
  std::vector<PairRequest> pairs;
};

/// Exact arc-disjoint k-linkage on acyclic digraphs: one token per terminal
/// pair advances over the arc-adjacency graph in topological order (always
/// the topologically least unfinished token moves), with memoized state
/// tuples. Honors optional per-pair length caps. Throws InputError on cyclic
/// input, LimitError when state_budget is exceeded.
std::optional<std::vector<Path>> acyclic_weak_k_linkage(const WeakLinkageInstance& inst,
                                                        const OracleLimits& limits = {});

/// Tries all 2^n assignments in ascending binary order (x1 is the least
/// significant bit); returns the first satisfying one. Clauses may have any
/// arity here, including empty. Throws LimitError when num_vars > 24.
std::optional<Assignment> sat_brute_force(int num_vars,
                                          const std::vector<std::vector<int>>& clauses);
std::optional<Assignment> sat_brute_force(const CnfFormula& f);

}  // namespace sw2l
