#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sw2l/digraph.hpp"
#include "sw2l/levels.hpp"

namespace sw2l {

// The solver decides, for a query (s1,t1,k1),(s2,t2,k2), whether the graph
// has arc-disjoint paths P1, P2 with |A(Pi)| <= d(si,ti) + ki. Candidates
// are "exception sequences": the ordered off-DAG arcs a near-shortest path
// is allowed to use (at most ki of them). For each feasible pair of
// sequences an auxiliary graph with four fresh terminals turns the stitched
// near-shortest paths into exactly-shortest ones, and an exact inner search
// finds |E1|+1 plus |E2|+1 pairwise arc-disjoint shortest paths there.

/// Ordered list of arcs outside the side's shortest-arc set that a candidate
/// path uses, in traversal order. `slack_used` is the feasibility chain sum
/// minus d(s,t) for the side.
struct ExceptionSequence {
  int side = 1;  // 1 or 2
  std::vector<ArcId> arcs;
  std::int64_t slack_used = 0;
};

/// Evaluates the chained in-DAG distance sum through the sequence endpoints
/// for both sides: s -> tail(e[0]) -> head(e[0]) -> tail(e[1]) -> ... -> t,
/// where the hops between exception arcs run inside the side's shortest-arc
/// DAG. True iff both sums are finite and within d(s,t)+k.
bool feasibility_check(const Digraph& g, const ExceptionSequence& e1, const ExceptionSequence& e2,
                       const LevelDecomposition& ld1, const LevelDecomposition& ld2,
                       const LinkageQuery& q);

/// Canonical-order stream of feasible exception-sequence pairs:
/// by |E1|+|E2| ascending, then lexicographically by E1's arc-id tuple,
/// then by E2's (std::vector comparison semantics). Every feasible pair is
/// produced exactly once. `arcs_overlap` flags pairs whose sequences share
/// an arc; such pairs can never witness a solution and the solver skips
/// their inner search.
class ExceptionPairEnumerator {
 public:
  ExceptionPairEnumerator(const Digraph& g, const LinkageQuery& q,
                          const LevelDecomposition& ld1, const LevelDecomposition& ld2);

  struct Item {
    ExceptionSequence e1, e2;
    bool arcs_overlap = false;
    std::int64_t index = 0;  // 0-based canonical position
  };

  std::optional<Item> next();
  std::int64_t emitted() const { return emitted_; }

  // Feasible per-side sequence counts (after the per-side inequality filter).
  std::int64_t side_count(int side) const {
    return static_cast<std::int64_t>(side_[side - 1].seqs.size());
  }

 private:
  struct SideList {
    std::vector<ExceptionSequence> seqs;          // global lex order
    std::vector<std::vector<int>> index_by_len;   // positions into seqs, per length
  };

  void build_side(const Digraph& g, Vertex s, Vertex t, std::int64_t k,
                  const LevelDecomposition& ld, int side);
  bool advance();

  SideList side_[2];
  std::int64_t k_total_ = 0;
  // iteration state
  std::int64_t total_ = 0;
  size_t i1_ = 0;
  size_t j2_ = 0;
  bool done_ = false;
  std::int64_t emitted_ = 0;
};

/// Tag for vertices of the auxiliary graph.
struct VertexOrigin {
  enum Kind { Original, AddedTerminal, ConnectorInternal };
  Kind kind = Original;
  int side = 0;        // 1 or 2 for connector internals
  Vertex anchor = -1;  // the original vertex the connector attaches to
  int pos = 0;         // 1-based position along the connector
};

/// The input graph plus four fresh terminals, each joined to its side's
/// anchor vertices by calibrated-length connector paths with fresh internal
/// vertices. Arc ids < orig_m are exactly the original arcs.
struct AuxiliaryGraph {
  Digraph graph;
  Vertex s1p = -1, t1p = -1, s2p = -1, t2p = -1;
  std::vector<VertexOrigin> origin;
  std::vector<signed char> arc_side;  // per arc: 0 original, else connector side
  std::int64_t shortest_len_1 = 0;    // d(s1,t1) + 2
  std::int64_t shortest_len_2 = 0;
  int orig_n = 0;
  int orig_m = 0;
  LinkageQuery query{};
  // anchor vertices in insertion order (source/terminal first), per side,
  // with the length of each attached connector
  std::vector<Vertex> out_anchors_1, in_anchors_1, out_anchors_2, in_anchors_2;
  std::vector<std::int64_t> out_lens_1, in_lens_1, out_lens_2, in_lens_2;

  // Sum of the side's connector lengths: the added-arc count its inner
  // paths must spend.
  std::int64_t added_arc_total(int side) const {
    std::int64_t total = 0;
    for (std::int64_t len : side == 1 ? out_lens_1 : out_lens_2) total += len;
    for (std::int64_t len : side == 1 ? in_lens_1 : in_lens_2) total += len;
    return total;
  }
};

/// Builds the auxiliary graph for a feasible pair: connectors from s1' to
/// {s1} and every exception-arc head of side 1 (length d(s1,x)+1), from
/// {t1} and every exception-arc tail to t1' (length d(x,t1)+1), and the
/// symmetric side-2 connectors. Throws InternalError if a required distance
/// is unreachable (cannot happen for feasible sequences).
AuxiliaryGraph build_auxiliary(const Digraph& g, const LinkageQuery& q,
                               const ExceptionSequence& e1, const ExceptionSequence& e2);

// Variant reusing precomputed decompositions and reverse distances.
AuxiliaryGraph build_auxiliary(const Digraph& g, const LinkageQuery& q,
                               const ExceptionSequence& e1, const ExceptionSequence& e2,
                               const LevelDecomposition& ld1, const LevelDecomposition& ld2,
                               const std::vector<std::int64_t>& dist_to_t1,
                               const std::vector<std::int64_t>& dist_to_t2);

/// Inner instance: per side, the usable arc set — the side's shortest-arc
/// set with all exception arcs of both sides removed (an exception arc is
/// owned by its sequence's path, so no inner path may use it), plus the
/// side's own connectors — and the required path counts a1 = |E1|+1,
/// a2 = |E2|+1. Any (s',t')-path inside the side's set is one connector, a
/// run of level arcs, and one connector, so its original-arc spend is fixed
/// by its anchor pair; the feasibility inequality is what bounds the total.
struct InnerInstance {
  const AuxiliaryGraph* aux = nullptr;
  int a1 = 1, a2 = 1;
  std::vector<char> dag1, dag2;  // indexed by aux arc id
};

/// Also asserts the auxiliary distance law (shortest primed distance equals
/// d(s,t)+2 per side, by BFS) and inner-DAG purity; violations throw
/// InternalError.
InnerInstance build_inner(const AuxiliaryGraph& aux, const ExceptionSequence& e1,
                          const ExceptionSequence& e2, const LevelDecomposition& ld1,
                          const LevelDecomposition& ld2);

/// Exact search for a1 (s1',t1')-paths inside dag1 and a2 (s2',t2')-paths
/// inside dag2, all a1+a2 pairwise arc-disjoint. Branches over the shared
/// arcs dag1 & dag2 (side 1 / side 2 / neither), pruning a branch when
/// either side's unit-capacity max-flow drops below its path count. Returns
/// the side-1 paths followed by the side-2 paths, or nullopt exactly when no
/// such family exists.
std::optional<std::vector<Path>> inner_solve(const InnerInstance& inst);

struct ReconstructInfo {
  std::int64_t stitched_arc_count = 0;
  std::int64_t connector_arc_total = 0;  // N for the side: sum of connector lengths
};

/// Strips connector vertices from the side's inner paths, unions the
/// remaining original arcs with the exception arcs, and walks from s to t,
/// excising any cycles. The result has length <= d(s,t)+k. Throws
/// InternalError on degree-balance or arc-count violations (bugs, not input).
Path reconstruct_path(const std::vector<Path>& side_paths, const ExceptionSequence& e,
                      const AuxiliaryGraph& aux, ReconstructInfo* info = nullptr);

struct LinkageSolution {
  Path p1, p2;
  ExceptionSequence witness_e1, witness_e2;
  std::int64_t len1 = 0, len2 = 0;
  std::int64_t bound1 = 0, bound2 = 0;  // d(si,ti) + ki
};

struct SolveStats {
  std::int64_t feasible_pairs = 0;   // candidates examined, in canonical order
  std::int64_t inner_searches = 0;   // candidates whose inner search ran
  std::int64_t aux_checks = 0;       // auxiliary shortest-distance assertions
  std::int64_t aux_violations = 0;   // always 0 unless an InternalError fired
};

struct SolveOptions {
  int threads = 1;
  std::optional<std::int64_t> candidate_limit;  // cap on examined pairs
};

enum class SolveStatus { Yes, No, Unknown };

struct SolveResult {
  SolveStatus status = SolveStatus::No;
  std::optional<LinkageSolution> solution;
  SolveStats stats;
};

/// Full decision procedure. Candidates are evaluated in canonical order;
/// under parallel evaluation the accepted candidate is the one with minimal
/// canonical index among successes, so output is identical for any thread
/// count. Unknown is only possible when a candidate limit is set.
SolveResult solve(const Digraph& g, const LinkageQuery& q, const SolveOptions& opts = {});

/// Spec-shaped convenience wrapper (no options, Unknown impossible).
std::optional<LinkageSolution> solve_simple(const Digraph& g, const LinkageQuery& q);

enum class VerifyCode { Valid, BadEndpoint, NotPath, SharedArc, TooLong };

const char* verify_code_name(VerifyCode code);

struct VerifyResult {
  bool ok = false;
  VerifyCode code = VerifyCode::Valid;
};

/// Certificate checker, independent of the solver path: recomputes distances
/// from scratch and checks path validity, endpoints, arc-disjointness and
/// the two length bounds.
VerifyResult verify_solution(const Digraph& g, const LinkageQuery& q, const Path& p1,
                             const Path& p2);

/// Cap-explicit variant (absolute length caps; nullopt = unconstrained).
/// Used for semi-short instances where side 2 has no bound.
VerifyResult verify_with_caps(const Digraph& g, Vertex s1, Vertex t1, Vertex s2, Vertex t2,
                              std::optional<std::int64_t> cap1, std::optional<std::int64_t> cap2,
                              const Path& p1, const Path& p2);

}  // namespace sw2l
