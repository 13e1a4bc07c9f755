#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "sw2l/errors.hpp"

namespace sw2l {

struct Occurrence {
  int clause;  // 0-based clause index
  int slot;    // 0-based literal position within the clause
};

/// A 3-CNF formula with per-variable occurrence bookkeeping. Literals are
/// signed 1-based variable indices. Every variable appears in at least one
/// clause and every clause has exactly three literals (repeats allowed).
struct CnfFormula {
  int num_vars = 0;
  std::vector<std::array<int, 3>> clauses;
  // Occurrence lists in clause order, then slot order within a clause.
  std::vector<std::vector<Occurrence>> pos_occ;  // of literal  x_i, index i-1
  std::vector<std::vector<Occurrence>> neg_occ;  // of literal ~x_i
  std::vector<int> occ_max;  // a_i = max(|pos_occ|, |neg_occ|), index i-1

  int clause_count() const { return static_cast<int>(clauses.size()); }
};

/// DIMACS CNF reader (`c` comments, `p cnf <n> <m>` header, zero-terminated
/// clauses). Rejects clauses that do not have exactly three literals and
/// variables that appear in no clause.
CnfFormula parse_dimacs_cnf(std::string_view text);

// Builds the bookkeeping tables from a raw clause list (validates arity,
// ranges and the every-variable-appears rule).
CnfFormula make_cnf(int num_vars, const std::vector<std::array<int, 3>>& clauses);

struct Assignment {
  std::vector<bool> value;  // value[i] is x_{i+1}

  bool satisfies_clause(const std::array<int, 3>& clause) const;
  bool satisfies(const CnfFormula& f) const;
  // 0-based index of the first clause violated, or -1 if none.
  int first_violated_clause(const CnfFormula& f) const;
};

}  // namespace sw2l
