#include "sw2l/cnf.hpp"

#include <charconv>
#include <cstdlib>

namespace sw2l {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

int parse_lit(std::string_view tok, int line) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(line, "expected literal, got '" + std::string(tok) + "'");
  return value;
}

}  // namespace

CnfFormula make_cnf(int num_vars, const std::vector<std::array<int, 3>>& clauses) {
  if (num_vars < 0) throw InputError("negative variable count");
  CnfFormula f;
  f.num_vars = num_vars;
  f.clauses = clauses;
  f.pos_occ.assign(static_cast<size_t>(num_vars), {});
  f.neg_occ.assign(static_cast<size_t>(num_vars), {});
  for (int j = 0; j < f.clause_count(); ++j)
    for (int slot = 0; slot < 3; ++slot) {
      int lit = f.clauses[static_cast<size_t>(j)][static_cast<size_t>(slot)];
      int var = std::abs(lit);
      if (var < 1 || var > num_vars)
        throw InputError("literal " + std::to_string(lit) + " out of range in clause " +
                         std::to_string(j + 1));
      auto& list = lit > 0 ? f.pos_occ[static_cast<size_t>(var - 1)]
                           : f.neg_occ[static_cast<size_t>(var - 1)];
      list.push_back({j, slot});
    }
  f.occ_max.resize(static_cast<size_t>(num_vars));
  for (int i = 0; i < num_vars; ++i) {
    size_t p = f.pos_occ[static_cast<size_t>(i)].size();
    size_t q = f.neg_occ[static_cast<size_t>(i)].size();
    if (p + q == 0)
      throw InputError("variable x" + std::to_string(i + 1) + " appears in no clause");
    f.occ_max[static_cast<size_t>(i)] = static_cast<int>(p > q ? p : q);
  }
  return f;
}

CnfFormula parse_dimacs_cnf(std::string_view text) {
  int num_vars = -1;
  std::int64_t declared_clauses = 0;
  std::vector<std::array<int, 3>> clauses;
  std::vector<int> current;
  int line_no = 0;

  size_t pos = 0;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                                           : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    auto toks = split_ws(line);
    if (toks.empty() || toks[0][0] == 'c' || toks[0][0] == '%') continue;

    if (toks[0] == "p") {
      if (num_vars >= 0) throw ParseError(line_no, "duplicate header");
      if (toks.size() != 4 || toks[1] != "cnf")
        throw ParseError(line_no, "malformed header, expected 'p cnf <vars> <clauses>'");
      num_vars = parse_lit(toks[2], line_no);
      declared_clauses = parse_lit(toks[3], line_no);
      if (num_vars < 0 || declared_clauses < 0)
        throw ParseError(line_no, "negative count in header");
      continue;
    }
    if (num_vars < 0) throw ParseError(line_no, "clause before header");
    for (auto tok : toks) {
      int lit = parse_lit(tok, line_no);
      if (lit == 0) {
        if (current.size() != 3)
          throw ParseError(line_no, "clause " + std::to_string(clauses.size() + 1) + " has " +
                                        std::to_string(current.size()) +
                                        " literals, expected exactly 3");
        clauses.push_back({current[0], current[1], current[2]});
        current.clear();
      } else {
        if (std::abs(lit) > num_vars)
          throw ParseError(line_no, "literal " + std::to_string(lit) + " out of range 1.." +
                                        std::to_string(num_vars));
        current.push_back(lit);
      }
    }
  }

  if (num_vars < 0) throw ParseError(0, "missing header");
  if (!current.empty()) throw ParseError(0, "unterminated clause at end of file");
  if (static_cast<std::int64_t>(clauses.size()) != declared_clauses)
    throw ParseError(0, "header declares " + std::to_string(declared_clauses) +
                            " clauses, file has " + std::to_string(clauses.size()));
  try {
    return make_cnf(num_vars, clauses);
  } catch (const InputError& e) {
    throw ParseError(0, e.what());
  }
}

bool Assignment::satisfies_clause(const std::array<int, 3>& clause) const {
  for (int lit : clause) {
    bool v = value[static_cast<size_t>(std::abs(lit) - 1)];
    if ((lit > 0) == v) return true;
  }
  return false;
}

bool Assignment::satisfies(const CnfFormula& f) const { return first_violated_clause(f) < 0; }

int Assignment::first_violated_clause(const CnfFormula& f) const {
  for (int j = 0; j < f.clause_count(); ++j)
    if (!satisfies_clause(f.clauses[static_cast<size_t>(j)])) return j;
  return -1;
}

}  // namespace sw2l
