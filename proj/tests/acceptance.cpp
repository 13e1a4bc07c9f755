// Acceptance suite: nine end-to-end criteria, one pass/fail line each.
// Drives the CLI binary for everything observable from the outside
// (answers, certificates, reports) and the library for the rest.
//
//   acceptance --cli <path-to-binary> [--workdir DIR] [--only N]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sw2l/cnf.hpp"
#include "sw2l/digraph.hpp"
#include "sw2l/gadgets.hpp"
#include "sw2l/levels.hpp"
#include "sw2l/oracle.hpp"
#include "sw2l/solver.hpp"
#include "testutil.hpp"

using json = nlohmann::json;
using namespace sw2l;

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

struct Ctx {
  std::string cli;
  std::string dir;
};

RunResult run(const Ctx& ctx, const std::string& args) {
  std::string cmd = ctx.cli + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {127, ""};
  std::string out;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void put(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

struct SweepRecord {
  std::string instance_path;
  std::string cert_path;
  std::uint64_t seed;
  int n;
  std::int64_t k1, k2;
  bool yes = false;
};

// criterion 1 state shared with criteria 5, 8 and 9
struct SweepState {
  std::vector<SweepRecord> records;
  std::int64_t aux_checks = 0;
  std::int64_t aux_violations = 0;
  bool ran = false;
};

constexpr double kArcProbability = 0.3;

void sweep_params(int i, std::uint64_t& seed, int& n, std::int64_t& k1, std::int64_t& k2) {
  seed = 1000 + static_cast<std::uint64_t>(i);
  n = 4 + i % 7;
  k1 = (i / 7) % 3;
  k2 = (i / 21) % 3;
}

bool criterion1(const Ctx& ctx, SweepState& st, std::string& detail) {
  int agree = 0, yes_count = 0, verified = 0;
  for (int i = 0; i < 300; ++i) {
    std::uint64_t seed;
    int n;
    std::int64_t k1, k2;
    sweep_params(i, seed, n, k1, k2);
    auto [g, q] = gen_random_instance(seed, n, kArcProbability, k1, k2);

    SweepRecord rec;
    rec.seed = seed;
    rec.n = n;
    rec.k1 = k1;
    rec.k2 = k2;
    rec.instance_path = ctx.dir + "/c1_" + std::to_string(i) + ".graph";
    rec.cert_path = ctx.dir + "/c1_" + std::to_string(i) + ".t1.cert";
    put(rec.instance_path, serialize_instance(g, q));

    auto solve_run = run(ctx, "solve " + rec.instance_path + " --threads 1 --json" +
                                  " --emit-certificate " + rec.cert_path);
    auto oracle_run = run(ctx, "oracle " + rec.instance_path + " --mode sw2l --json");
    if (solve_run.exit_code != 0 || oracle_run.exit_code != 0) {
      detail = "instance " + std::to_string(i) + ": non-zero exit";
      return false;
    }
    json s = json::parse(solve_run.out, nullptr, false);
    json o = json::parse(oracle_run.out, nullptr, false);
    if (s.is_discarded() || o.is_discarded()) {
      detail = "instance " + std::to_string(i) + ": bad json";
      return false;
    }
    st.aux_checks += s["aux_checks"].get<std::int64_t>();
    st.aux_violations += s["aux_violations"].get<std::int64_t>();
    std::string sa = s["answer"], oa = o["answer"];
    if (sa != oa) {
      detail = "instance " + std::to_string(i) + " (seed " + std::to_string(seed) +
               "): solve=" + sa + " oracle=" + oa;
      return false;
    }
    ++agree;
    rec.yes = sa == "YES";
    if (rec.yes) {
      ++yes_count;
      auto v = run(ctx, "verify " + rec.instance_path + " " + rec.cert_path);
      if (v.exit_code != 0 || v.out != "valid\n") {
        detail = "instance " + std::to_string(i) + ": certificate rejected: " + v.out;
        return false;
      }
      ++verified;
    }
    st.records.push_back(rec);
  }
  st.ran = true;
  detail = "300/300 agree, " + std::to_string(yes_count) + " YES all verified";
  return agree == 300 && verified == yes_count;
}

bool criterion2(const Ctx&, std::string& detail) {
  SplitMix64 rng(20202);
  int checked = 0;
  for (int i = 0; i < 200; ++i) {
    int n = 4 + i % 5;  // up to 8
    Digraph g = testutil::random_dag(3000 + static_cast<std::uint64_t>(i), n, 0.35);
    WeakLinkageInstance inst;
    inst.graph = g;
    int pairs = 1 + i % 3;
    for (int p = 0; p < pairs; ++p) {
      Vertex s = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(n)));
      Vertex t = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(n)));
      std::optional<std::int64_t> cap;
      std::int64_t d = bfs_dist_from(g, s)[static_cast<size_t>(t)];
      if (reachable(d) && rng.below(2) == 0) cap = d + static_cast<std::int64_t>(rng.below(3));
      inst.pairs.push_back({s, t, cap});
    }
    bool expected = testutil::exhaustive_linkage(g, inst.pairs);
    auto got = acyclic_weak_k_linkage(inst);
    if (got.has_value() != expected) {
      detail = "instance " + std::to_string(i) + ": solver=" +
               (got ? "YES" : "NO") + std::string(" enumeration=") + (expected ? "YES" : "NO");
      return false;
    }
    if (got) {
      for (size_t a = 0; a < inst.pairs.size(); ++a) {
        const Path& p = (*got)[a];
        if (p.source() != inst.pairs[a].s || p.target() != inst.pairs[a].t ||
            !p.arc_ids_in(g).has_value() ||
            (inst.pairs[a].cap && p.length() > *inst.pairs[a].cap)) {
          detail = "instance " + std::to_string(i) + ": bad certificate path";
          return false;
        }
        for (size_t b = a + 1; b < inst.pairs.size(); ++b)
          if (!testutil::arcs_disjoint(g, p, (*got)[b])) {
            detail = "instance " + std::to_string(i) + ": certificate paths share an arc";
            return false;
          }
      }
    }
    ++checked;
  }
  detail = std::to_string(checked) + "/200 DAG instances agree with tuple enumeration";
  return checked == 200;
}

CnfFormula fixture_formula() {
  return make_cnf(4, {{2, 3, 4}, {-1, 3, -4}, {1, -2, -3}, {1, 2, -4}});
}

CnfFormula random_3cnf(std::uint64_t seed) {
  SplitMix64 rng(seed);
  while (true) {
    int n = 2 + static_cast<int>(rng.below(3));  // up to 4
    int m = 2 + static_cast<int>(rng.below(3));  // up to 4
    std::vector<std::array<int, 3>> clauses;
    for (int j = 0; j < m; ++j) {
      std::array<int, 3> c{};
      for (int s = 0; s < 3; ++s) {
        int var = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        c[static_cast<size_t>(s)] = rng.below(2) ? var : -var;
      }
      clauses.push_back(c);
    }
    std::vector<bool> seen(static_cast<size_t>(n), false);
    for (const auto& c : clauses)
      for (int lit : c) seen[static_cast<size_t>(std::abs(lit) - 1)] = true;
    bool all = true;
    for (bool b : seen) all = all && b;
    if (all) return make_cnf(n, clauses);
  }
}

std::string dimacs_of(const CnfFormula& f) {
  std::ostringstream out;
  out << "p cnf " << f.num_vars << ' ' << f.clause_count() << '\n';
  for (const auto& c : f.clauses) out << c[0] << ' ' << c[1] << ' ' << c[2] << " 0\n";
  return out.str();
}

bool criterion3(const Ctx& ctx, std::string& detail) {
  std::vector<CnfFormula> formulas{fixture_formula()};
  for (int i = 0; i < 20; ++i)
    formulas.push_back(random_3cnf(4000 + static_cast<std::uint64_t>(i)));

  int runs = 0, sat_side = 0;
  for (size_t fi = 0; fi < formulas.size(); ++fi) {
    const CnfFormula& f = formulas[fi];
    auto sat = sat_brute_force(f);
    for (std::int64_t k : {0, 1}) {
      std::string cnf_path = ctx.dir + "/c3_" + std::to_string(fi) + ".cnf";
      put(cnf_path, dimacs_of(f));
      std::string prefix =
          ctx.dir + "/c3_" + std::to_string(fi) + "_k" + std::to_string(k);
      auto red = run(ctx, "reduce-cnf " + cnf_path + " --k " + std::to_string(k) + " --out " +
                              prefix + " --json");
      if (red.exit_code != 0) {
        detail = "reduce-cnf failed on formula " + std::to_string(fi);
        return false;
      }
      std::string cert = prefix + ".cert";
      auto orc = run(ctx, "oracle " + prefix + ".graph --mode ssw2l --k " + std::to_string(k) +
                              " --emit-certificate " + cert);
      if (orc.exit_code != 0) {
        detail = "ssw2l oracle failed on formula " + std::to_string(fi);
        return false;
      }
      bool linkage_yes = orc.out == "s YES\n";
      if (linkage_yes != sat.has_value()) {
        detail = "formula " + std::to_string(fi) + " k=" + std::to_string(k) +
                 ": sat=" + (sat ? "YES" : "NO") + " linkage=" + (linkage_yes ? "YES" : "NO");
        return false;
      }
      ++runs;
      if (!sat) continue;
      ++sat_side;

      GadgetLayout layout = build_ssw2l_gadget(f, k);
      auto [p1, p2] = assignment_to_linkage(layout, f, *sat);
      auto dist = bfs_dist_from(layout.graph, layout.s1);
      std::int64_t cap1 = dist[static_cast<size_t>(layout.t1)] + k;
      if (!verify_with_caps(layout.graph, layout.s1, layout.t1, layout.s2, layout.t2, cap1,
                            std::nullopt, p1, p2)
               .ok) {
        detail = "formula " + std::to_string(fi) + ": forward construction rejected";
        return false;
      }
      Assignment round = linkage_to_assignment(layout, p1);
      if (!round.satisfies(f)) {
        detail = "formula " + std::to_string(fi) + ": round trip lost satisfaction";
        return false;
      }
      // the oracle's own certificate decodes to a satisfying assignment
      Certificate c = parse_certificate(slurp(cert), layout.graph);
      Assignment decoded = linkage_to_assignment(layout, c.p1);
      if (!decoded.satisfies(f)) {
        detail = "formula " + std::to_string(fi) + ": oracle certificate decodes badly";
        return false;
      }
    }
  }
  detail = std::to_string(runs) + " gadget decisions, biconditional + round trips hold (" +
           std::to_string(sat_side) + " on the YES side)";
  return true;
}

bool criterion4(const Ctx& ctx, std::string& detail) {
  std::string cnf_path = ctx.dir + "/c4.cnf";
  put(cnf_path, dimacs_of(fixture_formula()));
  std::string prefix = ctx.dir + "/c4";
  auto red = run(ctx, "reduce-cnf " + cnf_path + " --k 1 --out " + prefix + " --json");
  if (red.exit_code != 0) {
    detail = "reduce-cnf failed";
    return false;
  }
  json r = json::parse(red.out, nullptr, false);
  if (r.is_discarded()) {
    detail = "bad json";
    return false;
  }
  // recompute everything from the emitted artifacts
  GadgetLayout layout = build_ssw2l_gadget(fixture_formula(), 1);
  Instance emitted = parse_instance(slurp(prefix + ".graph"));
  auto dist = bfs_dist_from(emitted.graph, 0);  // s1 is vertex 0 by construction
  std::int64_t d1 = dist[static_cast<size_t>(layout.t1)];
  bool ok = r["pre_subdivision_vertices"] == 52 && r["clause_path_arcs"] == 26 &&
            r["d_s1_t1"] == 25 && layout.pre_subdivision_vertex_count() == 52 &&
            layout.subdivision_count + 1 == 26 && d1 == 25;
  detail = "pre-subdivision=" + std::to_string(layout.pre_subdivision_vertex_count()) +
           " clause-path-arcs=" + std::to_string(layout.subdivision_count + 1) +
           " d(s1,t1)=" + std::to_string(d1) + " (want 52 / 26 / 25)";
  return ok;
}

bool criterion5(const Ctx&, SweepState& st, std::string& detail) {
  if (!st.ran) {
    detail = "criterion 1 did not run";
    return false;
  }
  detail = "auxiliary distance checks=" + std::to_string(st.aux_checks) +
           " violations=" + std::to_string(st.aux_violations);
  return st.aux_checks > 0 && st.aux_violations == 0;
}

bool criterion6(const Ctx&, std::string& detail) {
  SplitMix64 rng(60606);
  std::int64_t sampled = 0, violations = 0;
  std::uint64_t seed = 7000;
  while (sampled < 10000) {
    auto [g, q] = gen_random_instance(seed++, 10, kArcProbability, 0, 0);
    for (int tries = 0; tries < 25 && sampled < 10000; ++tries) {
      Vertex s = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(g.vertex_count())));
      auto p = testutil::random_path(g, rng, s);
      if (!p) continue;
      LevelDecomposition ld = bfs_levels(g, s);
      std::int64_t d = ld.dist[static_cast<size_t>(p->target())];
      if (off_dag_arc_count(g, ld, *p) > p->length() - d) ++violations;
      ++sampled;
    }
  }
  detail = std::to_string(sampled) + " sampled paths, " + std::to_string(violations) +
           " violations";
  return sampled >= 10000 && violations == 0;
}

bool criterion7(const Ctx&, std::string& detail) {
  std::int64_t pairs_checked = 0, violations = 0;
  for (int i = 0; i < 50; ++i) {
    int n = 5 + i % 6;
    Digraph g = testutil::random_dag(8000 + static_cast<std::uint64_t>(i), n, 0.35);
    auto order = topo_order(g);
    std::vector<int> pos(static_cast<size_t>(n));
    for (size_t j = 0; j < order->size(); ++j)
      pos[static_cast<size_t>((*order)[j])] = static_cast<int>(j);
    Digraph out = subdivide_for_w1(g);
    for (Vertex u = 0; u < n; ++u) {
      auto dist = bfs_dist_from(out, u);
      auto longest = testutil::dag_longest_from(out, u);
      for (Vertex v = 0; v < n; ++v) {
        if (u == v || !reachable(dist[static_cast<size_t>(v)])) continue;
        std::int64_t gap = pos[static_cast<size_t>(v)] - pos[static_cast<size_t>(u)];
        ++pairs_checked;
        if (dist[static_cast<size_t>(v)] != gap || longest[static_cast<size_t>(v)] != gap)
          ++violations;
      }
    }
  }
  detail = std::to_string(pairs_checked) + " vertex pairs over 50 DAGs, " +
           std::to_string(violations) + " violations";
  return pairs_checked > 0 && violations == 0;
}

bool criterion8(const Ctx& ctx, SweepState& st, std::string& detail) {
  if (!st.ran) {
    detail = "criterion 1 did not run";
    return false;
  }
  int compared = 0;
  for (const SweepRecord& rec : st.records) {
    std::string base = slurp(rec.cert_path);
    for (int threads : {4, 8}) {
      std::string cert = rec.cert_path + ".t" + std::to_string(threads);
      auto r = run(ctx, "solve " + rec.instance_path + " --threads " +
                            std::to_string(threads) + " --emit-certificate " + cert);
      if (r.exit_code != 0 || slurp(cert) != base) {
        detail = "seed " + std::to_string(rec.seed) + " threads=" + std::to_string(threads) +
                 ": certificate differs";
        return false;
      }
    }
    ++compared;
  }
  detail = std::to_string(compared) + " instances byte-identical at threads 1/4/8";
  return compared == static_cast<int>(st.records.size());
}

bool criterion9(const Ctx&, SweepState& st, std::string& detail) {
  if (!st.ran) {
    detail = "criterion 1 did not run";
    return false;
  }
  std::vector<std::pair<Digraph, LinkageQuery>> yes_instances;
  for (const SweepRecord& rec : st.records)
    if (rec.yes && yes_instances.size() < 100)
      yes_instances.push_back(
          gen_random_instance(rec.seed, rec.n, kArcProbability, rec.k1, rec.k2));
  std::uint64_t extra_seed = 9000;
  while (yes_instances.size() < 100 && extra_seed < 12000) {
    int n = 4 + static_cast<int>(extra_seed % 7);
    auto inst = gen_random_instance(extra_seed, n, kArcProbability,
                                    static_cast<std::int64_t>(extra_seed % 3),
                                    static_cast<std::int64_t>((extra_seed / 3) % 3));
    ++extra_seed;
    if (solve(inst.first, inst.second).status == SolveStatus::Yes)
      yes_instances.push_back(std::move(inst));
  }
  if (yes_instances.size() < 100) {
    detail = "could not collect 100 YES instances";
    return false;
  }
  for (size_t i = 0; i < yes_instances.size(); ++i) {
    const auto& [g, q] = yes_instances[i];
    LinkageQuery up1 = q, up2 = q;
    up1.k1 += 1;
    up2.k2 += 1;
    if (solve(g, up1).status != SolveStatus::Yes ||
        solve(g, up2).status != SolveStatus::Yes) {
      detail = "instance " + std::to_string(i) + ": YES lost after raising slack";
      return false;
    }
  }
  detail = "100 YES instances stay YES at (k1+1,k2) and (k1,k2+1)";
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  Ctx ctx;
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg == "--cli" && i + 1 < argc)
      ctx.cli = argv[++i];
    else if (arg == "--workdir" && i + 1 < argc)
      ctx.dir = argv[++i];
    else if (arg == "--only" && i + 1 < argc)
      only = std::atoi(argv[++i]);
    else {
      std::cerr << "usage: acceptance --cli <binary> [--workdir DIR] [--only N]\n";
      return 2;
    }
  }
  if (ctx.cli.empty()) {
    std::cerr << "acceptance: --cli is required\n";
    return 2;
  }
  if (ctx.dir.empty()) {
    char tmpl[] = "/tmp/sw2l_acceptance_XXXXXX";
    char* d = mkdtemp(tmpl);
    if (!d) {
      std::cerr << "acceptance: cannot create workdir\n";
      return 2;
    }
    ctx.dir = d;
  }

  SweepState sweep;
  struct Criterion {
    int number;
    const char* label;
    std::function<bool(std::string&)> fn;
  };
  std::vector<Criterion> criteria{
      {1, "oracle equivalence on 300 random instances",
       [&](std::string& d) { return criterion1(ctx, sweep, d); }},
      {2, "acyclic linkage matches tuple enumeration on 200 DAGs",
       [&](std::string& d) { return criterion2(ctx, d); }},
      {3, "gadget biconditional with round-trip converters",
       [&](std::string& d) { return criterion3(ctx, d); }},
      {4, "gadget geometry of the fixture formula",
       [&](std::string& d) { return criterion4(ctx, d); }},
      {5, "auxiliary distance law across the sweep",
       [&](std::string& d) { return criterion5(ctx, sweep, d); }},
      {6, "off-DAG arc bound over 10000 sampled paths",
       [&](std::string& d) { return criterion6(ctx, d); }},
      {7, "subdivision transform flattens 50 DAGs",
       [&](std::string& d) { return criterion7(ctx, d); }},
      {8, "byte-identical certificates at thread counts 1/4/8",
       [&](std::string& d) { return criterion8(ctx, sweep, d); }},
      {9, "monotonicity in the slack on 100 YES instances",
       [&](std::string& d) { return criterion9(ctx, sweep, d); }},
  };

  int failures = 0;
  for (auto& c : criteria) {
    if (only != 0 && c.number != only && !(c.number == 1 && (only == 5 || only == 8 || only == 9)))
      continue;
    auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = c.fn(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char line[640];
    std::snprintf(line, sizeof line, "[%s] criterion %d: %s -- %s (%.1fs)",
                  ok ? "PASS" : "FAIL", c.number, c.label, detail.c_str(), secs);
    std::cout << line << std::endl;
    if (!ok) ++failures;
  }
  if (failures) {
    std::cout << failures << " criterion(s) failed" << std::endl;
    return 1;
  }
  std::cout << "all criteria passed" << std::endl;
  return 0;
}
