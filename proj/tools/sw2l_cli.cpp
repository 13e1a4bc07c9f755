// Command-line front end: solvers, oracles, reduction/transform generators
// and the certificate verifier, over the instance/certificate file formats.
// Answers go to stdout (`s YES|NO|UNKNOWN`, `valid`/`invalid <reason>`),
// diagnostics to stderr; --json replaces stdout with one report object.
// Exit codes: 0 decided, 1 usage/parse error, 2 internal invariant violation.

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "sw2l/digraph.hpp"
#include "sw2l/gadgets.hpp"
#include "sw2l/oracle.hpp"
#include "sw2l/solver.hpp"

using json = nlohmann::json;
using namespace sw2l;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write file: " + path);
  out << content;
}

struct Clock {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

int default_threads() {
  if (const char* env = std::getenv("SW2L_THREADS")) {
    int value = std::atoi(env);
    if (value >= 1) return value;
  }
  return 1;
}

struct QueryFlags {
  std::optional<std::int64_t> s1, t1, s2, t2, k1, k2;

  void attach(CLI::App* cmd) {
    auto opt = [&](const char* name, std::optional<std::int64_t>& slot, const char* desc) {
      cmd->add_option_function<std::int64_t>(
          name, [&slot](std::int64_t v) { slot = v; }, desc);
    };
    opt("--s1", s1, "side-1 source (1-indexed), overrides the file query");
    opt("--t1", t1, "side-1 target (1-indexed)");
    opt("--s2", s2, "side-2 source (1-indexed)");
    opt("--t2", t2, "side-2 target (1-indexed)");
    opt("--k1", k1, "side-1 slack in arcs");
    opt("--k2", k2, "side-2 slack in arcs");
  }

  LinkageQuery resolve(const Instance& inst) const {
    auto pick_vertex = [&](const std::optional<std::int64_t>& flag,
                           std::optional<Vertex> from_file, const char* name) {
      if (flag) {
        if (*flag < 1 || *flag > inst.graph.vertex_count())
          throw InputError(std::string(name) + " out of range");
        return static_cast<Vertex>(*flag - 1);
      }
      if (from_file) return *from_file;
      throw InputError(std::string("instance has no query line; provide ") + name);
    };
    auto pick_slack = [&](const std::optional<std::int64_t>& flag,
                          std::optional<std::int64_t> from_file, const char* name) {
      std::int64_t v;
      if (flag)
        v = *flag;
      else if (from_file)
        v = *from_file;
      else
        throw InputError(std::string("instance has no query line; provide ") + name);
      if (v < 0) throw InputError(std::string(name) + " must be non-negative");
      return v;
    };
    const auto& fq = inst.query;
    LinkageQuery q{};
    q.s1 = pick_vertex(s1, fq ? std::optional<Vertex>(fq->s1) : std::nullopt, "--s1");
    q.t1 = pick_vertex(t1, fq ? std::optional<Vertex>(fq->t1) : std::nullopt, "--t1");
    q.s2 = pick_vertex(s2, fq ? std::optional<Vertex>(fq->s2) : std::nullopt, "--s2");
    q.t2 = pick_vertex(t2, fq ? std::optional<Vertex>(fq->t2) : std::nullopt, "--t2");
    q.k1 = pick_slack(k1, fq ? std::optional<std::int64_t>(fq->k1) : std::nullopt, "--k1");
    q.k2 = pick_slack(k2, fq ? std::optional<std::int64_t>(fq->k2) : std::nullopt, "--k2");
    return q;
  }
};

std::string join_args(int argc, char** argv) {
  std::string out;
  for (int i = 0; i < argc; ++i) {
    if (i) out += ' ';
    out += argv[i];
  }
  return out;
}

void emit(const json& report, bool as_json, const std::string& plain) {
  if (as_json)
    std::cout << report.dump() << '\n';
  else if (!plain.empty())
    std::cout << plain << '\n';
}

std::optional<std::string> maybe_write_certificate(const std::string& path,
                                                   const std::optional<Certificate>& cert) {
  if (path.empty() || !cert) return std::nullopt;
  write_file(path, serialize_certificate(*cert));
  return path;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"arc-disjoint near-shortest path pair toolkit"};
  app.require_subcommand(1);
  std::string command_echo = join_args(argc, argv);

  // ---- solve ----
  auto* solve_cmd =
      app.add_subcommand("solve", "decide an instance with the exception-pair solver");
  std::string solve_instance;
  solve_cmd->add_option("instance", solve_instance, "instance file")->required();
  QueryFlags solve_flags;
  solve_flags.attach(solve_cmd);
  int threads = default_threads();
  solve_cmd->add_option("--threads", threads, "worker count (default $SW2L_THREADS or 1)")
      ->check(CLI::PositiveNumber);
  std::string solve_cert_path;
  solve_cmd->add_option("--emit-certificate", solve_cert_path, "write the certificate file here");
  std::int64_t limit_candidates = -1;
  solve_cmd->add_option("--limit-candidates", limit_candidates,
                        "cap on examined exception pairs; hitting it yields UNKNOWN");
  bool solve_json = false;
  solve_cmd->add_flag("--json", solve_json, "emit a json report instead of plain output");

  // ---- oracle ----
  auto* oracle_cmd = app.add_subcommand("oracle", "ground-truth solvers (exhaustive search)");
  std::string oracle_instance;
  oracle_cmd->add_option("instance", oracle_instance, "instance file")->required();
  std::string mode = "sw2l";
  oracle_cmd->add_option("--mode", mode, "sw2l | ssw2l | acyclic")
      ->check(CLI::IsMember({"sw2l", "ssw2l", "acyclic"}));
  QueryFlags oracle_flags;
  oracle_flags.attach(oracle_cmd);
  std::optional<std::int64_t> oracle_k;
  oracle_cmd->add_option_function<std::int64_t>(
      "--k", [&](std::int64_t v) { oracle_k = v; },
      "ssw2l bounded-side slack (default: the query's k1)");
  int oracle_max_n = OracleLimits{}.max_n;
  oracle_cmd->add_option("--max-n", oracle_max_n, "sw2l oracle vertex guard (default 14)");
  std::string oracle_cert_path;
  oracle_cmd->add_option("--emit-certificate", oracle_cert_path, "write the certificate here");
  bool oracle_json = false;
  oracle_cmd->add_flag("--json", oracle_json, "emit a json report");

  auto* acyclic_cmd =
      app.add_subcommand("acyclic-linkage", "oracle --mode acyclic (token solver on a DAG)");
  std::string acyclic_instance;
  acyclic_cmd->add_option("instance", acyclic_instance, "instance file")->required();
  QueryFlags acyclic_flags;
  acyclic_flags.attach(acyclic_cmd);
  std::string acyclic_cert_path;
  acyclic_cmd->add_option("--emit-certificate", acyclic_cert_path, "write the certificate here");
  bool acyclic_json = false;
  acyclic_cmd->add_flag("--json", acyclic_json, "emit a json report");

  // ---- reduce-cnf ----
  auto* reduce_cmd = app.add_subcommand("reduce-cnf", "compile a 3-CNF into a linkage instance");
  std::string cnf_path, out_prefix;
  reduce_cmd->add_option("cnf", cnf_path, "DIMACS CNF file")->required();
  std::int64_t reduce_k = 0;
  reduce_cmd->add_option("--k", reduce_k, "slack the gadget is built for (default 0)");
  reduce_cmd->add_option("--out", out_prefix, "output prefix (.graph and .roles)")->required();
  bool cheap_subdivision = false;
  reduce_cmd->add_flag("--cheap-subdivision", cheap_subdivision,
                       "use the smaller sufficient subdivision count");
  bool reduce_json = false;
  reduce_cmd->add_flag("--json", reduce_json, "emit a json report");

  // ---- transform ----
  auto* transform_cmd = app.add_subcommand("transform", "graph transforms (subdivide | pad)");
  std::string transform_instance, transform_mode, transform_out;
  transform_cmd->add_option("instance", transform_instance, "instance file")->required();
  transform_cmd->add_option("--mode", transform_mode, "subdivide | pad")
      ->required()
      ->check(CLI::IsMember({"subdivide", "pad"}));
  int target_n = -1;
  transform_cmd->add_option("--target-n", target_n, "pad target vertex count");
  transform_cmd->add_option("--out", transform_out, "output instance file")->required();
  bool transform_json = false;
  transform_cmd->add_flag("--json", transform_json, "emit a json report");

  // ---- verify ----
  auto* verify_cmd = app.add_subcommand("verify", "check a certificate against an instance");
  std::string verify_instance, verify_cert;
  verify_cmd->add_option("instance", verify_instance, "instance file")->required();
  verify_cmd->add_option("certificate", verify_cert, "certificate file")->required();
  QueryFlags verify_flags;
  verify_flags.attach(verify_cmd);
  bool verify_json = false;
  verify_cmd->add_flag("--json", verify_json, "emit a json report");

  // ---- gen ----
  auto* gen_cmd = app.add_subcommand("gen", "write a seeded random instance");
  std::uint64_t gen_seed = 1;
  int gen_n = 8;
  double gen_p = 0.3;
  std::int64_t gen_k1 = 0, gen_k2 = 0;
  std::string gen_out;
  gen_cmd->add_option("--seed", gen_seed, "rng seed");
  gen_cmd->add_option("--n", gen_n, "vertex count (>= 2)");
  gen_cmd->add_option("--p", gen_p, "arc probability in [0,1]");
  gen_cmd->add_option("--k1", gen_k1, "side-1 slack");
  gen_cmd->add_option("--k2", gen_k2, "side-2 slack");
  gen_cmd->add_option("--out", gen_out, "output instance file")->required();
  bool gen_json = false;
  gen_cmd->add_flag("--json", gen_json, "emit a json report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 1;
  }

  json report;
  report["command"] = command_echo;
  report["exit_code"] = 0;

  try {
    Clock clock;

    if (*solve_cmd) {
      Instance inst = parse_instance(read_file(solve_instance));
      LinkageQuery q = solve_flags.resolve(inst);
      SolveOptions opts;
      opts.threads = threads;
      if (limit_candidates >= 0) opts.candidate_limit = limit_candidates;
      SolveResult r = solve(inst.graph, q, opts);
      const char* answer = r.status == SolveStatus::Yes
                               ? "YES"
                               : (r.status == SolveStatus::No ? "NO" : "UNKNOWN");
      std::optional<Certificate> cert;
      if (r.status == SolveStatus::Yes) cert = Certificate{true, r.solution->p1, r.solution->p2};
      if (r.status == SolveStatus::No) cert = Certificate{false, {}, {}};
      auto cert_path = maybe_write_certificate(solve_cert_path, cert);
      report["instance"] = solve_instance;
      report["answer"] = answer;
      report["certificate"] = cert_path ? json(*cert_path) : json(nullptr);
      report["threads"] = threads;
      report["feasible_pairs"] = r.stats.feasible_pairs;
      report["inner_searches"] = r.stats.inner_searches;
      report["aux_checks"] = r.stats.aux_checks;
      report["aux_violations"] = r.stats.aux_violations;
      report["wall_ms"] = clock.ms();
      emit(report, solve_json, std::string("s ") + answer);
      return 0;
    }

    if (*oracle_cmd || *acyclic_cmd) {
      bool is_alias = static_cast<bool>(*acyclic_cmd);
      const std::string& path = is_alias ? acyclic_instance : oracle_instance;
      const QueryFlags& qflags = is_alias ? acyclic_flags : oracle_flags;
      const std::string& cert_out = is_alias ? acyclic_cert_path : oracle_cert_path;
      bool as_json = is_alias ? acyclic_json : oracle_json;
      std::string effective_mode = is_alias ? "acyclic" : mode;

      Instance inst = parse_instance(read_file(path));
      LinkageQuery q = qflags.resolve(inst);
      OracleLimits limits;
      limits.max_n = oracle_max_n;

      std::optional<std::pair<Path, Path>> pair;
      if (effective_mode == "sw2l") {
        pair = brute_force_sw2l(inst.graph, q, limits);
      } else if (effective_mode == "ssw2l") {
        std::int64_t k = oracle_k ? *oracle_k : q.k1;
        pair = ssw2l_solve(inst.graph, q.s1, q.t1, q.s2, q.t2, k, limits);
      } else {
        if (!is_acyclic(inst.graph))
          throw InputError("acyclic mode requires an acyclic graph");
        // caps d(si,ti) + ki per side; unreachable terminals mean NO
        auto d1 = bfs_dist_from(inst.graph, q.s1)[static_cast<size_t>(q.t1)];
        auto d2 = bfs_dist_from(inst.graph, q.s2)[static_cast<size_t>(q.t2)];
        if (reachable(d1) && reachable(d2)) {
          WeakLinkageInstance wli;
          wli.graph = inst.graph;
          wli.pairs = {{q.s1, q.t1, d1 + q.k1}, {q.s2, q.t2, d2 + q.k2}};
          auto sol = acyclic_weak_k_linkage(wli, limits);
          if (sol) pair = std::make_pair((*sol)[0], (*sol)[1]);
        }
      }

      const char* answer = pair ? "YES" : "NO";
      std::optional<Certificate> cert;
      if (pair)
        cert = Certificate{true, pair->first, pair->second};
      else
        cert = Certificate{false, {}, {}};
      auto cert_path = maybe_write_certificate(cert_out, cert);
      report["instance"] = path;
      report["mode"] = effective_mode;
      report["answer"] = answer;
      report["certificate"] = cert_path ? json(*cert_path) : json(nullptr);
      report["wall_ms"] = clock.ms();
      emit(report, as_json, std::string("s ") + answer);
      return 0;
    }

    if (*reduce_cmd) {
      CnfFormula f = parse_dimacs_cnf(read_file(cnf_path));
      GadgetLayout layout = build_ssw2l_gadget(f, reduce_k, cheap_subdivision);
      // side 2 carries no length bound; a slack of n covers any simple path
      LinkageQuery q{layout.s1, layout.t1, layout.s2, layout.t2, layout.k,
                     layout.graph.vertex_count()};
      std::string graph_path = out_prefix + ".graph";
      std::string roles_path = out_prefix + ".roles";
      write_file(graph_path, serialize_instance(layout.graph, q));
      write_file(roles_path, serialize_roles(layout));
      auto dist = bfs_dist_from(layout.graph, layout.s1);
      std::int64_t d1 = dist[static_cast<size_t>(layout.t1)];
      report["instance"] = cnf_path;
      report["answer"] = "OK";
      report["vars"] = f.num_vars;
      report["clauses"] = f.clause_count();
      report["vertices"] = layout.graph.vertex_count();
      report["arcs"] = layout.graph.arc_count();
      report["pre_subdivision_vertices"] = layout.pre_subdivision_vertex_count();
      report["subdivision_count"] = layout.subdivision_count;
      report["clause_path_arcs"] = layout.subdivision_count + 1;
      report["d_s1_t1"] = d1;
      report["out_graph"] = graph_path;
      report["out_roles"] = roles_path;
      report["wall_ms"] = clock.ms();
      std::ostringstream plain;
      plain << "c vars=" << f.num_vars << " clauses=" << f.clause_count() << '\n'
            << "c vertices=" << layout.graph.vertex_count()
            << " arcs=" << layout.graph.arc_count()
            << " pre_subdivision_vertices=" << layout.pre_subdivision_vertex_count() << '\n'
            << "c clause_path_arcs=" << layout.subdivision_count + 1 << " d_s1_t1=" << d1;
      emit(report, reduce_json, plain.str());
      return 0;
    }

    if (*transform_cmd) {
      Instance inst = parse_instance(read_file(transform_instance));
      Digraph out;
      if (transform_mode == "subdivide") {
        out = subdivide_for_w1(inst.graph);
      } else {
        if (target_n < 0) throw InputError("pad mode requires --target-n");
        out = pad_vertices(inst.graph, target_n);
      }
      // queries survive both transforms: original vertex ids are preserved
      write_file(transform_out, serialize_instance(out, inst.query));
      report["instance"] = transform_instance;
      report["answer"] = "OK";
      report["mode"] = transform_mode;
      report["vertices"] = out.vertex_count();
      report["arcs"] = out.arc_count();
      report["out"] = transform_out;
      report["wall_ms"] = clock.ms();
      emit(report, transform_json, "");
      return 0;
    }

    if (*verify_cmd) {
      Instance inst = parse_instance(read_file(verify_instance));
      LinkageQuery q = verify_flags.resolve(inst);
      Certificate cert = parse_certificate(read_file(verify_cert), inst.graph);
      if (!cert.yes) throw InputError("certificate says NO; nothing to verify");
      VerifyResult vr = verify_solution(inst.graph, q, cert.p1, cert.p2);
      report["instance"] = verify_instance;
      report["certificate"] = verify_cert;
      report["answer"] = vr.ok ? "VALID" : "INVALID";
      report["reason"] = vr.ok ? json(nullptr) : json(verify_code_name(vr.code));
      report["wall_ms"] = clock.ms();
      emit(report, verify_json,
           vr.ok ? "valid" : std::string("invalid ") + verify_code_name(vr.code));
      return 0;
    }

    if (*gen_cmd) {
      auto [g, q] = gen_random_instance(gen_seed, gen_n, gen_p, gen_k1, gen_k2);
      write_file(gen_out, serialize_instance(g, q));
      report["answer"] = "OK";
      report["seed"] = gen_seed;
      report["n"] = g.vertex_count();
      report["arcs"] = g.arc_count();
      report["out"] = gen_out;
      report["wall_ms"] = clock.ms();
      emit(report, gen_json, "");
      return 0;
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const GraphError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const LimitError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
