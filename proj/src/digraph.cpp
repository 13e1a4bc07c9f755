#include "sw2l/digraph.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <queue>
#include <sstream>

namespace sw2l {

Digraph::Digraph(int n) : n_(n), out_(static_cast<size_t>(n)), in_(static_cast<size_t>(n)) {}

Vertex Digraph::add_vertex() {
  out_.emplace_back();
  in_.emplace_back();
  return n_++;
}

ArcId Digraph::add_arc(Vertex tail, Vertex head) {
  if (!valid_vertex(tail) || !valid_vertex(head))
    throw GraphError("arc endpoint out of range: " + std::to_string(tail + 1) + " -> " +
                     std::to_string(head + 1));
  if (tail == head) throw GraphError("self-loop at vertex " + std::to_string(tail + 1));
  if (index_.count(pair_key(tail, head)))
    throw GraphError("duplicate arc " + std::to_string(tail + 1) + " -> " +
                     std::to_string(head + 1));
  ArcId id = static_cast<ArcId>(arcs_.size());
  arcs_.push_back({tail, head});
  out_[static_cast<size_t>(tail)].push_back(id);
  in_[static_cast<size_t>(head)].push_back(id);
  index_.emplace(pair_key(tail, head), id);
  return id;
}

std::optional<ArcId> Digraph::find_arc(Vertex tail, Vertex head) const {
  if (!valid_vertex(tail) || !valid_vertex(head)) return std::nullopt;
  auto it = index_.find(pair_key(tail, head));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const std::string& Digraph::label(Vertex v) const {
  static const std::string empty;
  size_t i = static_cast<size_t>(v);
  return i < labels_.size() ? labels_[i] : empty;
}

void Digraph::set_label(Vertex v, std::string text) {
  if (labels_.size() < static_cast<size_t>(n_)) labels_.resize(static_cast<size_t>(n_));
  labels_[static_cast<size_t>(v)] = std::move(text);
}

std::optional<std::vector<ArcId>> Path::arc_ids_in(const Digraph& g) const {
  if (verts.empty()) return std::nullopt;
  std::vector<ArcId> ids;
  ids.reserve(verts.size() - 1);
  for (size_t i = 0; i + 1 < verts.size(); ++i) {
    if (!g.valid_vertex(verts[i]) || !g.valid_vertex(verts[i + 1])) return std::nullopt;
    auto id = g.find_arc(verts[i], verts[i + 1]);
    if (!id) return std::nullopt;
    ids.push_back(*id);
  }
  if (!g.valid_vertex(verts.back())) return std::nullopt;
  return ids;
}

bool Path::vertex_simple() const {
  std::vector<Vertex> sorted = verts;
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

namespace {

std::vector<std::string_view> split_tokens(std::string_view line) {
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

std::int64_t parse_int(std::string_view tok, int line, const char* what) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(line, std::string("expected integer for ") + what + ", got '" +
                               std::string(tok) + "'");
  return value;
}

Vertex parse_vertex(std::string_view tok, int line, int n, const char* what) {
  std::int64_t v = parse_int(tok, line, what);
  if (v < 1 || v > n)
    throw ParseError(line, std::string(what) + " " + std::to_string(v) +
                               " out of range 1.." + std::to_string(n));
  return static_cast<Vertex>(v - 1);
}

}  // namespace

Instance parse_instance(std::string_view text) {
  std::optional<Digraph> graph;
  std::optional<LinkageQuery> query;
  std::int64_t declared_m = 0;
  int seen_arcs = 0;
  int line_no = 0;

  size_t pos = 0;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                                           : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    auto toks = split_tokens(line);
    if (toks.empty() || toks[0][0] == '#') continue;

    if (toks[0] == "p") {
      if (graph) throw ParseError(line_no, "duplicate header");
      if (toks.size() != 4 || toks[1] != "dilink")
        throw ParseError(line_no, "malformed header, expected 'p dilink <n> <m>'");
      std::int64_t n = parse_int(toks[2], line_no, "vertex count");
      declared_m = parse_int(toks[3], line_no, "arc count");
      if (n < 0 || declared_m < 0) throw ParseError(line_no, "negative count in header");
      graph.emplace(static_cast<int>(n));
    } else if (toks[0] == "a") {
      if (!graph) throw ParseError(line_no, "arc line before header");
      if (toks.size() != 3) throw ParseError(line_no, "malformed arc line, expected 'a <tail> <head>'");
      if (seen_arcs == declared_m)
        throw ParseError(line_no, "more arc lines than declared in header");
      Vertex tail = parse_vertex(toks[1], line_no, graph->vertex_count(), "arc tail");
      Vertex head = parse_vertex(toks[2], line_no, graph->vertex_count(), "arc head");
      try {
        graph->add_arc(tail, head);
      } catch (const GraphError& e) {
        throw ParseError(line_no, e.what());
      }
      ++seen_arcs;
    } else if (toks[0] == "q") {
      if (!graph) throw ParseError(line_no, "query line before header");
      if (query) throw ParseError(line_no, "duplicate query line");
      if (toks.size() != 7)
        throw ParseError(line_no, "malformed query line, expected 'q <s1> <t1> <s2> <t2> <k1> <k2>'");
      LinkageQuery q{};
      q.s1 = parse_vertex(toks[1], line_no, graph->vertex_count(), "s1");
      q.t1 = parse_vertex(toks[2], line_no, graph->vertex_count(), "t1");
      q.s2 = parse_vertex(toks[3], line_no, graph->vertex_count(), "s2");
      q.t2 = parse_vertex(toks[4], line_no, graph->vertex_count(), "t2");
      q.k1 = parse_int(toks[5], line_no, "k1");
      q.k2 = parse_int(toks[6], line_no, "k2");
      if (q.k1 < 0 || q.k2 < 0) throw ParseError(line_no, "negative slack in query");
      query = q;
    } else {
      throw ParseError(line_no, "unknown directive '" + std::string(toks[0]) + "'");
    }
  }

  if (!graph) throw ParseError(0, "missing header");
  if (seen_arcs != declared_m)
    throw ParseError(0, "header declares " + std::to_string(declared_m) + " arcs, file has " +
                            std::to_string(seen_arcs));
  return Instance{std::move(*graph), query};
}

std::string serialize_instance(const Digraph& g, const std::optional<LinkageQuery>& query) {
  std::ostringstream out;
  out << "p dilink " << g.vertex_count() << ' ' << g.arc_count() << '\n';
  for (const Arc& a : g.arcs()) out << "a " << a.tail + 1 << ' ' << a.head + 1 << '\n';
  if (query)
    out << "q " << query->s1 + 1 << ' ' << query->t1 + 1 << ' ' << query->s2 + 1 << ' '
        << query->t2 + 1 << ' ' << query->k1 << ' ' << query->k2 << '\n';
  return out.str();
}

Certificate parse_certificate(std::string_view text, const Digraph& g) {
  Certificate cert;
  bool saw_status = false, saw_p1 = false, saw_p2 = false;
  int line_no = 0;

  size_t pos = 0;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                                           : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    auto toks = split_tokens(line);
    if (toks.empty() || toks[0][0] == '#') continue;

    if (toks[0] == "s") {
      if (saw_status) throw ParseError(line_no, "duplicate status line");
      if (toks.size() != 2 || (toks[1] != "YES" && toks[1] != "NO"))
        throw ParseError(line_no, "malformed status line, expected 's YES' or 's NO'");
      cert.yes = toks[1] == "YES";
      saw_status = true;
    } else if (toks[0] == "p1" || toks[0] == "p2") {
      if (!saw_status || !cert.yes)
        throw ParseError(line_no, "path line without preceding 's YES'");
      if (toks.size() < 2) throw ParseError(line_no, "empty path line");
      std::vector<Vertex> verts;
      for (size_t i = 1; i < toks.size(); ++i)
        verts.push_back(parse_vertex(toks[i], line_no, g.vertex_count(), "path vertex"));
      if (toks[0] == "p1") {
        if (saw_p1) throw ParseError(line_no, "duplicate p1 line");
        cert.p1 = Path(std::move(verts));
        saw_p1 = true;
      } else {
        if (saw_p2) throw ParseError(line_no, "duplicate p2 line");
        cert.p2 = Path(std::move(verts));
        saw_p2 = true;
      }
    } else {
      throw ParseError(line_no, "unknown directive '" + std::string(toks[0]) + "'");
    }
  }

  if (!saw_status) throw ParseError(0, "missing status line");
  if (cert.yes && (!saw_p1 || !saw_p2)) throw ParseError(0, "'s YES' requires p1 and p2 lines");
  return cert;
}

std::string serialize_certificate(const Certificate& cert) {
  std::ostringstream out;
  if (!cert.yes) {
    out << "s NO\n";
    return out.str();
  }
  out << "s YES\n";
  for (int side = 0; side < 2; ++side) {
    const Path& p = side == 0 ? cert.p1 : cert.p2;
    out << (side == 0 ? "p1" : "p2");
    for (Vertex v : p.verts) out << ' ' << v + 1;
    out << '\n';
  }
  return out.str();
}

namespace {

std::vector<std::int64_t> bfs_dist(const Digraph& g, Vertex start, bool forward) {
  std::vector<std::int64_t> dist(static_cast<size_t>(g.vertex_count()), kUnreachable);
  std::deque<Vertex> queue;
  dist[static_cast<size_t>(start)] = 0;
  queue.push_back(start);
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    const auto& arcs = forward ? g.out_arcs(v) : g.in_arcs(v);
    for (ArcId id : arcs) {
      Vertex w = forward ? g.arc(id).head : g.arc(id).tail;
      if (!reachable(dist[static_cast<size_t>(w)])) {
        dist[static_cast<size_t>(w)] = dist[static_cast<size_t>(v)] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

}  // namespace

std::vector<std::int64_t> bfs_dist_from(const Digraph& g, Vertex source) {
  return bfs_dist(g, source, true);
}

std::vector<std::int64_t> bfs_dist_to(const Digraph& g, Vertex sink) {
  return bfs_dist(g, sink, false);
}

std::optional<std::vector<Vertex>> topo_order(const Digraph& g) {
  int n = g.vertex_count();
  std::vector<int> indeg(static_cast<size_t>(n), 0);
  for (const Arc& a : g.arcs()) ++indeg[static_cast<size_t>(a.head)];
  std::priority_queue<Vertex, std::vector<Vertex>, std::greater<Vertex>> ready;
  for (Vertex v = 0; v < n; ++v)
    if (indeg[static_cast<size_t>(v)] == 0) ready.push(v);
  std::vector<Vertex> order;
  order.reserve(static_cast<size_t>(n));
  while (!ready.empty()) {
    Vertex v = ready.top();
    ready.pop();
    order.push_back(v);
    for (ArcId id : g.out_arcs(v)) {
      Vertex w = g.arc(id).head;
      if (--indeg[static_cast<size_t>(w)] == 0) ready.push(w);
    }
  }
  if (order.size() != static_cast<size_t>(n)) return std::nullopt;
  return order;
}

bool is_acyclic(const Digraph& g) { return topo_order(g).has_value(); }

}  // namespace sw2l
