#include "safemem/arena.hpp"

#include <set>
#include <tuple>

#include "safemem/errors.hpp"

namespace safemem {

std::string ValidationReport::joined() const {
  std::string s;
  for (const auto& v : violations) {
    if (!s.empty()) s += "; ";
    s += v;
  }
  return s;
}

ValidationReport validate_arena(const ArenaSpec& spec) {
  ValidationReport report;
  auto add = [&](std::string msg) { report.violations.push_back(std::move(msg)); };

  std::set<std::string> symbols;
  if (spec.alphabet.empty()) add("empty alphabet");
  for (const auto& s : spec.alphabet) {
    if (s.empty()) add("empty symbol name");
    if (!symbols.insert(s).second) add("duplicate symbol " + s);
  }

  std::set<std::string> ids;
  for (const auto& v : spec.vertices) {
    if (v.id.empty()) add("empty vertex id");
    if (!ids.insert(v.id).second) add("duplicate vertex " + v.id);
    if (v.owner != "Eve" && v.owner != "Adam")
      add("bad owner '" + v.owner + "' at " + v.id);
  }

  std::set<std::tuple<std::string, std::string, std::string>> seen;
  std::set<std::string> with_out;
  for (const auto& e : spec.edges) {
    if (!ids.count(e.src)) add("unknown vertex " + e.src);
    if (!ids.count(e.dst)) add("unknown vertex " + e.dst);
    if (!symbols.count(e.color)) add("unknown color " + e.color);
    if (!seen.insert({e.src, e.dst, e.color}).second)
      add("duplicate edge (" + e.src + "," + e.dst + "," + e.color + ")");
    with_out.insert(e.src);
  }
  for (const auto& v : spec.vertices)
    if (!with_out.count(v.id)) add("dead end at " + v.id);

  return report;
}

Arena::Arena(const ArenaSpec& spec) : alphabet_(spec.alphabet) {
  auto report = validate_arena(spec);
  if (!report.ok()) throw input_error("invalid arena: " + report.joined());
  vertices_.reserve(spec.vertices.size());
  for (const auto& v : spec.vertices)
    vertices_.push_back({v.id, v.owner == "Eve" ? Owner::Eve : Owner::Adam});
  for (int i = 0; i < static_cast<int>(vertices_.size()); ++i)
    vertex_index_.emplace(vertices_[i].id, i);
  edges_.reserve(spec.edges.size());
  for (const auto& e : spec.edges)
    edges_.push_back({vertex_index_.at(e.src), vertex_index_.at(e.dst),
                      alphabet_.index_or_throw(e.color)});
  compile();
}

Arena::Arena(Alphabet alphabet, std::vector<Vertex> vertices, std::vector<Edge> edges)
    : alphabet_(std::move(alphabet)), vertices_(std::move(vertices)), edges_(std::move(edges)) {
  for (int i = 0; i < static_cast<int>(vertices_.size()); ++i)
    if (!vertex_index_.emplace(vertices_[i].id, i).second)
      throw input_error("duplicate vertex " + vertices_[i].id);
  std::set<std::tuple<int, int, int>> seen;
  for (const auto& e : edges_) {
    if (e.src < 0 || e.src >= vertex_count() || e.dst < 0 || e.dst >= vertex_count())
      throw input_error("edge endpoint out of range");
    if (e.color < 0 || e.color >= alphabet_.size()) throw input_error("edge color out of range");
    if (!seen.insert({e.src, e.dst, e.color}).second)
      throw input_error("duplicate edge (" + vertices_[e.src].id + "," + vertices_[e.dst].id +
                        "," + alphabet_.name(e.color) + ")");
  }
  compile();
  for (int v = 0; v < vertex_count(); ++v)
    if (out_[v].empty()) throw input_error("dead end at " + vertices_[v].id);
}

void Arena::compile() {
  out_.assign(vertices_.size(), {});
  for (int e = 0; e < edge_count(); ++e) out_[edges_[e].src].push_back(e);
}

std::optional<int> Arena::vertex_index(const std::string& id) const {
  auto it = vertex_index_.find(id);
  if (it == vertex_index_.end()) return std::nullopt;
  return it->second;
}

int Arena::vertex_index_or_throw(const std::string& id) const {
  auto v = vertex_index(id);
  if (!v) throw input_error("unknown vertex " + id);
  return *v;
}

std::optional<int> Arena::edge_index(int src, int dst, int color) const {
  for (int e : out_.at(src))
    if (edges_[e].dst == dst && edges_[e].color == color) return e;
  return std::nullopt;
}

ArenaSpec Arena::to_spec() const {
  ArenaSpec spec;
  spec.alphabet = alphabet_.names();
  for (const auto& v : vertices_)
    spec.vertices.push_back({v.id, v.owner == Owner::Eve ? "Eve" : "Adam"});
  for (const auto& e : edges_)
    spec.edges.push_back({vertices_[e.src].id, vertices_[e.dst].id, alphabet_.name(e.color)});
  return spec;
}

} // namespace safemem
