#include "safemem/dot.hpp"

#include <sstream>

namespace safemem {

namespace {

// DOT double-quoted string; backslash-escape quotes and backslashes.
std::string quoted(const std::string& raw) {
  std::string out = "\"";
  for (char c : raw) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

} // namespace

std::string arena_to_dot(const Arena& arena, const std::vector<char>* bad) {
  std::ostringstream out;
  out << "digraph arena {\n";
  out << "  rankdir=LR;\n";
  for (int v = 0; v < arena.vertex_count(); ++v) {
    const Vertex& vertex = arena.vertex(v);
    out << "  " << quoted(vertex.id) << " [shape="
        << (vertex.owner == Owner::Eve ? "circle" : "square") << "];\n";
  }
  for (int e = 0; e < arena.edge_count(); ++e) {
    const Edge& edge = arena.edge(e);
    out << "  " << quoted(arena.vertex(edge.src).id) << " -> "
        << quoted(arena.vertex(edge.dst).id)
        << " [label=" << quoted(arena.alphabet().name(edge.color));
    if (bad && (*bad)[e]) out << ", style=dashed, color=red";
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

std::string automaton_to_dot(const SafetyAutomaton& aut) {
  std::ostringstream out;
  out << "digraph automaton {\n";
  out << "  rankdir=LR;\n";
  out << "  __start [shape=point];\n";
  for (int q = 0; q < aut.state_count(); ++q)
    out << "  " << quoted(aut.state_id(q)) << " [shape="
        << (aut.is_sink(q) ? "doublecircle, color=red" : "circle") << "];\n";
  out << "  __start -> " << quoted(aut.state_id(aut.initial())) << ";\n";
  for (int q = 0; q < aut.state_count(); ++q)
    for (int s = 0; s < aut.alphabet().size(); ++s)
      out << "  " << quoted(aut.state_id(q)) << " -> " << quoted(aut.state_id(aut.next(q, s)))
          << " [label=" << quoted(aut.alphabet().name(s)) << "];\n";
  out << "}\n";
  return out.str();
}

std::string poset_to_dot(const ResidualPoset& poset) {
  const int n = poset.size();
  std::ostringstream out;
  out << "digraph poset {\n";
  out << "  rankdir=BT;\n";
  for (int r = 0; r < n; ++r) out << "  " << quoted(poset.id(r)) << " [shape=circle];\n";
  // Covering pairs of the strict order, drawn small -> large.
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b || !poset.leq(a, b)) continue;
      bool covering = true;
      for (int c = 0; c < n && covering; ++c)
        if (c != a && c != b && poset.leq(a, c) && poset.leq(c, b)) covering = false;
      if (covering)
        out << "  " << quoted(poset.id(a)) << " -> " << quoted(poset.id(b)) << ";\n";
    }
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < poset.alphabet().size(); ++s) {
      int to = poset.step(r, s);
      if (to == ResidualPoset::kEmpty) continue;
      out << "  " << quoted(poset.id(r)) << " -> " << quoted(poset.id(to))
          << " [style=dotted, label=" << quoted(poset.alphabet().name(s)) << "];\n";
    }
  out << "}\n";
  return out.str();
}

} // namespace safemem
