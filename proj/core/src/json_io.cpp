#include "safemem/json_io.hpp"

#include <initializer_list>

#include "json.hpp"
#include "safemem/errors.hpp"

namespace safemem {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& message) { throw input_error(message); }

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }
}

void check_keys(const json& j, const char* where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) bad(std::string(where) + " must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* key : allowed)
      if (it.key() == key) {
        known = true;
        break;
      }
    if (!known) bad("unknown field '" + it.key() + "' in " + where);
  }
}

const json& need(const json& j, const char* key, const char* where) {
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing field '") + key + "' in " + where);
  return *it;
}

std::string need_string(const json& j, const char* key, const char* where) {
  const json& value = need(j, key, where);
  if (!value.is_string())
    bad(std::string("field '") + key + "' in " + where + " must be a string");
  return value.get<std::string>();
}

std::vector<std::string> need_string_array(const json& j, const char* key, const char* where) {
  const json& value = need(j, key, where);
  if (!value.is_array())
    bad(std::string("field '") + key + "' in " + where + " must be an array");
  std::vector<std::string> out;
  for (const json& item : value) {
    if (!item.is_string())
      bad(std::string("field '") + key + "' in " + where + " must contain strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

const json& need_array(const json& j, const char* key, const char* where) {
  const json& value = need(j, key, where);
  if (!value.is_array())
    bad(std::string("field '") + key + "' in " + where + " must be an array");
  return value;
}

std::string edge_text(const std::string& src, const std::string& dst, const std::string& color) {
  return "(" + src + "," + dst + "," + color + ")";
}

} // namespace

ArenaSpec arena_from_json(const std::string& text) {
  json j = parse_text(text);
  check_keys(j, "arena", {"alphabet", "vertices", "edges"});
  ArenaSpec spec;
  spec.alphabet = need_string_array(j, "alphabet", "arena");
  for (const json& v : need_array(j, "vertices", "arena")) {
    check_keys(v, "vertex", {"id", "owner"});
    spec.vertices.push_back({need_string(v, "id", "vertex"), need_string(v, "owner", "vertex")});
  }
  for (const json& e : need_array(j, "edges", "arena")) {
    check_keys(e, "edge", {"src", "dst", "color"});
    spec.edges.push_back({need_string(e, "src", "edge"), need_string(e, "dst", "edge"),
                          need_string(e, "color", "edge")});
  }
  return spec;
}

std::string arena_to_json(const ArenaSpec& spec) {
  json j;
  j["alphabet"] = spec.alphabet;
  j["vertices"] = json::array();
  for (const auto& v : spec.vertices) j["vertices"].push_back({{"id", v.id}, {"owner", v.owner}});
  j["edges"] = json::array();
  for (const auto& e : spec.edges)
    j["edges"].push_back({{"src", e.src}, {"dst", e.dst}, {"color", e.color}});
  return j.dump(2) + "\n";
}

AutomatonSpec automaton_from_json(const std::string& text) {
  json j = parse_text(text);
  check_keys(j, "automaton", {"alphabet", "states", "initial", "sink", "delta"});
  AutomatonSpec spec;
  spec.alphabet = need_string_array(j, "alphabet", "automaton");
  spec.states = need_string_array(j, "states", "automaton");
  spec.initial = need_string(j, "initial", "automaton");
  spec.sink = need_string_array(j, "sink", "automaton");
  for (const json& d : need_array(j, "delta", "automaton")) {
    check_keys(d, "delta entry", {"from", "symbol", "to"});
    spec.delta.push_back({need_string(d, "from", "delta entry"),
                          need_string(d, "symbol", "delta entry"),
                          need_string(d, "to", "delta entry")});
  }
  return spec;
}

std::string automaton_to_json(const AutomatonSpec& spec) {
  json j;
  j["alphabet"] = spec.alphabet;
  j["states"] = spec.states;
  j["initial"] = spec.initial;
  j["sink"] = spec.sink;
  j["delta"] = json::array();
  for (const auto& d : spec.delta)
    j["delta"].push_back({{"from", d.from}, {"symbol", d.symbol}, {"to", d.to}});
  return j.dump(2) + "\n";
}

MealyStrategy strategy_from_json(const std::string& text, const Arena& arena) {
  json j = parse_text(text);
  // Synthesis reports are strategies with extra fields; accept them too.
  check_keys(j, "strategy",
             {"memory", "next", "memory_size", "labels", "label_kind", "unreachable"});
  MealyStrategy strategy;

  const json& mj = need(j, "memory", "strategy");
  check_keys(mj, "memory", {"states", "initial", "update"});
  strategy.memory.state_ids = need_string_array(mj, "states", "memory");
  if (strategy.memory.state_ids.empty()) bad("memory needs at least one state");
  std::unordered_map<std::string, int> mem_index;
  for (size_t m = 0; m < strategy.memory.state_ids.size(); ++m)
    if (!mem_index.insert({strategy.memory.state_ids[m], static_cast<int>(m)}).second)
      bad("duplicate memory state '" + strategy.memory.state_ids[m] + "'");
  auto memory_of = [&](const std::string& id) {
    auto it = mem_index.find(id);
    if (it == mem_index.end()) bad("unknown memory state '" + id + "'");
    return it->second;
  };
  strategy.memory.initial = memory_of(need_string(mj, "initial", "memory"));

  auto edge_of = [&](const json& entry, const char* where) {
    std::string src = need_string(entry, "src", where);
    std::string dst = need_string(entry, "dst", where);
    std::string color = need_string(entry, "color", where);
    int vs = arena.vertex_index_or_throw(src);
    int vd = arena.vertex_index_or_throw(dst);
    int c = arena.alphabet().index_or_throw(color);
    auto e = arena.edge_index(vs, vd, c);
    if (!e) bad("no arena edge " + edge_text(src, dst, color));
    return *e;
  };

  const int nm = static_cast<int>(strategy.memory.state_ids.size());
  strategy.memory.update.assign(nm, std::vector<int>(arena.edge_count(), -1));
  for (const json& u : need_array(mj, "update", "memory")) {
    check_keys(u, "update entry", {"m", "src", "dst", "color", "to"});
    int m = memory_of(need_string(u, "m", "update entry"));
    int e = edge_of(u, "update entry");
    if (strategy.memory.update[m][e] >= 0)
      bad("duplicate update entry for memory '" + strategy.memory.state_ids[m] + "' and edge " +
          edge_text(need_string(u, "src", "update entry"), need_string(u, "dst", "update entry"),
                    need_string(u, "color", "update entry")));
    strategy.memory.update[m][e] = memory_of(need_string(u, "to", "update entry"));
  }
  for (int m = 0; m < nm; ++m)
    for (int e = 0; e < arena.edge_count(); ++e)
      if (strategy.memory.update[m][e] < 0) {
        const Edge& edge = arena.edge(e);
        bad("update is not total: memory '" + strategy.memory.state_ids[m] + "' misses edge " +
            edge_text(arena.vertex(edge.src).id, arena.vertex(edge.dst).id,
                      arena.alphabet().name(edge.color)));
      }

  for (const json& n : need_array(j, "next", "strategy")) {
    check_keys(n, "next entry", {"vertex", "m", "src", "dst", "color"});
    int v = arena.vertex_index_or_throw(need_string(n, "vertex", "next entry"));
    int m = memory_of(need_string(n, "m", "next entry"));
    int e = edge_of(n, "next entry");
    if (!strategy.next.insert({{v, m}, e}).second)
      bad("duplicate next entry at (" + arena.vertex(v).id + "," +
          strategy.memory.state_ids[m] + ")");
  }
  return strategy;
}

namespace {

json strategy_json(const MealyStrategy& strategy, const Arena& arena) {
  json j;
  json mem;
  mem["states"] = strategy.memory.state_ids;
  mem["initial"] = strategy.memory.state_ids.at(strategy.memory.initial);
  mem["update"] = json::array();
  for (size_t m = 0; m < strategy.memory.update.size(); ++m)
    for (int e = 0; e < arena.edge_count(); ++e) {
      const Edge& edge = arena.edge(e);
      mem["update"].push_back({{"m", strategy.memory.state_ids[m]},
                               {"src", arena.vertex(edge.src).id},
                               {"dst", arena.vertex(edge.dst).id},
                               {"color", arena.alphabet().name(edge.color)},
                               {"to", strategy.memory.state_ids.at(strategy.memory.update[m][e])}});
    }
  j["memory"] = std::move(mem);
  j["next"] = json::array();
  for (const auto& [key, e] : strategy.next) {
    const Edge& edge = arena.edge(e);
    j["next"].push_back({{"vertex", arena.vertex(key.first).id},
                         {"m", strategy.memory.state_ids.at(key.second)},
                         {"src", arena.vertex(edge.src).id},
                         {"dst", arena.vertex(edge.dst).id},
                         {"color", arena.alphabet().name(edge.color)}});
  }
  return j;
}

json word_json(const ResidualPoset& poset, const Word& word) {
  json out = json::array();
  for (int sym : word) out.push_back(poset.alphabet().name(sym));
  return out;
}

json certificate_json(const ResidualPoset& poset, const WidthCertificate& cert) {
  json j;
  j["width"] = cert.width;
  j["antichain"] = json::array();
  for (int r : cert.antichain) j["antichain"].push_back(poset.id(r));
  j["chains"] = json::array();
  for (const auto& chain : cert.chains) {
    json row = json::array();
    for (int r : chain) row.push_back(poset.id(r));
    j["chains"].push_back(std::move(row));
  }
  j["representatives"] = json::object();
  for (int r = 0; r < poset.size(); ++r)
    j["representatives"][poset.id(r)] = word_json(poset, poset.representative(r));
  j["separators"] = json::array();
  for (const auto& [key, lasso] : cert.separators)
    j["separators"].push_back({{"i", key.first},
                               {"j", key.second},
                               {"prefix", word_json(poset, lasso.prefix)},
                               {"cycle", word_json(poset, lasso.cycle)}});
  return j;
}

} // namespace

std::string strategy_to_json(const MealyStrategy& strategy, const Arena& arena) {
  return strategy_json(strategy, arena).dump(2) + "\n";
}

std::string synthesis_to_json(const SynthesisResult& result, const Arena& arena,
                              const ResidualPoset& poset) {
  json j = strategy_json(result.strategy, arena);
  j["memory_size"] = result.memory_size;
  j["label_kind"] = result.label_kind == LabelKind::Residual ? "residual" : "chain";
  j["labels"] = json::array();
  for (const auto& [key, r] : result.labels)
    j["labels"].push_back({{"vertex", arena.vertex(key.first).id},
                           {"m", result.strategy.memory.state_ids.at(key.second)},
                           {"label", poset.id(r)}});
  j["unreachable"] = json::array();
  for (const auto& [v, m] : result.unreachable)
    j["unreachable"].push_back(
        {{"vertex", arena.vertex(v).id}, {"m", result.strategy.memory.state_ids.at(m)}});
  return j.dump(2) + "\n";
}

std::string width_report_to_json(const ResidualPoset& poset, const WidthCertificate& cert) {
  return certificate_json(poset, cert).dump(2) + "\n";
}

std::string residuals_report_to_json(const ResidualPoset& poset, const WidthCertificate& cert) {
  json j = certificate_json(poset, cert);
  j["residuals"] = json::array();
  for (int r = 0; r < poset.size(); ++r) j["residuals"].push_back(poset.id(r));
  j["initial"] = poset.id(poset.initial());
  j["leq"] = json::array();
  for (int a = 0; a < poset.size(); ++a)
    for (int b = 0; b < poset.size(); ++b)
      if (poset.leq(a, b)) j["leq"].push_back({poset.id(a), poset.id(b)});
  j["step"] = json::array();
  for (int r = 0; r < poset.size(); ++r)
    for (int s = 0; s < poset.alphabet().size(); ++s) {
      int to = poset.step(r, s);
      j["step"].push_back({{"residual", poset.id(r)},
                           {"symbol", poset.alphabet().name(s)},
                           {"to", to == ResidualPoset::kEmpty ? json() : json(poset.id(to))}});
    }
  return j.dump(2) + "\n";
}

std::string verify_report_to_json(const VerifyResult& result, const Arena& arena) {
  json j;
  j["winning"] = result.winning;
  if (result.counterexample) {
    json play;
    play["start"] = arena.vertex(result.counterexample->start).id;
    play["edges"] = json::array();
    json colors = json::array();
    for (int e : result.counterexample->edges) {
      const Edge& edge = arena.edge(e);
      play["edges"].push_back({{"src", arena.vertex(edge.src).id},
                               {"dst", arena.vertex(edge.dst).id},
                               {"color", arena.alphabet().name(edge.color)}});
      colors.push_back(arena.alphabet().name(edge.color));
    }
    play["colors"] = std::move(colors);
    j["counterexample"] = std::move(play);
  } else {
    j["counterexample"] = nullptr;
  }
  j["warnings"] = result.warnings;
  return j.dump(2) + "\n";
}

} // namespace safemem
