#include "safemem/solver.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "safemem/errors.hpp"

namespace safemem {

int ProductGame::vertex_of(int v, int q) const { return v * states_ + q; }

ProductGame::ProductGame(Arena arena_in, std::vector<char> bad_in,
                         std::vector<std::pair<int, int>> origin_in, int states)
    : arena(std::move(arena_in)), bad(std::move(bad_in)), origin(std::move(origin_in)),
      states_(states) {}

ProductGame build_residual_product(const Arena& arena, const SafetyAutomaton& aut) {
  if (arena.alphabet() != aut.alphabet())
    throw input_error("alphabet mismatch between arena and objective");
  const int nq = aut.state_count();

  std::vector<Vertex> vertices;
  std::vector<std::pair<int, int>> origin;
  std::set<std::string> used;
  vertices.reserve(static_cast<size_t>(arena.vertex_count()) * nq);
  for (int v = 0; v < arena.vertex_count(); ++v)
    for (int q = 0; q < nq; ++q) {
      std::string id = arena.vertex(v).id + "#" + aut.state_id(q);
      while (!used.insert(id).second) id += "'";
      vertices.push_back({std::move(id), arena.vertex(v).owner});
      origin.push_back({v, q});
    }

  std::vector<Edge> edges;
  std::vector<char> bad;
  edges.reserve(static_cast<size_t>(arena.edge_count()) * nq);
  for (int v = 0; v < arena.vertex_count(); ++v)
    for (int q = 0; q < nq; ++q)
      for (int e : arena.out(v)) {
        const Edge& ae = arena.edge(e);
        int tq = aut.next(q, ae.color);
        edges.push_back({v * nq + q, ae.dst * nq + tq, ae.color});
        bad.push_back(aut.is_sink(tq) ? 1 : 0);
      }

  return ProductGame(Arena(arena.alphabet(), std::move(vertices), std::move(edges)),
                     std::move(bad), std::move(origin), nq);
}

SolveResult solve_safety(const Arena& arena, const std::vector<char>& bad) {
  if (static_cast<int>(bad.size()) != arena.edge_count())
    throw input_error("bad-edge vector does not match the arena");
  const int nv = arena.vertex_count();

  std::vector<std::vector<int>> rev(nv);
  for (int e = 0; e < arena.edge_count(); ++e) rev[arena.edge(e).dst].push_back(e);

  // good[v]: Eve's remaining non-bad edges into the current region.
  std::vector<int> good(nv, 0);
  std::vector<char> removed(nv, 0);
  std::deque<int> queue;
  for (int v = 0; v < nv; ++v) {
    bool adam_bad = false;
    for (int e : arena.out(v)) {
      if (!bad[e])
        ++good[v];
      else
        adam_bad = true;
    }
    bool lose = arena.vertex(v).owner == Owner::Eve ? good[v] == 0 : adam_bad;
    if (lose) {
      removed[v] = 1;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    int w = queue.front();
    queue.pop_front();
    for (int e : rev[w]) {
      if (bad[e]) continue;
      int v = arena.edge(e).src;
      if (removed[v]) continue;
      if (arena.vertex(v).owner == Owner::Eve && --good[v] > 0) continue;
      removed[v] = 1;
      queue.push_back(v);
    }
  }

  SolveResult result;
  result.winning.assign(nv, 0);
  result.positional.assign(nv, -1);
  for (int v = 0; v < nv; ++v) {
    result.winning[v] = !removed[v];
    if (removed[v] || arena.vertex(v).owner != Owner::Eve) continue;
    for (int e : arena.out(v))
      if (!bad[e] && !removed[arena.edge(e).dst]) {
        result.positional[v] = e;
        break;
      }
    if (result.positional[v] < 0) throw internal_error("winning Eve vertex without a move");
  }
  return result;
}

WinningPairs winning_pairs(const Arena& arena, const SafetyAutomaton& aut) {
  ProductGame product = build_residual_product(arena, aut);
  SolveResult solved = solve_safety(product.arena, product.bad);
  WinningPairs pairs(arena.vertex_count(), aut.state_count());
  for (int pv = 0; pv < product.arena.vertex_count(); ++pv) {
    if (!solved.winning[pv]) continue;
    auto [v, q] = product.origin[pv];
    if (!aut.is_sink(q)) pairs.set(v, q);
  }
  return pairs;
}

VerifyResult verify_strategy(const Arena& arena, const SafetyAutomaton& aut,
                             const MealyStrategy& strategy, int v0) {
  if (arena.alphabet() != aut.alphabet())
    throw input_error("alphabet mismatch between arena and objective");
  if (v0 < 0 || v0 >= arena.vertex_count()) throw input_error("initial vertex out of range");
  const int nm = static_cast<int>(strategy.memory.state_ids.size());
  if (nm == 0 || strategy.memory.initial < 0 || strategy.memory.initial >= nm)
    throw input_error("memory structure without a valid initial state");
  if (static_cast<int>(strategy.memory.update.size()) != nm)
    throw input_error("memory update table has the wrong number of rows");
  for (const auto& row : strategy.memory.update) {
    if (static_cast<int>(row.size()) != arena.edge_count())
      throw input_error("memory update table does not cover every edge");
    for (int to : row)
      if (to < 0 || to >= nm) throw input_error("memory update target out of range");
  }

  const int nq = aut.state_count();
  const int nv = arena.vertex_count();
  auto index = [&](int v, int m, int q) { return (v * nm + m) * nq + q; };
  std::vector<char> seen(static_cast<size_t>(nv) * nm * nq, 0);
  std::vector<int> par_state(seen.size(), -1), par_edge(seen.size(), -1);
  std::set<std::pair<int, int>> reached_pairs;

  VerifyResult result;
  auto losing_at = [&](int t, int via_edge, int from_t) {
    Play play;
    play.start = v0;
    play.edges.push_back(via_edge);
    for (int cur = from_t; par_state[cur] >= 0; cur = par_state[cur])
      play.edges.push_back(par_edge[cur]);
    std::reverse(play.edges.begin(), play.edges.end());
    (void)t;
    result.winning = false;
    result.counterexample = std::move(play);
  };

  int start = index(v0, strategy.memory.initial, aut.initial());
  if (aut.is_sink(aut.initial())) {
    result.winning = false;
    result.counterexample = Play{v0, {}};
    return result;
  }
  seen[start] = 1;
  std::deque<int> queue{start};
  bool losing = false;
  while (!queue.empty() && !losing) {
    int t = queue.front();
    queue.pop_front();
    int q = t % nq, m = (t / nq) % nm, v = t / (nq * nm);
    reached_pairs.insert({v, m});

    std::vector<int> moves;
    if (arena.vertex(v).owner == Owner::Eve) {
      auto it = strategy.next.find({v, m});
      if (it == strategy.next.end())
        throw malformed_strategy_error("next undefined at reachable (" + arena.vertex(v).id +
                                       "," + strategy.memory.state_ids[m] + ")");
      int e = it->second;
      if (e < 0 || e >= arena.edge_count() || arena.edge(e).src != v)
        throw malformed_strategy_error("next at (" + arena.vertex(v).id + "," +
                                       strategy.memory.state_ids[m] +
                                       ") is not an edge from that vertex");
      moves.push_back(e);
    } else {
      moves = arena.out(v);
    }

    for (int e : moves) {
      const Edge& edge = arena.edge(e);
      int q2 = aut.next(q, edge.color);
      int m2 = strategy.memory.update[m][e];
      int t2 = index(edge.dst, m2, q2);
      if (aut.is_sink(q2)) {
        losing_at(t2, e, t);
        losing = true;
        break;
      }
      if (!seen[t2]) {
        seen[t2] = 1;
        par_state[t2] = t;
        par_edge[t2] = e;
        queue.push_back(t2);
      }
    }
  }
  if (!losing) result.winning = true;

  // Entries that would be malformed but were never reached are only worth
  // a warning; partial tables are natural synthesis outputs.
  for (const auto& [key, e] : strategy.next) {
    auto [v, m] = key;
    std::string where = "next entry at (" +
                        (v >= 0 && v < nv ? arena.vertex(v).id : std::to_string(v)) + "," +
                        (m >= 0 && m < nm ? strategy.memory.state_ids[m] : std::to_string(m)) +
                        ")";
    if (v < 0 || v >= nv || m < 0 || m >= nm) {
      result.warnings.push_back("ignored " + where + ": unknown vertex or memory state");
    } else if (arena.vertex(v).owner != Owner::Eve) {
      result.warnings.push_back("ignored " + where + ": vertex is Adam's");
    } else if ((e < 0 || e >= arena.edge_count() || arena.edge(e).src != v) &&
               !reached_pairs.count({v, m})) {
      result.warnings.push_back("ignored unreachable malformed " + where);
    }
  }
  return result;
}

} // namespace safemem
