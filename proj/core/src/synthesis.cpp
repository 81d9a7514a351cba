#include "safemem/synthesis.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "safemem/errors.hpp"

namespace safemem {

namespace {

std::vector<std::string> memory_ids(const char* prefix, int count) {
  std::vector<std::string> ids;
  ids.reserve(count);
  for (int i = 1; i <= count; ++i) ids.push_back(prefix + std::to_string(i));
  return ids;
}

void check_inputs(const Arena& arena, const SafetyAutomaton& aut, int v0) {
  if (arena.alphabet() != aut.alphabet())
    throw input_error("alphabet mismatch between arena and objective");
  if (v0 < 0 || v0 >= arena.vertex_count()) throw input_error("initial vertex out of range");
}

void verify_or_die(const Arena& arena, const SafetyAutomaton& aut, const SynthesisResult& result,
                   int v0) {
  VerifyResult check = verify_strategy(arena, aut, result.strategy, v0);
  if (!check.winning) throw internal_error("synthesized strategy failed verification");
}

} // namespace

SynthesisResult synthesize_min_residual(const Arena& arena, const SafetyAutomaton& min_aut,
                                        int v0) {
  check_inputs(arena, min_aut, v0);
  ResidualPoset poset = build_poset(min_aut);
  WinningPairs pairs = winning_pairs(arena, min_aut);
  const int nv = arena.vertex_count();
  const int nr = poset.size();
  auto win = [&](int v, int r) { return pairs.at(v, poset.state_of(r)); };
  if (!win(v0, poset.initial()))
    throw not_winning_error("no winning strategy from " + arena.vertex(v0).id);

  // lists[v]: minimal residuals Eve wins with at v, ascending by index.
  std::vector<std::vector<int>> lists(nv);
  for (int v = 0; v < nv; ++v)
    for (int r = 0; r < nr; ++r) {
      if (!win(v, r)) continue;
      bool minimal = true;
      for (int s = 0; s < nr && minimal; ++s)
        if (s != r && win(v, s) && poset.leq(s, r)) minimal = false;
      if (minimal) lists[v].push_back(r);
    }
  {
    auto& front = lists[v0];
    size_t pick = front.size();
    for (size_t i = 0; i < front.size(); ++i)
      if (poset.leq(front[i], poset.initial())) {
        pick = i;
        break;
      }
    if (pick == front.size())
      throw internal_error("no minimal winning residual below the initial residual");
    std::rotate(front.begin(), front.begin() + pick, front.begin() + pick + 1);
  }

  int width = 0;
  for (const auto& list : lists) width = std::max(width, static_cast<int>(list.size()));

  SynthesisResult result;
  result.memory_size = width;
  result.label_kind = LabelKind::Residual;
  result.strategy.memory.state_ids = memory_ids("m", width);
  result.strategy.memory.initial = 0;
  result.strategy.memory.update.assign(width, std::vector<int>(arena.edge_count(), 0));

  for (int v = 0; v < nv; ++v)
    for (int i = 0; i < width; ++i) {
      if (i < static_cast<int>(lists[v].size()))
        result.labels[{v, i}] = lists[v][i];
      else
        result.unreachable.push_back({v, i});
    }

  for (int i = 0; i < width; ++i)
    for (int e = 0; e < arena.edge_count(); ++e) {
      const Edge& edge = arena.edge(e);
      int target = i; // filler: keep the memory unchanged
      if (i < static_cast<int>(lists[edge.src].size())) {
        int stepped = poset.step(lists[edge.src][i], edge.color);
        if (stepped != ResidualPoset::kEmpty) {
          const auto& dst_list = lists[edge.dst];
          for (int j = 0; j < static_cast<int>(dst_list.size()); ++j)
            if (poset.leq(dst_list[j], stepped)) {
              target = j;
              break;
            }
        }
      }
      result.strategy.memory.update[i][e] = target;
    }

  for (int v = 0; v < nv; ++v) {
    if (arena.vertex(v).owner != Owner::Eve) continue;
    for (int i = 0; i < width; ++i) {
      int choice = -1;
      if (i < static_cast<int>(lists[v].size())) {
        for (int e : arena.out(v)) {
          const Edge& edge = arena.edge(e);
          int stepped = poset.step(lists[v][i], edge.color);
          if (stepped != ResidualPoset::kEmpty && win(edge.dst, stepped)) {
            choice = e;
            break;
          }
        }
        if (choice < 0) throw internal_error("winning label without a good edge");
      } else {
        choice = arena.out(v).front(); // filler for an unreachable pair
      }
      result.strategy.next[{v, i}] = choice;
    }
  }

  verify_or_die(arena, min_aut, result, v0);
  return result;
}

SynthesisResult synthesize_chain_cover(const Arena& arena, const SafetyAutomaton& min_aut, int v0,
                                       const WidthCertificate& cert) {
  check_inputs(arena, min_aut, v0);
  ResidualPoset poset = build_poset(min_aut);
  const int nr = poset.size();
  const int nc = static_cast<int>(cert.chains.size());

  std::vector<int> chain_of(nr, -1);
  for (int c = 0; c < nc; ++c) {
    const auto& chain = cert.chains[c];
    if (chain.empty()) throw input_error("certificate contains an empty chain");
    for (size_t t = 0; t < chain.size(); ++t) {
      int r = chain[t];
      if (r < 0 || r >= nr || chain_of[r] >= 0)
        throw input_error("certificate chains do not partition the residuals");
      chain_of[r] = c;
      if (t > 0 && !(poset.leq(r, chain[t - 1]) && r != chain[t - 1]))
        throw input_error("certificate chain is not strictly decreasing");
    }
  }
  for (int r = 0; r < nr; ++r)
    if (chain_of[r] < 0) throw input_error("certificate chains do not partition the residuals");

  WinningPairs pairs = winning_pairs(arena, min_aut);
  const int nv = arena.vertex_count();
  auto win = [&](int v, int r) { return pairs.at(v, poset.state_of(r)); };
  if (!win(v0, poset.initial()))
    throw not_winning_error("no winning strategy from " + arena.vertex(v0).id);

  // bottom[v][c]: least winning residual of chain c at v, or -1. Winning
  // residuals are upward closed, so they form a prefix of the chain.
  std::vector<std::vector<int>> bottom(nv, std::vector<int>(nc, -1));
  for (int v = 0; v < nv; ++v)
    for (int c = 0; c < nc; ++c) {
      const auto& chain = cert.chains[c];
      size_t t = 0;
      while (t < chain.size() && win(v, chain[t])) ++t;
      for (size_t s = t; s < chain.size(); ++s)
        if (win(v, chain[s])) throw internal_error("winning residuals broke upward closure");
      if (t > 0) bottom[v][c] = chain[t - 1];
    }

  SynthesisResult result;
  result.memory_size = nc;
  result.label_kind = LabelKind::Chain;
  result.strategy.memory.state_ids = memory_ids("c", nc);
  result.strategy.memory.initial = chain_of[poset.initial()];
  result.strategy.memory.update.assign(nc, std::vector<int>(arena.edge_count(), 0));

  for (int v = 0; v < nv; ++v)
    for (int c = 0; c < nc; ++c) {
      if (bottom[v][c] >= 0)
        result.labels[{v, c}] = bottom[v][c];
      else
        result.unreachable.push_back({v, c});
    }

  for (int c = 0; c < nc; ++c)
    for (int e = 0; e < arena.edge_count(); ++e) {
      const Edge& edge = arena.edge(e);
      int target = c; // filler: keep the memory unchanged
      // Stepping the winning prefix of chain c keeps it a chain; its last
      // non-empty step is the minimum.
      int stepped = ResidualPoset::kEmpty;
      for (int r : cert.chains[c]) {
        if (!win(edge.src, r)) break;
        int s = poset.step(r, edge.color);
        if (s == ResidualPoset::kEmpty) break;
        stepped = s;
      }
      if (stepped != ResidualPoset::kEmpty && win(edge.dst, stepped)) target = chain_of[stepped];
      result.strategy.memory.update[c][e] = target;
    }

  for (int v = 0; v < nv; ++v) {
    if (arena.vertex(v).owner != Owner::Eve) continue;
    for (int c = 0; c < nc; ++c) {
      int choice = -1;
      if (bottom[v][c] >= 0) {
        for (int e : arena.out(v)) {
          const Edge& edge = arena.edge(e);
          int stepped = poset.step(bottom[v][c], edge.color);
          if (stepped != ResidualPoset::kEmpty && win(edge.dst, stepped)) {
            choice = e;
            break;
          }
        }
        if (choice < 0) throw internal_error("winning label without a good edge");
      } else {
        choice = arena.out(v).front(); // filler for an unreachable pair
      }
      result.strategy.next[{v, c}] = choice;
    }
  }

  verify_or_die(arena, min_aut, result, v0);
  return result;
}

namespace {

// Lazy search for an m-state strategy: decisions (Eve moves, memory updates)
// are fixed only when a consistent play reaches them, values are pruned with
// the unbounded-memory winning pairs, and fresh memory states are introduced
// in first-use order to break symmetry.
struct MemorySearch {
  const Arena& arena;
  const SafetyAutomaton& aut;
  const WinningPairs& pairs;
  const std::vector<char>& relevant; // per edge: can its target still reach an Eve vertex?
  int v0;
  int m_cap = 0;
  int used = 1;
  std::vector<int> next_choice; // (v, m) -> edge, -1 undecided
  std::vector<int> upd_choice;  // (m, e) -> memory, -1 undecided
  long long* nodes;
  long long node_limit;

  MemorySearch(const Arena& arena, const SafetyAutomaton& aut, const WinningPairs& pairs,
               const std::vector<char>& relevant, int v0, long long* nodes, long long node_limit)
      : arena(arena), aut(aut), pairs(pairs), relevant(relevant), v0(v0), nodes(nodes),
        node_limit(node_limit) {}

  bool run(int cap) {
    m_cap = cap;
    used = 1;
    next_choice.assign(static_cast<size_t>(arena.vertex_count()) * cap, -1);
    upd_choice.assign(static_cast<size_t>(cap) * arena.edge_count(), -1);
    return explore();
  }

  bool explore() {
    const int nq = aut.state_count();
    const int ne = arena.edge_count();
    std::vector<char> seen(static_cast<size_t>(arena.vertex_count()) * m_cap * nq, 0);
    auto index = [&](int v, int m, int q) { return (v * m_cap + m) * nq + q; };
    std::deque<int> queue;
    seen[index(v0, 0, aut.initial())] = 1;
    queue.push_back(index(v0, 0, aut.initial()));
    while (!queue.empty()) {
      if (++*nodes > node_limit)
        throw budget_error("minimal-memory search exceeded its node budget");
      int t = queue.front();
      queue.pop_front();
      int q = t % nq, m = (t / nq) % m_cap, v = t / (nq * m_cap);

      int forced = -1;
      if (arena.vertex(v).owner == Owner::Eve) {
        int& choice = next_choice[v * m_cap + m];
        if (choice < 0) {
          for (int e : arena.out(v)) {
            int q2 = aut.next(q, arena.edge(e).color);
            if (aut.is_sink(q2) || !pairs.at(arena.edge(e).dst, q2)) continue;
            choice = e;
            if (explore()) return true;
            choice = -1;
          }
          return false;
        }
        forced = choice;
      }

      for (int e : forced >= 0 ? std::vector<int>{forced} : arena.out(v)) {
        const Edge& edge = arena.edge(e);
        int q2 = aut.next(q, edge.color);
        // An unwinnable pair dooms every extension of the current choices.
        if (aut.is_sink(q2) || !pairs.at(edge.dst, q2)) return false;
        int& target = upd_choice[m * ne + e];
        if (target < 0) {
          if (!relevant[e]) {
            target = m; // no Eve vertex ahead: the memory no longer matters
          } else {
            int hi = std::min(used, m_cap - 1);
            for (int cand = 0; cand <= hi; ++cand) {
              target = cand;
              bool fresh = cand == used;
              if (fresh) ++used;
              if (explore()) return true;
              if (fresh) --used;
              target = -1;
            }
            return false;
          }
        }
        int t2 = index(edge.dst, target, q2);
        if (!seen[t2]) {
          seen[t2] = 1;
          queue.push_back(t2);
        }
      }
    }
    return true;
  }

  MealyStrategy materialize() const {
    MealyStrategy strategy;
    strategy.memory.state_ids = memory_ids("m", m_cap);
    strategy.memory.initial = 0;
    strategy.memory.update.assign(m_cap, std::vector<int>(arena.edge_count(), 0));
    for (int m = 0; m < m_cap; ++m)
      for (int e = 0; e < arena.edge_count(); ++e) {
        int target = upd_choice[m * arena.edge_count() + e];
        strategy.memory.update[m][e] = target < 0 ? m : target;
      }
    for (int v = 0; v < arena.vertex_count(); ++v) {
      if (arena.vertex(v).owner != Owner::Eve) continue;
      for (int m = 0; m < m_cap; ++m) {
        int choice = next_choice[v * m_cap + m];
        strategy.next[{v, m}] = choice < 0 ? arena.out(v).front() : choice;
      }
    }
    return strategy;
  }
};

} // namespace

std::optional<int> minimal_memory_bruteforce(const Arena& arena, const SafetyAutomaton& min_aut,
                                             int v0, int max_m, const BruteforceBudget& budget) {
  check_inputs(arena, min_aut, v0);
  if (max_m < 1) throw input_error("memory bound must be at least 1");
  long long instance = static_cast<long long>(arena.vertex_count()) * arena.edge_count() * max_m;
  if (instance > budget.instance_limit)
    throw budget_error("minimal-memory search refused: instance beyond the configured budget");

  WinningPairs pairs = winning_pairs(arena, min_aut);
  if (!pairs.at(v0, min_aut.initial())) return std::nullopt;

  // reach_eve[v]: some play from v can still visit an Eve vertex.
  std::vector<char> reach_eve(arena.vertex_count(), 0);
  {
    std::vector<std::vector<int>> preds(arena.vertex_count());
    for (int e = 0; e < arena.edge_count(); ++e)
      preds[arena.edge(e).dst].push_back(arena.edge(e).src);
    std::deque<int> queue;
    for (int v = 0; v < arena.vertex_count(); ++v)
      if (arena.vertex(v).owner == Owner::Eve) {
        reach_eve[v] = 1;
        queue.push_back(v);
      }
    while (!queue.empty()) {
      int w = queue.front();
      queue.pop_front();
      for (int p : preds[w])
        if (!reach_eve[p]) {
          reach_eve[p] = 1;
          queue.push_back(p);
        }
    }
  }
  std::vector<char> relevant(arena.edge_count(), 0);
  for (int e = 0; e < arena.edge_count(); ++e) relevant[e] = reach_eve[arena.edge(e).dst];

  long long nodes = 0;
  MemorySearch search(arena, min_aut, pairs, relevant, v0, &nodes, budget.node_limit);
  for (int m = 1; m <= max_m; ++m) {
    if (!search.run(m)) continue;
    MealyStrategy strategy = search.materialize();
    VerifyResult check = verify_strategy(arena, min_aut, strategy, v0);
    if (!check.winning) throw internal_error("memory search result failed verification");
    return m;
  }
  return std::nullopt;
}

} // namespace safemem
