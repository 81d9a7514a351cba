#include "safemem/residuals.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>

#include "safemem/errors.hpp"

namespace safemem {

namespace {

// Reachable states in breadth-first order, symbols in alphabet order.
std::vector<int> bfs_order(const SafetyAutomaton& aut) {
  std::vector<char> seen(aut.state_count(), 0);
  std::vector<int> order;
  order.push_back(aut.initial());
  seen[aut.initial()] = 1;
  for (size_t i = 0; i < order.size(); ++i)
    for (int a = 0; a < aut.alphabet().size(); ++a) {
      int to = aut.next(order[i], a);
      if (!seen[to]) {
        seen[to] = 1;
        order.push_back(to);
      }
    }
  return order;
}

// fail[q1 * n + q2] = 1 iff L(q1) is not included in L(q2); backward
// closure in the synchronous product from the (live, sink) cores.
std::vector<char> inclusion_fail_table(const SafetyAutomaton& aut) {
  const int n = aut.state_count();
  const int nsym = aut.alphabet().size();
  std::vector<char> live = aut.live_states();
  std::vector<char> fail(static_cast<size_t>(n) * n, 0);
  std::deque<int> queue;
  for (int p = 0; p < n; ++p)
    for (int s = 0; s < n; ++s)
      if (live[p] && aut.is_sink(s)) {
        fail[p * n + s] = 1;
        queue.push_back(p * n + s);
      }
  std::vector<std::vector<int>> rev(static_cast<size_t>(n) * n);
  for (int p = 0; p < n; ++p)
    for (int s = 0; s < n; ++s)
      for (int a = 0; a < nsym; ++a)
        rev[aut.next(p, a) * n + aut.next(s, a)].push_back(p * n + s);
  while (!queue.empty()) {
    int pair = queue.front();
    queue.pop_front();
    for (int pred : rev[pair])
      if (!fail[pred]) {
        fail[pred] = 1;
        queue.push_back(pred);
      }
  }
  return fail;
}

} // namespace

SafetyAutomaton minimize(const SafetyAutomaton& aut) {
  const int nsym = aut.alphabet().size();
  const std::vector<int> order = bfs_order(aut);
  std::vector<int> pos(aut.state_count(), -1);
  for (int i = 0; i < static_cast<int>(order.size()); ++i) pos[order[i]] = i;

  std::vector<char> live = aut.live_states();

  // Moore refinement over reachable states; class 0 collects the sink and
  // every doomed state (their residual is empty).
  std::vector<int> cls(aut.state_count(), 0);
  for (int q : order) cls[q] = live[q] ? 1 : 0;
  int classes = 2;
  while (true) {
    std::map<std::vector<int>, int> renumber;
    std::vector<int> next_cls(aut.state_count(), 0);
    for (int q : order) {
      if (!live[q]) continue;
      std::vector<int> sig;
      sig.reserve(nsym + 1);
      sig.push_back(cls[q]);
      for (int a = 0; a < nsym; ++a) sig.push_back(cls[aut.next(q, a)]);
      auto [it, fresh] = renumber.emplace(std::move(sig), static_cast<int>(renumber.size()) + 1);
      (void)fresh;
      next_cls[q] = it->second;
    }
    int next_classes = static_cast<int>(renumber.size()) + 1;
    bool stable = next_classes == classes;
    cls = std::move(next_cls);
    classes = next_classes;
    if (stable) break;
  }

  // Renumbering followed first-occurrence in BFS order, so live classes
  // 1..C are already ordered by their first-reached member; the sink class
  // goes last.
  bool has_dead = false;
  for (int q : order) has_dead = has_dead || !live[q];
  const int live_classes = classes - 1;
  const int total = live_classes + (has_dead ? 1 : 0);

  auto out_index = [&](int q) {
    return live[q] ? cls[q] - 1 : live_classes; // sink last
  };

  std::vector<std::string> ids(total);
  std::vector<int> representative(total, -1);
  for (int q : order) {
    int c = out_index(q);
    if (representative[c] == -1) {
      representative[c] = q;
      ids[c] = aut.state_id(q);
    }
  }

  std::vector<char> sink(total, 0);
  if (has_dead) sink[live_classes] = 1;
  std::vector<int> delta(static_cast<size_t>(total) * nsym, 0);
  for (int c = 0; c < total; ++c) {
    int q = representative[c];
    for (int a = 0; a < nsym; ++a)
      delta[c * nsym + a] = sink[c] ? c : out_index(aut.next(q, a));
  }
  return SafetyAutomaton(aut.alphabet(), std::move(ids), out_index(aut.initial()),
                         std::move(sink), std::move(delta));
}

InclusionResult residual_included(const SafetyAutomaton& min_aut, int q1, int q2) {
  const int n = min_aut.state_count();
  if (q1 < 0 || q1 >= n || q2 < 0 || q2 >= n) throw input_error("state out of range");
  if (min_aut.is_sink(q1) || min_aut.is_sink(q2))
    throw input_error("residual_included on a sink state");
  const int nsym = min_aut.alphabet().size();
  std::vector<char> live = min_aut.live_states();

  // Forward search for a reachable (live, sink) pair; parents give the
  // shortest violating prefix.
  std::vector<int> par_pair(static_cast<size_t>(n) * n, -2);
  std::vector<int> par_sym(static_cast<size_t>(n) * n, -1);
  std::deque<int> queue;
  int start = q1 * n + q2;
  par_pair[start] = -1;
  queue.push_back(start);
  int hit = -1;
  while (!queue.empty() && hit < 0) {
    int pair = queue.front();
    queue.pop_front();
    int p = pair / n, s = pair % n;
    for (int a = 0; a < nsym && hit < 0; ++a) {
      int np = min_aut.next(p, a), ns = min_aut.next(s, a);
      int npair = np * n + ns;
      if (par_pair[npair] != -2) continue;
      par_pair[npair] = pair;
      par_sym[npair] = a;
      if (live[np] && min_aut.is_sink(ns))
        hit = npair;
      else
        queue.push_back(npair);
    }
  }
  if (hit < 0) return {true, std::nullopt};

  Lasso witness;
  for (int pair = hit; par_pair[pair] >= 0; pair = par_pair[pair])
    witness.prefix.push_back(par_sym[pair]);
  std::reverse(witness.prefix.begin(), witness.prefix.end());

  // Loop inside live states of the q1 component, least symbol first.
  int cur = hit / n;
  Word walk;
  std::vector<int> seen_at(n, -1);
  while (seen_at[cur] < 0) {
    seen_at[cur] = static_cast<int>(walk.size());
    int pick = -1;
    for (int a = 0; a < nsym && pick < 0; ++a)
      if (live[min_aut.next(cur, a)]) pick = a;
    if (pick < 0) throw internal_error("live state without live successor");
    walk.push_back(pick);
    cur = min_aut.next(cur, pick);
  }
  int split = seen_at[cur];
  witness.prefix.insert(witness.prefix.end(), walk.begin(), walk.begin() + split);
  witness.cycle.assign(walk.begin() + split, walk.end());

  if (min_aut.eval_lasso(q1, witness) != SafetyAutomaton::LassoVerdict::Safe ||
      min_aut.eval_lasso(q2, witness) != SafetyAutomaton::LassoVerdict::Unsafe)
    throw internal_error("inclusion witness failed its own check");
  return {false, witness};
}

std::optional<int> ResidualPoset::residual_of_state(int q) const {
  int r = res_of_state_.at(q);
  if (r < 0) return std::nullopt;
  return r;
}

std::optional<int> ResidualPoset::residual_of_id(const std::string& id) const {
  auto q = aut_.state_index(id);
  if (!q) return std::nullopt;
  return residual_of_state(*q);
}

int ResidualPoset::step_word(int r, const Word& w) const {
  for (int a : w) {
    if (r == kEmpty) return kEmpty;
    r = step(r, a);
  }
  return r;
}

ResidualPoset build_poset(const SafetyAutomaton& min_aut) {
  if (min_aut.is_sink(min_aut.initial()))
    throw empty_objective_error("objective is the empty language; no residuals to analyze");

  ResidualPoset poset;
  poset.aut_ = min_aut;
  const int n = min_aut.state_count();
  const int nsym = min_aut.alphabet().size();

  std::vector<char> live = min_aut.live_states();
  poset.res_of_state_.assign(n, -1);
  for (int q = 0; q < n; ++q) {
    if (min_aut.is_sink(q)) continue;
    if (!live[q])
      throw input_error("automaton not language-minimal: state " + min_aut.state_id(q) +
                        " has an empty residual");
    poset.res_of_state_[q] = static_cast<int>(poset.state_of_.size());
    poset.state_of_.push_back(q);
  }
  poset.count_ = static_cast<int>(poset.state_of_.size());
  poset.initial_ = poset.res_of_state_[min_aut.initial()];

  const std::vector<char> fail = inclusion_fail_table(min_aut);
  poset.leq_.assign(static_cast<size_t>(poset.count_) * poset.count_, 0);
  for (int i = 0; i < poset.count_; ++i)
    for (int j = 0; j < poset.count_; ++j)
      poset.leq_[i * poset.count_ + j] = !fail[poset.state_of_[i] * n + poset.state_of_[j]];

  for (int i = 0; i < poset.count_; ++i)
    for (int j = i + 1; j < poset.count_; ++j)
      if (poset.leq(i, j) && poset.leq(j, i))
        throw input_error("automaton not language-minimal: states " + poset.id(i) + " and " +
                          poset.id(j) + " denote the same residual");

  poset.step_.assign(static_cast<size_t>(poset.count_) * nsym, ResidualPoset::kEmpty);
  for (int i = 0; i < poset.count_; ++i)
    for (int a = 0; a < nsym; ++a)
      poset.step_[i * nsym + a] = poset.res_of_state_[min_aut.next(poset.state_of_[i], a)];

  // Shortest-lex representatives by breadth-first search in symbol order.
  poset.reps_.assign(poset.count_, {});
  std::vector<char> seen(n, 0);
  std::deque<std::pair<int, Word>> queue;
  seen[min_aut.initial()] = 1;
  queue.push_back({min_aut.initial(), {}});
  int found = 0;
  while (!queue.empty()) {
    auto [q, w] = queue.front();
    queue.pop_front();
    if (poset.res_of_state_[q] >= 0) {
      poset.reps_[poset.res_of_state_[q]] = w;
      ++found;
    }
    for (int a = 0; a < nsym; ++a) {
      int to = min_aut.next(q, a);
      if (seen[to]) continue;
      seen[to] = 1;
      Word w2 = w;
      w2.push_back(a);
      queue.push_back({to, std::move(w2)});
    }
  }
  if (found != poset.count_)
    throw input_error("automaton not language-minimal: unreachable states present");

  // Steps preserve the order (weak monotonicity); a consequence of leq
  // being true language inclusion, asserted for safety.
  for (int i = 0; i < poset.count_; ++i)
    for (int j = 0; j < poset.count_; ++j) {
      if (!poset.leq(i, j)) continue;
      for (int a = 0; a < nsym; ++a) {
        int si = poset.step(i, a), sj = poset.step(j, a);
        if (sj == ResidualPoset::kEmpty && si != ResidualPoset::kEmpty)
          throw internal_error("step monotonicity violated");
        if (si != ResidualPoset::kEmpty && sj != ResidualPoset::kEmpty && !poset.leq(si, sj))
          throw internal_error("step monotonicity violated");
      }
    }

  return poset;
}

namespace {

// Greedy witness shortening: drop prefix symbols from the back, then cycle
// symbols, as long as the separation still holds.
Lasso shorten_separator(const SafetyAutomaton& aut, int keep, int avoid, Lasso lasso) {
  auto separates = [&](const Lasso& l) {
    return aut.eval_lasso(keep, l) == SafetyAutomaton::LassoVerdict::Safe &&
           aut.eval_lasso(avoid, l) == SafetyAutomaton::LassoVerdict::Unsafe;
  };
  while (!lasso.prefix.empty()) {
    Lasso candidate = lasso;
    candidate.prefix.pop_back();
    if (!separates(candidate)) break;
    lasso = std::move(candidate);
  }
  while (lasso.cycle.size() > 1) {
    Lasso candidate = lasso;
    candidate.cycle.pop_back();
    if (!separates(candidate)) break;
    lasso = std::move(candidate);
  }
  return lasso;
}

} // namespace

WidthCertificate poset_width(const ResidualPoset& poset) {
  const int n = poset.size();
  std::vector<std::vector<int>> above(n); // strictly larger residuals
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && poset.leq(i, j)) above[i].push_back(j);

  // Kuhn's augmenting paths in fixed vertex order.
  std::vector<int> match_l(n, -1), match_r(n, -1);
  std::vector<char> visited(n, 0);
  auto augment = [&](auto&& self, int i) -> bool {
    for (int j : above[i]) {
      if (visited[j]) continue;
      visited[j] = 1;
      if (match_r[j] < 0 || self(self, match_r[j])) {
        match_l[i] = j;
        match_r[j] = i;
        return true;
      }
    }
    return false;
  };
  int matched = 0;
  for (int i = 0; i < n; ++i) {
    std::fill(visited.begin(), visited.end(), 0);
    if (augment(augment, i)) ++matched;
  }

  WidthCertificate cert;
  cert.width = n - matched;

  // Chains follow matched edges upward; heads are unmatched-as-target.
  std::vector<char> is_target(n, 0);
  for (int i = 0; i < n; ++i)
    if (match_l[i] >= 0) is_target[match_l[i]] = 1;
  for (int i = 0; i < n; ++i) {
    if (is_target[i]) continue;
    std::vector<int> chain;
    for (int cur = i; cur >= 0; cur = match_l[cur]) chain.push_back(cur);
    std::reverse(chain.begin(), chain.end()); // largest first
    cert.chains.push_back(std::move(chain));
  }

  // Koenig: alternate from unmatched left vertices; the antichain is the
  // complement of the resulting minimum vertex cover.
  std::vector<char> zl(n, 0), zr(n, 0);
  std::deque<int> queue;
  for (int i = 0; i < n; ++i)
    if (match_l[i] < 0) {
      zl[i] = 1;
      queue.push_back(i);
    }
  while (!queue.empty()) {
    int i = queue.front();
    queue.pop_front();
    for (int j : above[i]) {
      if (zr[j]) continue;
      zr[j] = 1;
      int back = match_r[j];
      if (back >= 0 && !zl[back]) {
        zl[back] = 1;
        queue.push_back(back);
      }
    }
  }
  for (int i = 0; i < n; ++i)
    if (zl[i] && !zr[i]) cert.antichain.push_back(i);

  if (static_cast<int>(cert.antichain.size()) != cert.width ||
      static_cast<int>(cert.chains.size()) != cert.width)
    throw internal_error("Dilworth equality broke in poset_width");
  for (size_t a = 0; a < cert.antichain.size(); ++a)
    for (size_t b = 0; b < cert.antichain.size(); ++b)
      if (a != b && poset.leq(cert.antichain[a], cert.antichain[b]))
        throw internal_error("antichain contains comparable residuals");
  std::vector<char> covered(n, 0);
  for (const auto& chain : cert.chains)
    for (size_t t = 0; t < chain.size(); ++t) {
      if (covered[chain[t]]) throw internal_error("chain cover is not a partition");
      covered[chain[t]] = 1;
      if (t + 1 < chain.size() && !poset.leq(chain[t + 1], chain[t]))
        throw internal_error("chain is not totally ordered");
    }

  const SafetyAutomaton& aut = poset.automaton();
  const int k = cert.width;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      if (i == j) continue;
      auto res = residual_included(aut, poset.state_of(cert.antichain[i]),
                                   poset.state_of(cert.antichain[j]));
      if (res.included) throw internal_error("antichain member included in another");
      cert.separators[{i, j}] = shorten_separator(aut, poset.state_of(cert.antichain[i]),
                                                  poset.state_of(cert.antichain[j]),
                                                  *res.witness);
    }
  return cert;
}

int width_bruteforce(const ResidualPoset& poset, int max_size) {
  const int n = poset.size();
  if (n > max_size)
    throw budget_error("width_bruteforce refused: " + std::to_string(n) +
                       " residuals exceed the bound of " + std::to_string(max_size));
  std::vector<uint32_t> comparable(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && (poset.leq(i, j) || poset.leq(j, i))) comparable[i] |= 1u << j;

  int best = 0;
  auto rec = [&](auto&& self, uint32_t candidates, int count) -> void {
    if (count + __builtin_popcount(candidates) <= best) return;
    if (!candidates) {
      best = std::max(best, count);
      return;
    }
    int v = __builtin_ctz(candidates);
    self(self, (candidates & ~comparable[v]) & ~(1u << v), count + 1);
    self(self, candidates & ~(1u << v), count);
  };
  rec(rec, n == 32 ? ~0u : (1u << n) - 1, 0);
  return best;
}

} // namespace safemem
