#pragma once

// Shared test helpers: seeded random instances and independent oracles.
// The oracles deliberately avoid the library's product constructions; they
// only consume the public word/lasso evaluators.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "safemem/arena.hpp"
#include "safemem/automaton.hpp"
#include "safemem/residuals.hpp"

namespace testsupport {

inline std::mt19937 make_rng(uint32_t seed) { return std::mt19937(seed); }

inline int pick(std::mt19937& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Complete automaton with one absorbing sink (occasionally none, so the
// full-language path gets exercised). May denote the empty language.
inline safemem::SafetyAutomaton random_automaton(std::mt19937& rng, int max_states,
                                                 int alphabet_size) {
  const int n = pick(rng, 2, max_states);
  const bool with_sink = pick(rng, 0, 7) != 0;
  std::vector<std::string> symbols;
  for (int a = 0; a < alphabet_size; ++a) symbols.push_back(std::string(1, char('a' + a)));
  std::vector<std::string> ids;
  std::vector<char> sink;
  for (int q = 0; q < n; ++q) {
    ids.push_back("q" + std::to_string(q));
    sink.push_back(with_sink && q == n - 1);
  }
  std::vector<int> delta;
  for (int q = 0; q < n; ++q)
    for (int a = 0; a < alphabet_size; ++a)
      delta.push_back(sink[q] ? q : pick(rng, 0, n - 1));
  return safemem::SafetyAutomaton(safemem::Alphabet(symbols), std::move(ids), 0, std::move(sink),
                                  std::move(delta));
}

// Random automaton whose language is non-empty.
inline safemem::SafetyAutomaton random_live_automaton(std::mt19937& rng, int max_states,
                                                      int alphabet_size) {
  for (;;) {
    safemem::SafetyAutomaton aut = random_automaton(rng, max_states, alphabet_size);
    if (aut.live_states()[aut.initial()]) return aut;
  }
}

// Connected-enough arena over the given alphabet: every vertex gets one to
// three outgoing edges, so there are no dead ends by construction.
inline safemem::Arena random_arena(std::mt19937& rng, const safemem::Alphabet& alphabet,
                                   int max_vertices) {
  const int n = pick(rng, 1, max_vertices);
  std::vector<safemem::Vertex> vertices;
  for (int v = 0; v < n; ++v)
    vertices.push_back(
        {"v" + std::to_string(v), pick(rng, 0, 1) ? safemem::Owner::Adam : safemem::Owner::Eve});
  std::vector<safemem::Edge> edges;
  for (int v = 0; v < n; ++v) {
    const int degree = pick(rng, 1, 3);
    std::vector<std::pair<int, int>> used;
    for (int d = 0; d < degree; ++d) {
      const std::pair<int, int> choice{pick(rng, 0, n - 1), pick(rng, 0, alphabet.size() - 1)};
      if (std::find(used.begin(), used.end(), choice) != used.end()) continue;
      used.push_back(choice);
      edges.push_back({v, choice.first, choice.second});
    }
  }
  return safemem::Arena(alphabet, std::move(vertices), std::move(edges));
}

// All words over `symbols` symbols of length 1..max_len, shortest first.
inline std::vector<safemem::Word> all_cycle_words(int symbols, int max_len) {
  std::vector<safemem::Word> words;
  std::vector<safemem::Word> layer;
  layer.push_back({});
  for (int len = 1; len <= max_len; ++len) {
    std::vector<safemem::Word> next;
    for (const safemem::Word& w : layer)
      for (int a = 0; a < symbols; ++a) {
        safemem::Word ext = w;
        ext.push_back(a);
        words.push_back(ext);
        next.push_back(std::move(ext));
      }
    layer = std::move(next);
  }
  return words;
}

// Exhaustive lasso oracle for L(q1) <= L(q2). Enumerates the breadth-first
// shortest word into every pair reachable in the synchronous product and
// every cycle word of length <= |Q|, and evaluates both sides of each lasso
// with eval_lasso alone. Complete: a failing inclusion reaches some
// (live, sink) pair, and pumping a safe run from the live state yields a
// cycle of length <= |Q| rooted at a reachable pair.
inline bool lasso_inclusion_oracle(const safemem::SafetyAutomaton& aut, int q1, int q2) {
  const int n = aut.state_count();
  const int nsym = aut.alphabet().size();
  std::vector<char> seen(static_cast<size_t>(n) * n, 0);
  std::vector<safemem::Word> prefix_of(static_cast<size_t>(n) * n);
  std::vector<int> pairs;
  std::deque<int> queue;
  seen[q1 * n + q2] = 1;
  queue.push_back(q1 * n + q2);
  while (!queue.empty()) {
    const int p = queue.front();
    queue.pop_front();
    pairs.push_back(p);
    for (int a = 0; a < nsym; ++a) {
      const int t = aut.next(p / n, a) * n + aut.next(p % n, a);
      if (seen[t]) continue;
      seen[t] = 1;
      prefix_of[t] = prefix_of[p];
      prefix_of[t].push_back(a);
      queue.push_back(t);
    }
  }
  const std::vector<safemem::Word> cycles = all_cycle_words(nsym, n);
  for (int p : pairs)
    for (const safemem::Word& y : cycles) {
      const safemem::Lasso lasso{prefix_of[p], y};
      if (aut.eval_lasso(q1, lasso) == safemem::SafetyAutomaton::LassoVerdict::Safe &&
          aut.eval_lasso(q2, lasso) == safemem::SafetyAutomaton::LassoVerdict::Unsafe)
        return false;
    }
  return true;
}

} // namespace testsupport
