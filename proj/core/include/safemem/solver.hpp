#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "safemem/arena.hpp"
#include "safemem/automaton.hpp"

namespace safemem {

// Deterministic memory reading the edges of a fixed arena.
struct MemoryStructure {
  std::vector<std::string> state_ids;
  int initial = 0;
  // update[m][e]: memory after reading edge e in memory m. Total.
  std::vector<std::vector<int>> update;
};

// Memory structure plus a next-move table for Eve's vertices. The table may
// be partial; it must cover every reachable (Eve vertex, memory) pair.
struct MealyStrategy {
  MemoryStructure memory;
  std::map<std::pair<int, int>, int> next; // (vertex, memory) -> edge
};

// Arena expanded with automaton states; bad edges enter a sink component.
struct ProductGame {
  Arena arena;
  std::vector<char> bad;
  std::vector<std::pair<int, int>> origin; // product vertex -> (vertex, state)
  int vertex_of(int v, int q) const;

private:
  friend ProductGame build_residual_product(const Arena&, const SafetyAutomaton&);
  ProductGame(Arena arena, std::vector<char> bad, std::vector<std::pair<int, int>> origin,
              int states);
  int states_ = 0;
};

// Full product: one vertex per (arena vertex, automaton state), owners
// inherited, colors preserved. An edge is bad iff its target state is sink.
ProductGame build_residual_product(const Arena& arena, const SafetyAutomaton& aut);

struct SolveResult {
  std::vector<char> winning;
  // For Eve vertices inside the region: a witnessing edge; -1 elsewhere.
  std::vector<int> positional;
};

// Greatest fixpoint of the safety condition "never take a bad edge":
// backward worklist deletion, linear in the edge count.
SolveResult solve_safety(const Arena& arena, const std::vector<char>& bad);

// Dense (vertex, automaton state) table of product winning pairs.
class WinningPairs {
public:
  WinningPairs(int vertices, int states)
      : states_(states), data_(static_cast<size_t>(vertices) * states, 0) {}
  bool at(int v, int q) const { return data_.at(static_cast<size_t>(v) * states_ + q) != 0; }
  void set(int v, int q) { data_.at(static_cast<size_t>(v) * states_ + q) = 1; }

private:
  int states_;
  std::vector<char> data_;
};

// Pairs (v, q) from which Eve wins the residual product; only non-sink q
// can appear.
WinningPairs winning_pairs(const Arena& arena, const SafetyAutomaton& aut);

struct VerifyResult {
  bool winning = false;
  // On Losing: a shortest strategy-consistent play entering a sink.
  std::optional<Play> counterexample;
  std::vector<std::string> warnings;
};

// Exhaustive model check over reachable (vertex, memory, state) triples.
// Throws malformed_strategy_error if a reachable Eve pair has no usable
// next move; unreachable malformed entries only produce warnings.
VerifyResult verify_strategy(const Arena& arena, const SafetyAutomaton& aut,
                             const MealyStrategy& strategy, int v0);

} // namespace safemem
