#pragma once

#include <string>
#include <vector>

#include "safemem/automaton.hpp"
#include "safemem/solver.hpp"

namespace safemem {

// Generalized safety over {bot, 1..k}: states are the sets of colors seen
// so far, the full set is the sink, bot is neutral. The residual poset is
// the strict-subset lattice reversed; its width is C(k, floor(k/2)).
SafetyAutomaton gen_generalized_safety(int k);

// Saturating energy level over {a (+1), b (-1)}: levels 0..cap, b from 0
// is the sink, a at cap stays at cap. The residuals form a chain.
SafetyAutomaton gen_energy(int cap, int init);

// Truncated outbidding over {a, b, c}: safe words are a^n b^p c^omega with
// n <= p and n <= n_cap, plus a^n b^omega tails (n <= n_cap). Two chains
// (a-count and b-deficit) plus the c state; width 3 once n_cap >= 3, when
// a mid-chain a-state escapes both deficit comparisons.
SafetyAutomaton gen_outbidding(int n_cap);

// Monotone counter action on {0..bound}; -1 encodes overflow (the sink).
struct CounterAction {
  std::string name;
  std::vector<int> table; // table[i] for i in 0..bound
};

// Built-ins: nop, inc, reset, half, next_pow2 (round up to a power of two).
CounterAction counter_builtin(const std::string& name, int bound);

// Bounded counter over the given monotone actions; counter values form a
// chain, so the width is 1. Throws input_error on non-monotone tables.
SafetyAutomaton gen_counter(int bound, const std::vector<CounterAction>& actions);

struct Figure1Instance {
  SafetyAutomaton objective;
  Arena arena;
  int v0 = 0;
};

// Three-vertex game for the objective "colors a and b never both occur"
// over {a, b, c}: Adam plays a or b, Eve answers, then the game idles on
// the neutral color c. Eve needs two memory states from v0.
Figure1Instance gen_figure1();

struct LowerBoundGame {
  Arena arena;
  int v0 = 0;
  MealyStrategy witness;
  // The analyzed objective, extended with a neutral color when the input
  // had none; the arena is built over this alphabet.
  SafetyAutomaton objective;
  int width = 0;
  bool trivial = false; // width 1: the game degenerates to a single option
  std::vector<std::string> notes;
};

// Three-phase game forcing width-many memory states: Adam spells an
// antichain representative through a trie, Eve commits to one of width-many
// options, Adam then plays any separator lasso. The returned witness uses
// exactly width memory states and passes verify_strategy; every separator
// is checked Unsafe against the non-matching residuals at generation time.
LowerBoundGame gen_lower_bound_game(const SafetyAutomaton& aut);

} // namespace safemem
