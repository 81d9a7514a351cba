#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "safemem/automaton.hpp"

namespace safemem {

// Language-minimal form: one state per distinct non-empty residual plus at
// most one absorbing sink, reachable states only. States whose residual is
// empty (doomed states) are folded into the sink. Non-sink states come
// first in breadth-first order from the initial state; a singleton class
// keeps its original id, a merged class takes the id of its first-reached
// member.
SafetyAutomaton minimize(const SafetyAutomaton& aut);

struct InclusionResult {
  bool included = false;
  // On No: a lasso Safe from q1 and Unsafe from q2.
  std::optional<Lasso> witness;
};

// Decides L(q1) <= L(q2) for non-sink states q1, q2 of a minimized
// automaton, via the synchronous product: inclusion fails iff a pair
// (live, sink) is reachable from (q1, q2).
InclusionResult residual_included(const SafetyAutomaton& min_aut, int q1, int q2);

// Non-empty left quotients of the objective, ordered by language inclusion.
class ResidualPoset {
public:
  static constexpr int kEmpty = -1;

  const SafetyAutomaton& automaton() const { return aut_; }
  const Alphabet& alphabet() const { return aut_.alphabet(); }
  int size() const { return count_; }
  int initial() const { return initial_; }
  const std::string& id(int r) const { return aut_.state_id(state_of_.at(r)); }
  int state_of(int r) const { return state_of_.at(r); }
  // Residual of a non-sink automaton state, or nullopt for the sink.
  std::optional<int> residual_of_state(int q) const;
  std::optional<int> residual_of_id(const std::string& id) const;
  bool leq(int r1, int r2) const { return leq_.at(r1 * count_ + r2) != 0; }
  const Word& representative(int r) const { return reps_.at(r); }
  // Residual reached by one symbol, or kEmpty.
  int step(int r, int symbol) const { return step_.at(r * alphabet().size() + symbol); }
  // Follows step along a word; kEmpty is absorbing.
  int step_word(int r, const Word& w) const;

private:
  friend ResidualPoset build_poset(const SafetyAutomaton&);
  SafetyAutomaton aut_{Alphabet({"?"}), {"?"}, 0, {0}, {0}};
  int count_ = 0;
  int initial_ = 0;
  std::vector<int> state_of_;
  std::vector<int> res_of_state_; // -1 for sink
  std::vector<char> leq_;
  std::vector<Word> reps_;
  std::vector<int> step_;
};

// Throws empty_objective_error when the objective is the empty language and
// input_error when the automaton is not language-minimal.
ResidualPoset build_poset(const SafetyAutomaton& min_aut);

struct WidthCertificate {
  int width = 0;
  // Pairwise incomparable residuals, ascending.
  std::vector<int> antichain;
  // Partition of all residuals into `width` chains, each listed largest
  // first.
  std::vector<std::vector<int>> chains;
  // (i, j) over antichain positions, i != j: a lasso in
  // L(antichain[i]) \ L(antichain[j]), greedily shortened.
  std::map<std::pair<int, int>, Lasso> separators;
};

// Maximum antichain and minimum chain cover via bipartite matching on the
// strict order; both sides of the Dilworth equality are materialized and
// cross-checked.
WidthCertificate poset_width(const ResidualPoset& poset);

// Independent width oracle: exhaustive antichain search. Refuses posets
// larger than max_size.
int width_bruteforce(const ResidualPoset& poset, int max_size = 20);

} // namespace safemem
