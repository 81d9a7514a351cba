#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "safemem/alphabet.hpp"
#include "safemem/arena.hpp"

namespace safemem {

// Unchecked mirror of the automaton file format.
struct AutomatonSpec {
  struct DeltaSpec {
    std::string from, symbol, to;
  };
  std::vector<std::string> alphabet;
  std::vector<std::string> states;
  std::string initial;
  std::vector<std::string> sink;
  std::vector<DeltaSpec> delta;
};

ValidationReport validate_automaton(const AutomatonSpec& spec);

// Complete deterministic safety automaton with absorbing sink states.
// The denoted objective is the set of infinite words whose run from the
// initial state never enters a sink.
class SafetyAutomaton {
public:
  explicit SafetyAutomaton(const AutomatonSpec& spec); // throws input_error
  SafetyAutomaton(Alphabet alphabet, std::vector<std::string> state_ids, int initial,
                  std::vector<char> sink, std::vector<int> delta);

  const Alphabet& alphabet() const { return alphabet_; }
  int state_count() const { return static_cast<int>(state_ids_.size()); }
  const std::string& state_id(int q) const { return state_ids_.at(q); }
  std::optional<int> state_index(const std::string& id) const;
  int state_index_or_throw(const std::string& id) const;
  int initial() const { return initial_; }
  bool is_sink(int q) const { return sink_.at(q) != 0; }
  int next(int q, int symbol) const;

  int run_word(int from, const Word& w) const;

  enum class LassoVerdict { Safe, Unsafe };
  // Runs the prefix, then iterates the cycle until a state repeats;
  // Unsafe the moment a sink is entered (or if `from` is a sink).
  LassoVerdict eval_lasso(int from, const Lasso& lasso) const;

  // Greatest fixpoint of non-sink states with at least one live successor;
  // exactly the states with a non-empty residual.
  std::vector<char> live_states() const;

  AutomatonSpec to_spec() const;

private:
  Alphabet alphabet_;
  std::vector<std::string> state_ids_;
  int initial_;
  std::vector<char> sink_;
  std::vector<int> delta_; // state * |alphabet| + symbol
  std::unordered_map<std::string, int> state_index_;
};

} // namespace safemem
