#include "safemem/automaton.hpp"

#include <map>
#include <set>

#include "safemem/errors.hpp"

namespace safemem {

ValidationReport validate_automaton(const AutomatonSpec& spec) {
  ValidationReport report;
  auto add = [&](std::string msg) { report.violations.push_back(std::move(msg)); };

  std::set<std::string> symbols;
  if (spec.alphabet.empty()) add("empty alphabet");
  for (const auto& s : spec.alphabet) {
    if (s.empty()) add("empty symbol name");
    if (!symbols.insert(s).second) add("duplicate symbol " + s);
  }

  std::set<std::string> states;
  for (const auto& q : spec.states) {
    if (q.empty()) add("empty state id");
    if (!states.insert(q).second) add("duplicate state " + q);
  }
  if (!states.count(spec.initial)) add("unknown initial state " + spec.initial);

  std::set<std::string> sinks;
  for (const auto& q : spec.sink) {
    if (!states.count(q)) add("unknown sink state " + q);
    if (!sinks.insert(q).second) add("duplicate sink state " + q);
  }

  std::map<std::pair<std::string, std::string>, std::string> delta;
  for (const auto& d : spec.delta) {
    if (!states.count(d.from)) add("unknown state " + d.from);
    if (!states.count(d.to)) add("unknown state " + d.to);
    if (!symbols.count(d.symbol)) add("unknown symbol " + d.symbol);
    if (!delta.emplace(std::make_pair(d.from, d.symbol), d.to).second)
      add("duplicate delta entry (" + d.from + "," + d.symbol + ")");
  }
  for (const auto& q : spec.states)
    for (const auto& a : spec.alphabet) {
      auto it = delta.find({q, a});
      if (it == delta.end()) {
        add("incomplete delta at (" + q + "," + a + ")");
      } else if (sinks.count(q) && !sinks.count(it->second)) {
        add("sink escape at (" + q + "," + a + ")");
      }
    }

  return report;
}

SafetyAutomaton::SafetyAutomaton(const AutomatonSpec& spec) : alphabet_(spec.alphabet) {
  auto report = validate_automaton(spec);
  if (!report.ok()) throw input_error("invalid automaton: " + report.joined());
  state_ids_ = spec.states;
  for (int i = 0; i < static_cast<int>(state_ids_.size()); ++i)
    state_index_.emplace(state_ids_[i], i);
  initial_ = state_index_.at(spec.initial);
  sink_.assign(state_ids_.size(), 0);
  for (const auto& q : spec.sink) sink_[state_index_.at(q)] = 1;
  delta_.assign(state_ids_.size() * alphabet_.size(), 0);
  for (const auto& d : spec.delta)
    delta_[state_index_.at(d.from) * alphabet_.size() + alphabet_.index_or_throw(d.symbol)] =
        state_index_.at(d.to);
}

SafetyAutomaton::SafetyAutomaton(Alphabet alphabet, std::vector<std::string> state_ids,
                                 int initial, std::vector<char> sink, std::vector<int> delta)
    : alphabet_(std::move(alphabet)),
      state_ids_(std::move(state_ids)),
      initial_(initial),
      sink_(std::move(sink)),
      delta_(std::move(delta)) {
  const int n = state_count();
  if (n == 0) throw input_error("automaton without states");
  if (static_cast<int>(sink_.size()) != n || static_cast<int>(delta_.size()) != n * alphabet_.size())
    throw internal_error("automaton table sizes disagree");
  if (initial_ < 0 || initial_ >= n) throw input_error("initial state out of range");
  for (int i = 0; i < n; ++i)
    if (!state_index_.emplace(state_ids_[i], i).second)
      throw input_error("duplicate state " + state_ids_[i]);
  for (int q = 0; q < n; ++q)
    for (int a = 0; a < alphabet_.size(); ++a) {
      int to = delta_[q * alphabet_.size() + a];
      if (to < 0 || to >= n) throw input_error("delta target out of range");
      if (sink_[q] && !sink_[to])
        throw input_error("sink escape at (" + state_ids_[q] + "," + alphabet_.name(a) + ")");
    }
}

std::optional<int> SafetyAutomaton::state_index(const std::string& id) const {
  auto it = state_index_.find(id);
  if (it == state_index_.end()) return std::nullopt;
  return it->second;
}

int SafetyAutomaton::state_index_or_throw(const std::string& id) const {
  auto q = state_index(id);
  if (!q) throw input_error("unknown state " + id);
  return *q;
}

int SafetyAutomaton::next(int q, int symbol) const {
  if (symbol < 0 || symbol >= alphabet_.size()) throw input_error("unknown symbol index");
  return delta_.at(q * alphabet_.size() + symbol);
}

int SafetyAutomaton::run_word(int from, const Word& w) const {
  int q = from;
  for (int a : w) q = next(q, a);
  return q;
}

SafetyAutomaton::LassoVerdict SafetyAutomaton::eval_lasso(int from, const Lasso& lasso) const {
  if (lasso.cycle.empty()) throw input_error("lasso with empty cycle");
  int q = from;
  if (is_sink(q)) return LassoVerdict::Unsafe;
  for (int a : lasso.prefix) {
    q = next(q, a);
    if (is_sink(q)) return LassoVerdict::Unsafe;
  }
  // The state at the cycle start repeats after at most |states| laps.
  std::vector<char> seen(state_count(), 0);
  while (!seen[q]) {
    seen[q] = 1;
    for (int a : lasso.cycle) {
      q = next(q, a);
      if (is_sink(q)) return LassoVerdict::Unsafe;
    }
  }
  return LassoVerdict::Safe;
}

std::vector<char> SafetyAutomaton::live_states() const {
  std::vector<char> live(state_count(), 0);
  for (int q = 0; q < state_count(); ++q) live[q] = !is_sink(q);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int q = 0; q < state_count(); ++q) {
      if (!live[q]) continue;
      bool has = false;
      for (int a = 0; a < alphabet_.size() && !has; ++a) has = live[next(q, a)];
      if (!has) {
        live[q] = 0;
        changed = true;
      }
    }
  }
  return live;
}

AutomatonSpec SafetyAutomaton::to_spec() const {
  AutomatonSpec spec;
  spec.alphabet = alphabet_.names();
  spec.states = state_ids_;
  spec.initial = state_ids_[initial_];
  for (int q = 0; q < state_count(); ++q)
    if (is_sink(q)) spec.sink.push_back(state_ids_[q]);
  for (int q = 0; q < state_count(); ++q)
    for (int a = 0; a < alphabet_.size(); ++a)
      spec.delta.push_back({state_ids_[q], alphabet_.name(a), state_ids_[next(q, a)]});
  return spec;
}

} // namespace safemem
