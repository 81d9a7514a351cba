#include "safemem/generators.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <map>
#include <numeric>

#include "safemem/errors.hpp"
#include "safemem/residuals.hpp"

namespace safemem {

namespace {

std::string subset_id(unsigned mask) {
  std::string id = "{";
  bool first = true;
  for (int c = 0; mask >> c; ++c)
    if (mask >> c & 1u) {
      if (!first) id += ',';
      id += std::to_string(c + 1);
      first = false;
    }
  return id + "}";
}

} // namespace

SafetyAutomaton gen_generalized_safety(int k) {
  if (k < 1 || k > 16) throw input_error("generalized safety arity must be in 1..16");
  const unsigned full = (1u << k) - 1;

  // Subsets ordered by size then value; the full set lands last.
  std::vector<unsigned> order(full + 1);
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(), [](unsigned a, unsigned b) {
    return std::popcount(a) < std::popcount(b);
  });
  std::vector<int> index_of(full + 1);
  for (size_t i = 0; i < order.size(); ++i) index_of[order[i]] = static_cast<int>(i);

  std::vector<std::string> names{"bot"};
  for (int c = 1; c <= k; ++c) names.push_back(std::to_string(c));
  Alphabet alphabet(names);

  std::vector<std::string> ids;
  std::vector<char> sink;
  std::vector<int> delta;
  for (unsigned mask : order) {
    ids.push_back(subset_id(mask));
    sink.push_back(mask == full ? 1 : 0);
    delta.push_back(index_of[mask]); // bot
    for (int c = 1; c <= k; ++c) delta.push_back(index_of[mask | (1u << (c - 1))]);
  }
  return SafetyAutomaton(alphabet, std::move(ids), 0, std::move(sink), std::move(delta));
}

SafetyAutomaton gen_energy(int cap, int init) {
  if (cap < 0) throw input_error("energy cap must be non-negative");
  if (init < 0 || init > cap) throw input_error("initial energy level must be in 0..cap");

  Alphabet alphabet({"a", "b"});
  std::vector<std::string> ids;
  std::vector<char> sink;
  std::vector<int> delta;
  for (int level = 0; level <= cap; ++level) {
    ids.push_back(std::to_string(level));
    sink.push_back(0);
    delta.push_back(std::min(level + 1, cap));        // a: gain, saturating
    delta.push_back(level == 0 ? cap + 1 : level - 1); // b: spend, 0 dies
  }
  ids.push_back("sink");
  sink.push_back(1);
  delta.push_back(cap + 1);
  delta.push_back(cap + 1);
  return SafetyAutomaton(alphabet, std::move(ids), init, std::move(sink), std::move(delta));
}

SafetyAutomaton gen_outbidding(int n_cap) {
  if (n_cap < 1 || n_cap > 64) throw input_error("outbidding cap must be in 1..64");
  Alphabet alphabet({"a", "b", "c"});

  // States: a^i for i = 0..n_cap, then deficit states (d more b's owed,
  // d = 0..n_cap-1), then the c tail, then the sink.
  const int a0 = 0;
  const int d0 = n_cap + 1;
  const int cst = d0 + n_cap;
  const int snk = cst + 1;
  auto a_state = [&](int i) { return a0 + i; };
  auto d_state = [&](int d) { return d0 + d; };

  std::vector<std::string> ids;
  std::vector<char> sink;
  std::vector<int> delta;
  for (int i = 0; i <= n_cap; ++i) {
    ids.push_back(i == 0 ? "eps" : std::string(i, 'a'));
    sink.push_back(0);
    delta.push_back(i < n_cap ? a_state(i + 1) : snk);
    delta.push_back(d_state(std::max(i - 1, 0)));
    delta.push_back(i == 0 ? cst : snk);
  }
  for (int d = 0; d < n_cap; ++d) {
    ids.push_back(std::string(d + 1, 'a') + "b");
    if (d == 0) ids.back() = "b";
    sink.push_back(0);
    delta.push_back(snk);
    delta.push_back(d_state(std::max(d - 1, 0)));
    delta.push_back(d == 0 ? cst : snk);
  }
  ids.push_back("c");
  sink.push_back(0);
  delta.push_back(snk);
  delta.push_back(snk);
  delta.push_back(cst);
  ids.push_back("sink");
  sink.push_back(1);
  for (int s = 0; s < 3; ++s) delta.push_back(snk);
  return SafetyAutomaton(alphabet, std::move(ids), 0, std::move(sink), std::move(delta));
}

CounterAction counter_builtin(const std::string& name, int bound) {
  if (bound < 0) throw input_error("counter bound must be non-negative");
  CounterAction action{name, {}};
  action.table.reserve(bound + 1);
  for (int i = 0; i <= bound; ++i) {
    int out;
    if (name == "nop") {
      out = i;
    } else if (name == "inc") {
      out = i + 1;
    } else if (name == "reset") {
      out = 0;
    } else if (name == "half") {
      out = i / 2;
    } else if (name == "next_pow2") {
      out = static_cast<int>(std::bit_ceil(static_cast<unsigned>(std::max(i, 1))));
    } else {
      throw input_error("unknown counter action '" + name + "'");
    }
    action.table.push_back(out > bound ? -1 : out);
  }
  return action;
}

SafetyAutomaton gen_counter(int bound, const std::vector<CounterAction>& actions) {
  if (bound < 0) throw input_error("counter bound must be non-negative");
  if (actions.empty()) throw input_error("counter needs at least one action");

  std::vector<std::string> names;
  for (const auto& action : actions) {
    names.push_back(action.name);
    if (static_cast<int>(action.table.size()) != bound + 1)
      throw input_error("action '" + action.name + "' does not cover 0.." +
                        std::to_string(bound));
    int prev = std::numeric_limits<int>::min();
    for (int i = 0; i <= bound; ++i) {
      int value = action.table[i];
      if (value < -1 || value > bound)
        throw input_error("action '" + action.name + "' maps " + std::to_string(i) +
                          " outside 0..bound/overflow");
      int ranked = value < 0 ? std::numeric_limits<int>::max() : value;
      if (ranked < prev)
        throw input_error("action '" + action.name + "' is not monotone at " + std::to_string(i));
      prev = ranked;
    }
  }
  Alphabet alphabet(names);

  const int overflow = bound + 1;
  std::vector<std::string> ids;
  std::vector<char> sink;
  std::vector<int> delta;
  for (int i = 0; i <= bound; ++i) {
    ids.push_back(std::to_string(i));
    sink.push_back(0);
    for (const auto& action : actions)
      delta.push_back(action.table[i] < 0 ? overflow : action.table[i]);
  }
  ids.push_back("overflow");
  sink.push_back(1);
  for (size_t s = 0; s < actions.size(); ++s) delta.push_back(overflow);
  return SafetyAutomaton(alphabet, std::move(ids), 0, std::move(sink), std::move(delta));
}

Figure1Instance gen_figure1() {
  Alphabet alphabet({"a", "b", "c"});
  // States: nothing seen, a seen, b seen, both seen (sink); c is neutral.
  std::vector<std::string> ids{"eps", "a-seen", "b-seen", "sink"};
  std::vector<char> sink{0, 0, 0, 1};
  std::vector<int> delta{
      1, 2, 0, // eps
      1, 3, 1, // a-seen
      3, 2, 2, // b-seen
      3, 3, 3, // sink
  };
  SafetyAutomaton objective(alphabet, std::move(ids), 0, std::move(sink), std::move(delta));

  std::vector<Vertex> vertices{{"v0", Owner::Adam}, {"v1", Owner::Eve}, {"v2", Owner::Adam}};
  std::vector<Edge> edges{
      {0, 1, 0}, {0, 1, 1}, // Adam commits to a letter
      {1, 2, 0}, {1, 2, 1}, // Eve answers
      {2, 2, 2},            // idle on the neutral color
  };
  Arena arena(objective.alphabet(), std::move(vertices), std::move(edges));
  return {std::move(objective), std::move(arena), 0};
}

namespace {

std::vector<std::string> witness_ids(int count) {
  std::vector<std::string> ids;
  for (int i = 1; i <= count; ++i) ids.push_back("m" + std::to_string(i));
  return ids;
}

SafetyAutomaton with_neutral_symbol(const SafetyAutomaton& aut, const std::string& name) {
  std::vector<std::string> names = aut.alphabet().names();
  names.push_back(name);
  const int old_n = static_cast<int>(names.size()) - 1;
  std::vector<std::string> ids;
  std::vector<char> sink;
  std::vector<int> delta;
  for (int q = 0; q < aut.state_count(); ++q) {
    ids.push_back(aut.state_id(q));
    sink.push_back(aut.is_sink(q) ? 1 : 0);
    for (int s = 0; s < old_n; ++s) delta.push_back(aut.next(q, s));
    delta.push_back(q);
  }
  return SafetyAutomaton(Alphabet(names), std::move(ids), aut.initial(), std::move(sink),
                         std::move(delta));
}

} // namespace

LowerBoundGame gen_lower_bound_game(const SafetyAutomaton& aut) {
  ResidualPoset poset = build_poset(aut);
  WidthCertificate cert = poset_width(poset);
  const int k = cert.width;
  std::vector<std::string> notes;

  int neutral = -1;
  for (int s = 0; s < aut.alphabet().size() && neutral < 0; ++s) {
    bool loops = true;
    for (int q = 0; q < aut.state_count() && loops; ++q) loops = aut.next(q, s) == q;
    if (loops) neutral = s;
  }
  SafetyAutomaton objective = aut;
  if (neutral < 0) {
    std::string name = "bot";
    for (int n = 1; aut.alphabet().contains(name); ++n) name = "bot" + std::to_string(n);
    objective = with_neutral_symbol(aut, name);
    neutral = objective.alphabet().size() - 1;
    notes.push_back("added neutral color " + name);
  }

  if (k == 1) {
    notes.push_back("width 1: the lower-bound game is trivial");
    Arena arena(objective.alphabet(), {{"v0", Owner::Eve}}, {{0, 0, neutral}});
    MealyStrategy witness;
    witness.memory.state_ids = witness_ids(1);
    witness.memory.initial = 0;
    witness.memory.update = {{0}};
    witness.next[{0, 0}] = 0;
    VerifyResult check = verify_strategy(arena, objective, witness, 0);
    if (!check.winning) throw internal_error("lower-bound witness failed verification");
    return {std::move(arena), 0, std::move(witness), std::move(objective), 1, true,
            std::move(notes)};
  }

  std::vector<Word> reps;
  reps.reserve(k);
  for (int r : cert.antichain) reps.push_back(poset.representative(r));

  bool dotted = false;
  for (const auto& n : objective.alphabet().names())
    if (n.find('.') != std::string::npos) dotted = true;

  std::vector<Vertex> vertices{{"v0", Owner::Adam}};
  std::vector<Edge> edges;
  std::map<std::pair<int, int>, int> child;
  std::vector<int> rep_node(k);
  for (int t = 0; t < k; ++t) {
    int node = 0;
    std::string id = "w:";
    for (size_t pos = 0; pos < reps[t].size(); ++pos) {
      int sym = reps[t][pos];
      if (pos) id += '.';
      id += dotted ? std::to_string(sym) : objective.alphabet().name(sym);
      auto it = child.find({node, sym});
      if (it != child.end()) {
        node = it->second;
        continue;
      }
      int next = static_cast<int>(vertices.size());
      vertices.push_back({id, Owner::Adam});
      edges.push_back({node, next, sym});
      child[{node, sym}] = next;
      node = next;
    }
    rep_node[t] = node;
  }

  const int choice = static_cast<int>(vertices.size());
  vertices.push_back({"choice", Owner::Eve});
  for (int t = 0; t < k; ++t) edges.push_back({rep_node[t], choice, neutral});

  std::vector<int> option(k);
  for (int t = 0; t < k; ++t) {
    option[t] = static_cast<int>(vertices.size());
    vertices.push_back({"opt" + std::to_string(t + 1), Owner::Adam});
    edges.push_back({choice, option[t], neutral});
  }

  // Gadget (j, i): from option j, Adam spells the lasso separating
  // residual j from residual i; safe exactly when Eve chose j correctly.
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < k; ++i) {
      if (i == j) continue;
      const Lasso& lasso = cert.separators.at({j, i});
      if (lasso.cycle.empty()) throw internal_error("separator lasso with an empty cycle");
      Word spell = lasso.prefix;
      spell.insert(spell.end(), lasso.cycle.begin(), lasso.cycle.end());
      std::string base = "u" + std::to_string(j + 1) + "," + std::to_string(i + 1) + ":";
      int prev = option[j];
      std::vector<int> nodes;
      for (size_t pos = 0; pos < spell.size(); ++pos) {
        int next = static_cast<int>(vertices.size());
        vertices.push_back({base + std::to_string(pos + 1), Owner::Adam});
        edges.push_back({prev, next, spell[pos]});
        nodes.push_back(next);
        prev = next;
      }
      edges.push_back({nodes.back(), nodes[lasso.prefix.size()], lasso.cycle.front()});
    }

  Arena arena(objective.alphabet(), std::move(vertices), std::move(edges));

  MealyStrategy witness;
  witness.memory.state_ids = witness_ids(k);
  witness.memory.initial = 0;
  std::vector<int> identity(arena.edge_count());
  witness.memory.update.assign(k, identity);
  for (int m = 0; m < k; ++m)
    for (int e = 0; e < arena.edge_count(); ++e) witness.memory.update[m][e] = m;
  for (int t = 0; t < k; ++t) {
    int terminator = arena.edge_index(rep_node[t], choice, neutral).value();
    for (int m = 0; m < k; ++m) witness.memory.update[m][terminator] = t;
    witness.next[{choice, t}] = arena.edge_index(choice, option[t], neutral).value();
  }

  VerifyResult check = verify_strategy(arena, objective, witness, 0);
  if (!check.winning) throw internal_error("lower-bound witness failed verification");
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < k; ++i) {
      if (i == j) continue;
      int from = poset.state_of(cert.antichain[i]);
      if (objective.eval_lasso(from, cert.separators.at({j, i})) !=
          SafetyAutomaton::LassoVerdict::Unsafe)
        throw internal_error("separator failed the option-uniqueness check");
    }

  return {std::move(arena), 0, std::move(witness), std::move(objective), k, false,
          std::move(notes)};
}

} // namespace safemem
