#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <vector>

#include "json.hpp"
#include "safemem/errors.hpp"
#include "safemem/generators.hpp"
#include "safemem/json_io.hpp"
#include "support.hpp"

using namespace safemem;

TEST_CASE("alphabet basics") {
  Alphabet alpha({"a", "b", "c"});
  CHECK(alpha.size() == 3);
  CHECK(alpha.name(1) == "b");
  CHECK(alpha.index("c") == 2);
  CHECK(!alpha.index("d").has_value());
  CHECK_THROWS_AS(alpha.index_or_throw("d"), input_error);
  CHECK(alpha.parse_word({"b", "a"}) == Word{1, 0});
  CHECK(alpha.word_names({2, 0}) == std::vector<std::string>{"c", "a"});

  CHECK_THROWS_AS(Alphabet({}), input_error);
  CHECK_THROWS_AS(Alphabet({"a", "a"}), input_error);
  CHECK_THROWS_AS(Alphabet({"a", ""}), input_error);
}

TEST_CASE("arena validation") {
  ArenaSpec spec;
  spec.alphabet = {"a", "b"};
  spec.vertices = {{"v0", "Adam"}, {"v1", "Eve"}};
  spec.edges = {{"v0", "v1", "a"}, {"v1", "v1", "b"}};
  CHECK(validate_arena(spec).ok());

  SUBCASE("dead end") {
    spec.edges.pop_back();
    auto report = validate_arena(spec);
    CHECK(!report.ok());
    CHECK(report.joined().find("v1") != std::string::npos);
  }
  SUBCASE("unknown vertex") {
    spec.edges.push_back({"v0", "vx", "a"});
    auto report = validate_arena(spec);
    CHECK(!report.ok());
    CHECK(report.joined().find("vx") != std::string::npos);
  }
  SUBCASE("unknown color") {
    spec.edges.push_back({"v0", "v1", "z"});
    CHECK(!validate_arena(spec).ok());
  }
  SUBCASE("duplicate edge") {
    spec.edges.push_back({"v0", "v1", "a"});
    CHECK(!validate_arena(spec).ok());
  }
  SUBCASE("duplicate vertex id") {
    spec.vertices.push_back({"v0", "Eve"});
    CHECK(!validate_arena(spec).ok());
  }
  SUBCASE("bad owner") {
    spec.vertices[0].owner = "eve";
    CHECK(!validate_arena(spec).ok());
  }
  SUBCASE("constructor throws on violations") {
    spec.edges.pop_back();
    CHECK_THROWS_AS(Arena{spec}, input_error);
  }
}

TEST_CASE("arena adjacency and lookup") {
  ArenaSpec spec;
  spec.alphabet = {"a", "b"};
  spec.vertices = {{"v0", "Adam"}, {"v1", "Eve"}};
  spec.edges = {{"v0", "v1", "a"}, {"v0", "v1", "b"}, {"v1", "v0", "a"}};
  Arena arena(spec);
  CHECK(arena.vertex_count() == 2);
  CHECK(arena.edge_count() == 3);
  CHECK(arena.vertex(0).owner == Owner::Adam);
  CHECK(arena.vertex_index("v1") == 1);
  CHECK(!arena.vertex_index("vx").has_value());
  CHECK(arena.out(0) == std::vector<int>{0, 1});
  CHECK(arena.out(1) == std::vector<int>{2});
  CHECK(arena.edge_index(0, 1, 1) == 1);
  CHECK(!arena.edge_index(1, 1, 0).has_value());
  // Round trip through ArenaSpec preserves order.
  ArenaSpec back = arena.to_spec();
  CHECK(back.alphabet == spec.alphabet);
  CHECK(back.edges.size() == spec.edges.size());
  CHECK(back.edges[1].color == "b");
}

TEST_CASE("automaton validation") {
  AutomatonSpec spec;
  spec.alphabet = {"a", "b"};
  spec.states = {"q0", "bad"};
  spec.initial = "q0";
  spec.sink = {"bad"};
  spec.delta = {{"q0", "a", "q0"}, {"q0", "b", "bad"}, {"bad", "a", "bad"}, {"bad", "b", "bad"}};
  CHECK(validate_automaton(spec).ok());

  SUBCASE("sink escape") {
    spec.delta[2].to = "q0";
    auto report = validate_automaton(spec);
    CHECK(!report.ok());
    CHECK(report.joined().find("bad") != std::string::npos);
  }
  SUBCASE("incomplete delta") {
    spec.delta.pop_back();
    CHECK(!validate_automaton(spec).ok());
  }
  SUBCASE("duplicate transition") {
    spec.delta.push_back({"q0", "a", "bad"});
    CHECK(!validate_automaton(spec).ok());
  }
  SUBCASE("unknown initial") {
    spec.initial = "qx";
    CHECK(!validate_automaton(spec).ok());
  }
  SUBCASE("unknown sink") {
    spec.sink.push_back("qx");
    CHECK(!validate_automaton(spec).ok());
  }
  SUBCASE("constructor throws on violations") {
    spec.delta.pop_back();
    CHECK_THROWS_AS(SafetyAutomaton{spec}, input_error);
  }
}

TEST_CASE("run_word and eval_lasso") {
  SafetyAutomaton gs3 = gen_generalized_safety(3);
  const Alphabet& alpha = gs3.alphabet();
  int q = gs3.run_word(gs3.initial(), alpha.parse_word({"1", "2"}));
  CHECK(gs3.state_id(q) == "{1,2}");
  CHECK(gs3.run_word(q, {}) == q);

  SafetyAutomaton en5 = gen_energy(5, 0);
  int sunk = en5.run_word(en5.initial(), en5.alphabet().parse_word({"b"}));
  CHECK(en5.is_sink(sunk));
  Lasso oscillate{en5.alphabet().parse_word({"a"}), en5.alphabet().parse_word({"a", "b"})};
  CHECK(en5.eval_lasso(en5.initial(), oscillate) == SafetyAutomaton::LassoVerdict::Safe);
  CHECK(en5.eval_lasso(sunk, oscillate) == SafetyAutomaton::LassoVerdict::Unsafe);

  SafetyAutomaton gs2 = gen_generalized_safety(2);
  Lasso both{gs2.alphabet().parse_word({"1"}), gs2.alphabet().parse_word({"2"})};
  CHECK(gs2.eval_lasso(gs2.initial(), both) == SafetyAutomaton::LassoVerdict::Unsafe);
}

TEST_CASE("word action laws on random automata") {
  auto rng = testsupport::make_rng(20260825);
  for (int round = 0; round < 40; ++round) {
    SafetyAutomaton aut = testsupport::random_automaton(rng, 6, 3);
    const int nsym = aut.alphabet().size();
    auto word = [&](int len) {
      Word w;
      for (int i = 0; i < len; ++i) w.push_back(testsupport::pick(rng, 0, nsym - 1));
      return w;
    };
    for (int q = 0; q < aut.state_count(); ++q) {
      Word u = word(testsupport::pick(rng, 0, 4));
      Word v = word(testsupport::pick(rng, 0, 4));
      Word uv = u;
      uv.insert(uv.end(), v.begin(), v.end());
      CHECK(aut.run_word(q, uv) == aut.run_word(aut.run_word(q, u), v));

      Lasso lasso{u, word(testsupport::pick(rng, 1, 3))};
      auto direct = aut.eval_lasso(q, lasso);
      CHECK(direct == aut.eval_lasso(aut.run_word(q, u), Lasso{{}, lasso.cycle}));
      Word doubled = lasso.cycle;
      doubled.insert(doubled.end(), lasso.cycle.begin(), lasso.cycle.end());
      CHECK(direct == aut.eval_lasso(q, Lasso{lasso.prefix, doubled}));

      // Unsafe iff some prefix of length <= |x| + |Q|*|y| dies.
      bool dies = false;
      int state = q;
      Word flat = lasso.prefix;
      for (int r = 0; r < aut.state_count(); ++r)
        flat.insert(flat.end(), lasso.cycle.begin(), lasso.cycle.end());
      for (int a : flat) {
        if (aut.is_sink(state)) break;
        state = aut.next(state, a);
      }
      dies = aut.is_sink(state);
      CHECK((direct == SafetyAutomaton::LassoVerdict::Unsafe) == dies);
    }
  }
}

TEST_CASE("empty cycle is rejected") {
  SafetyAutomaton gs2 = gen_generalized_safety(2);
  CHECK_THROWS_AS(gs2.eval_lasso(gs2.initial(), Lasso{{}, {}}), input_error);
}

TEST_CASE("arena json round trip") {
  Figure1Instance fig = gen_figure1();
  std::string text = arena_to_json(fig.arena.to_spec());
  Arena back(arena_from_json(text));
  CHECK(back.vertex_count() == fig.arena.vertex_count());
  CHECK(back.edge_count() == fig.arena.edge_count());
  CHECK(arena_to_json(back.to_spec()) == text);
}

TEST_CASE("automaton json round trip") {
  SafetyAutomaton aut = gen_outbidding(3);
  std::string text = automaton_to_json(aut.to_spec());
  SafetyAutomaton back(automaton_from_json(text));
  CHECK(back.state_count() == aut.state_count());
  CHECK(automaton_to_json(back.to_spec()) == text);
  for (int q = 0; q < aut.state_count(); ++q) {
    CHECK(back.state_id(q) == aut.state_id(q));
    CHECK(back.is_sink(q) == aut.is_sink(q));
    for (int a = 0; a < aut.alphabet().size(); ++a) CHECK(back.next(q, a) == aut.next(q, a));
  }
}

TEST_CASE("json parsers reject unknown and missing fields") {
  nlohmann::json arena = nlohmann::json::parse(arena_to_json(gen_figure1().arena.to_spec()));
  SUBCASE("unknown top-level field") {
    arena["extra"] = 1;
    CHECK_THROWS_AS(arena_from_json(arena.dump()), input_error);
  }
  SUBCASE("unknown edge field") {
    arena["edges"][0]["weight"] = 3;
    CHECK_THROWS_AS(arena_from_json(arena.dump()), input_error);
  }
  SUBCASE("missing field") {
    arena.erase("vertices");
    CHECK_THROWS_AS(arena_from_json(arena.dump()), input_error);
  }
  SUBCASE("wrong type") {
    arena["alphabet"] = "ab";
    CHECK_THROWS_AS(arena_from_json(arena.dump()), input_error);
  }
  SUBCASE("not json at all") { CHECK_THROWS_AS(arena_from_json("{nope"), input_error); }

  nlohmann::json aut = nlohmann::json::parse(automaton_to_json(gen_energy(2, 0).to_spec()));
  SUBCASE("automaton unknown field") {
    aut["color"] = "red";
    CHECK_THROWS_AS(automaton_from_json(aut.dump()), input_error);
  }
  SUBCASE("automaton missing delta") {
    aut.erase("delta");
    CHECK_THROWS_AS(automaton_from_json(aut.dump()), input_error);
  }
}

TEST_CASE("strategy json round trip and totality") {
  Figure1Instance fig = gen_figure1();
  MealyStrategy strategy;
  strategy.memory.state_ids = {"m1", "m2"};
  strategy.memory.initial = 0;
  strategy.memory.update.assign(2, std::vector<int>(fig.arena.edge_count(), 0));
  for (int e = 0; e < fig.arena.edge_count(); ++e) strategy.memory.update[1][e] = 1;
  strategy.next[{1, 0}] = fig.arena.out(1)[0];
  strategy.next[{1, 1}] = fig.arena.out(1)[1];

  std::string text = strategy_to_json(strategy, fig.arena);
  MealyStrategy back = strategy_from_json(text, fig.arena);
  CHECK(back.memory.state_ids == strategy.memory.state_ids);
  CHECK(back.memory.initial == 0);
  CHECK(back.memory.update == strategy.memory.update);
  CHECK(back.next == strategy.next);
  CHECK(strategy_to_json(back, fig.arena) == text);

  nlohmann::json doc = nlohmann::json::parse(text);
  SUBCASE("missing update row") {
    doc["memory"]["update"].erase(0);
    CHECK_THROWS_AS(strategy_from_json(doc.dump(), fig.arena), input_error);
  }
  SUBCASE("unknown memory state") {
    doc["next"][0]["m"] = "m9";
    CHECK_THROWS_AS(strategy_from_json(doc.dump(), fig.arena), input_error);
  }
  SUBCASE("unknown edge") {
    doc["next"][0]["color"] = "c";
    doc["next"][0]["dst"] = "v0";
    CHECK_THROWS_AS(strategy_from_json(doc.dump(), fig.arena), input_error);
  }
}
