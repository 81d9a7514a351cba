#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>
#include <string>
#include <vector>

#include "safemem/errors.hpp"
#include "safemem/generators.hpp"
#include "safemem/residuals.hpp"
#include "safemem/solver.hpp"
#include "support.hpp"

using namespace safemem;

namespace {

// Reference solver: iterate "losing" to the least fixpoint, no worklist.
std::vector<char> naive_losing(const Arena& arena, const std::vector<char>& bad) {
  const int nv = arena.vertex_count();
  std::vector<char> lose(nv, 0);
  for (bool changed = true; changed;) {
    changed = false;
    for (int v = 0; v < nv; ++v) {
      if (lose[v]) continue;
      bool all = true, any = false;
      for (int e : arena.out(v)) {
        bool doomed = bad[e] || lose[arena.edge(e).dst];
        all = all && doomed;
        any = any || doomed;
      }
      bool now = arena.vertex(v).owner == Owner::Eve ? all : any;
      if (now) {
        lose[v] = 1;
        changed = true;
      }
    }
  }
  return lose;
}

} // namespace

TEST_CASE("product mirrors arena times automaton") {
  auto rng = testsupport::make_rng(11);
  for (int round = 0; round < 25; ++round) {
    SafetyAutomaton aut = testsupport::random_automaton(rng, 5, 3);
    Arena arena = testsupport::random_arena(rng, aut.alphabet(), 8);
    ProductGame product = build_residual_product(arena, aut);

    const int nq = aut.state_count();
    CHECK(product.arena.vertex_count() == arena.vertex_count() * nq);
    CHECK(product.arena.edge_count() == arena.edge_count() * nq);
    CHECK(static_cast<int>(product.bad.size()) == product.arena.edge_count());

    for (int pv = 0; pv < product.arena.vertex_count(); ++pv) {
      auto [v, q] = product.origin[pv];
      CHECK(product.vertex_of(v, q) == pv);
      CHECK(product.arena.vertex(pv).owner == arena.vertex(v).owner);
      CHECK(product.arena.out(pv).size() == arena.out(v).size());
    }
    for (int pe = 0; pe < product.arena.edge_count(); ++pe) {
      const Edge& edge = product.arena.edge(pe);
      auto [v, q] = product.origin[edge.src];
      auto [w, q2] = product.origin[edge.dst];
      CHECK(arena.edge_index(v, w, edge.color).has_value());
      CHECK(q2 == aut.next(q, edge.color));
      CHECK((product.bad[pe] != 0) == aut.is_sink(q2));
    }
  }
}

TEST_CASE("product vertex ids stay unique under collisions") {
  Alphabet alpha({"s"});
  Arena arena(alpha,
              {{"a", Owner::Eve}, {"a#x", Owner::Adam}},
              {{0, 1, 0}, {1, 0, 0}});
  SafetyAutomaton aut(alpha, {"x#y", "y"}, 0, {0, 0}, {1, 1});
  ProductGame product = build_residual_product(arena, aut);
  std::set<std::string> ids;
  for (int pv = 0; pv < product.arena.vertex_count(); ++pv)
    CHECK(ids.insert(product.arena.vertex(pv).id).second);
  CHECK(product.arena.vertex_count() == 4);
}

TEST_CASE("product requires matching alphabets") {
  Figure1Instance fig = gen_figure1();
  CHECK_THROWS_AS(build_residual_product(fig.arena, gen_energy(2, 0)), input_error);
}

TEST_CASE("solve_safety on hand games") {
  Alphabet alpha({"a", "b"});
  // v0 (Eve) picks between a safe self-loop and a bad edge; v1 (Adam) holds
  // a bad edge; v2 (Adam) can only reach v1.
  Arena arena(alpha,
              {{"v0", Owner::Eve}, {"v1", Owner::Adam}, {"v2", Owner::Adam}},
              {{0, 0, 0}, {0, 1, 1}, {1, 1, 0}, {2, 1, 0}});
  std::vector<char> bad = {0, 1, 1, 0};
  SolveResult solved = solve_safety(arena, bad);
  CHECK(solved.winning == std::vector<char>{1, 0, 0});
  CHECK(solved.positional[0] == 0);
  CHECK(solved.positional[1] == -1);
  CHECK(solved.positional[2] == -1);
}

TEST_CASE("solve_safety matches the naive fixpoint") {
  auto rng = testsupport::make_rng(2025);
  for (int round = 0; round < 60; ++round) {
    Alphabet alpha({"a", "b", "c"});
    Arena arena = testsupport::random_arena(rng, alpha, 12);
    std::vector<char> bad(arena.edge_count(), 0);
    for (auto& flag : bad) flag = testsupport::pick(rng, 0, 3) == 0;
    SolveResult solved = solve_safety(arena, bad);
    std::vector<char> lose = naive_losing(arena, bad);
    for (int v = 0; v < arena.vertex_count(); ++v) {
      CHECK(solved.winning[v] == !lose[v]);
      if (solved.winning[v] && arena.vertex(v).owner == Owner::Eve) {
        int e = solved.positional[v];
        REQUIRE(e >= 0);
        CHECK(arena.edge(e).src == v);
        CHECK(!bad[e]);
        CHECK(solved.winning[arena.edge(e).dst]);
      } else {
        CHECK(solved.positional[v] == -1);
      }
    }
  }
}

TEST_CASE("winning pairs are upward closed") {
  auto rng = testsupport::make_rng(555);
  int rounds = 0;
  while (rounds < 20) {
    SafetyAutomaton min = minimize(testsupport::random_live_automaton(rng, 6, 2));
    Arena arena = testsupport::random_arena(rng, min.alphabet(), 10);
    ++rounds;
    ResidualPoset poset = build_poset(min);
    WinningPairs pairs = winning_pairs(arena, min);
    for (int v = 0; v < arena.vertex_count(); ++v)
      for (int r1 = 0; r1 < poset.size(); ++r1)
        for (int r2 = 0; r2 < poset.size(); ++r2)
          if (poset.leq(r1, r2) && pairs.at(v, poset.state_of(r1)))
            CHECK(pairs.at(v, poset.state_of(r2)));
  }
}

TEST_CASE("verify accepts a correct two-state strategy on figure 1") {
  Figure1Instance fig = gen_figure1();
  const Arena& arena = fig.arena;
  int v0 = arena.vertex_index_or_throw("v0");
  int v1 = arena.vertex_index_or_throw("v1");
  int v2 = arena.vertex_index_or_throw("v2");
  int a = arena.alphabet().index_or_throw("a");
  int b = arena.alphabet().index_or_throw("b");
  int e_v0a = *arena.edge_index(v0, v1, a);
  int e_v0b = *arena.edge_index(v0, v1, b);
  int e_v1a = *arena.edge_index(v1, v2, a);
  int e_v1b = *arena.edge_index(v1, v2, b);

  MealyStrategy strategy;
  strategy.memory.state_ids = {"after-a", "after-b"};
  strategy.memory.initial = 0;
  strategy.memory.update.assign(2, std::vector<int>(arena.edge_count(), 0));
  strategy.memory.update[0][e_v0b] = 1;
  for (int e = 0; e < arena.edge_count(); ++e) strategy.memory.update[1][e] = 1;
  strategy.memory.update[1][e_v0a] = 0;
  strategy.next[{v1, 0}] = e_v1a;
  strategy.next[{v1, 1}] = e_v1b;

  VerifyResult result = verify_strategy(arena, fig.objective, strategy, fig.v0);
  CHECK(result.winning);
  CHECK(!result.counterexample.has_value());
  CHECK(result.warnings.empty());

  SUBCASE("dropping a reachable entry is malformed") {
    strategy.next.erase({v1, 1});
    CHECK_THROWS_AS(verify_strategy(arena, fig.objective, strategy, fig.v0),
                    malformed_strategy_error);
  }
  SUBCASE("pointing next at a foreign edge is malformed") {
    strategy.next[{v1, 1}] = e_v0a;
    CHECK_THROWS_AS(verify_strategy(arena, fig.objective, strategy, fig.v0),
                    malformed_strategy_error);
  }
}

TEST_CASE("verify rejects both one-state strategies on figure 1 in two steps") {
  Figure1Instance fig = gen_figure1();
  const Arena& arena = fig.arena;
  int v1 = arena.vertex_index_or_throw("v1");
  for (int choice : arena.out(v1)) {
    MealyStrategy strategy;
    strategy.memory.state_ids = {"m1"};
    strategy.memory.initial = 0;
    strategy.memory.update.assign(1, std::vector<int>(arena.edge_count(), 0));
    strategy.next[{v1, 0}] = choice;
    VerifyResult result = verify_strategy(arena, fig.objective, strategy, fig.v0);
    CHECK(!result.winning);
    REQUIRE(result.counterexample.has_value());
    const Play& play = *result.counterexample;
    CHECK(play.start == fig.v0);
    CHECK(play.edges.size() == 2);
    int at = play.start;
    int q = fig.objective.initial();
    for (int e : play.edges) {
      CHECK(arena.edge(e).src == at);
      at = arena.edge(e).dst;
      q = fig.objective.next(q, arena.edge(e).color);
    }
    CHECK(fig.objective.is_sink(q));
  }
}

TEST_CASE("verify warns about ignorable entries") {
  Figure1Instance fig = gen_figure1();
  const Arena& arena = fig.arena;
  int v1 = arena.vertex_index_or_throw("v1");
  int v2 = arena.vertex_index_or_throw("v2");

  MealyStrategy strategy;
  strategy.memory.state_ids = {"m1", "stray"};
  strategy.memory.initial = 0;
  strategy.memory.update.assign(2, std::vector<int>(arena.edge_count(), 0));
  strategy.next[{v1, 0}] = arena.out(v1)[0];
  strategy.next[{v1, 1}] = -7;                // memory "stray" is unreachable
  strategy.next[{v2, 0}] = arena.out(v2)[0];  // Adam's vertex

  VerifyResult result = verify_strategy(arena, fig.objective, strategy, fig.v0);
  CHECK(result.warnings.size() == 2);
  CHECK(!result.winning); // one-state behavior loses as before
}

TEST_CASE("verify flags an initially violated objective") {
  Alphabet alpha({"a"});
  Arena arena(alpha, {{"v", Owner::Eve}}, {{0, 0, 0}});
  SafetyAutomaton dead(alpha, {"bad"}, 0, {1}, {0});
  MealyStrategy strategy;
  strategy.memory.state_ids = {"m1"};
  strategy.memory.initial = 0;
  strategy.memory.update.assign(1, std::vector<int>(1, 0));
  strategy.next[{0, 0}] = 0;
  VerifyResult result = verify_strategy(arena, dead, strategy, 0);
  CHECK(!result.winning);
  REQUIRE(result.counterexample.has_value());
  CHECK(result.counterexample->edges.empty());
}
