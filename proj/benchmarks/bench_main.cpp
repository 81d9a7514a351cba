#include <benchmark/benchmark.h>

#include "safemem/generators.hpp"
#include "safemem/residuals.hpp"
#include "safemem/solver.hpp"
#include "safemem/synthesis.hpp"

namespace {

void bm_minimize_gensafety(benchmark::State& state) {
  auto aut = safemem::gen_generalized_safety(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto min = safemem::minimize(aut);
    benchmark::DoNotOptimize(min);
  }
}
BENCHMARK(bm_minimize_gensafety)->DenseRange(3, 7);

void bm_width_gensafety(benchmark::State& state) {
  auto min = safemem::minimize(safemem::gen_generalized_safety(static_cast<int>(state.range(0))));
  for (auto _ : state) {
    auto poset = safemem::build_poset(min);
    auto cert = safemem::poset_width(poset);
    benchmark::DoNotOptimize(cert);
  }
}
BENCHMARK(bm_width_gensafety)->DenseRange(3, 7);

void bm_solve_lower_bound_game(benchmark::State& state) {
  auto min = safemem::minimize(safemem::gen_generalized_safety(static_cast<int>(state.range(0))));
  auto game = safemem::gen_lower_bound_game(min);
  for (auto _ : state) {
    auto product = safemem::build_residual_product(game.arena, game.objective);
    auto solved = safemem::solve_safety(product.arena, product.bad);
    benchmark::DoNotOptimize(solved);
  }
}
BENCHMARK(bm_solve_lower_bound_game)->DenseRange(2, 5);

void bm_synthesize_min_residual(benchmark::State& state) {
  auto min = safemem::minimize(safemem::gen_generalized_safety(static_cast<int>(state.range(0))));
  auto game = safemem::gen_lower_bound_game(min);
  auto objective = safemem::minimize(game.objective);
  for (auto _ : state) {
    auto result = safemem::synthesize_min_residual(game.arena, objective, game.v0);
    benchmark::DoNotOptimize(result);
  }
}
BENCHMARK(bm_synthesize_min_residual)->DenseRange(2, 4);

void bm_synthesize_chain_cover(benchmark::State& state) {
  auto min = safemem::minimize(safemem::gen_generalized_safety(static_cast<int>(state.range(0))));
  auto game = safemem::gen_lower_bound_game(min);
  auto objective = safemem::minimize(game.objective);
  auto cert = safemem::poset_width(safemem::build_poset(objective));
  for (auto _ : state) {
    auto result = safemem::synthesize_chain_cover(game.arena, objective, game.v0, cert);
    benchmark::DoNotOptimize(result);
  }
}
BENCHMARK(bm_synthesize_chain_cover)->DenseRange(2, 4);

} // namespace

BENCHMARK_MAIN();
