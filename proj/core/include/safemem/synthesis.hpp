#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "safemem/residuals.hpp"
#include "safemem/solver.hpp"

namespace safemem {

enum class LabelKind { Residual, Chain };

struct SynthesisResult {
  MealyStrategy strategy;
  int memory_size = 0;
  // Which memory discipline produced the strategy; labels always map
  // (vertex, memory) to a residual index that under-approximates the true
  // residual along every consistent play.
  LabelKind label_kind = LabelKind::Residual;
  std::map<std::pair<int, int>, int> labels;
  // (vertex, memory) pairs that got filler update/next entries because no
  // consistent play reaches them.
  std::vector<std::pair<int, int>> unreachable;
};

// Memory states are, per vertex, the minimal residuals Eve wins with; the
// update moves to the least winning residual below the stepped label. The
// result always passes verify_strategy (checked; internal_error otherwise).
// Throws not_winning_error when Eve loses from v0.
SynthesisResult synthesize_min_residual(const Arena& arena, const SafetyAutomaton& min_aut,
                                        int v0);

// Memory states are the chains of a width certificate, restricted per
// vertex to the winning residuals; updates follow the minimum of the
// stepped chain. Same postconditions as synthesize_min_residual.
SynthesisResult synthesize_chain_cover(const Arena& arena, const SafetyAutomaton& min_aut,
                                       int v0, const WidthCertificate& cert);

struct BruteforceBudget {
  long long instance_limit = 1'000'000;  // refuse if |V|*|E|*max_m exceeds this
  long long node_limit = 50'000'000;     // search nodes across all m
};

// Least m <= max_m such that some m-state edge-driven Mealy strategy wins
// from v0, or nullopt. Exhaustive search over canonical memory numberings
// with game-relaxation pruning; throws budget_error beyond the budget.
std::optional<int> minimal_memory_bruteforce(const Arena& arena, const SafetyAutomaton& min_aut,
                                             int v0, int max_m,
                                             const BruteforceBudget& budget = {});

} // namespace safemem
