#pragma once

#include <string>
#include <vector>

#include "safemem/arena.hpp"
#include "safemem/automaton.hpp"
#include "safemem/residuals.hpp"

namespace safemem {

// Circles for Eve, squares for Adam; bad edges (if given) dashed red.
std::string arena_to_dot(const Arena& arena, const std::vector<char>* bad = nullptr);

std::string automaton_to_dot(const SafetyAutomaton& aut);

// Solid edges: covering inclusions, drawn from the smaller residual to the
// larger. Dotted edges: one-symbol steps (steps to the empty residual are
// omitted).
std::string poset_to_dot(const ResidualPoset& poset);

} // namespace safemem
