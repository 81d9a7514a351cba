#pragma once

#include <string>

#include "safemem/arena.hpp"
#include "safemem/automaton.hpp"
#include "safemem/residuals.hpp"
#include "safemem/solver.hpp"
#include "safemem/synthesis.hpp"

namespace safemem {

// All parsers reject unknown fields and report the offending key.

ArenaSpec arena_from_json(const std::string& text);
std::string arena_to_json(const ArenaSpec& spec);

AutomatonSpec automaton_from_json(const std::string& text);
std::string automaton_to_json(const AutomatonSpec& spec);

MealyStrategy strategy_from_json(const std::string& text, const Arena& arena);
std::string strategy_to_json(const MealyStrategy& strategy, const Arena& arena);

// Strategy JSON plus memory_size and per-(vertex, memory) labels.
std::string synthesis_to_json(const SynthesisResult& result, const Arena& arena,
                              const ResidualPoset& poset);

// { width, antichain, chains, representatives, separators }.
std::string width_report_to_json(const ResidualPoset& poset, const WidthCertificate& cert);

// Minimized automaton, poset relations and representatives, width report.
std::string residuals_report_to_json(const ResidualPoset& poset, const WidthCertificate& cert);

std::string verify_report_to_json(const VerifyResult& result, const Arena& arena);

} // namespace safemem
