#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "safemem/dot.hpp"
#include "safemem/errors.hpp"
#include "safemem/generators.hpp"
#include "safemem/json_io.hpp"
#include "safemem/residuals.hpp"
#include "safemem/solver.hpp"
#include "safemem/synthesis.hpp"

namespace {

using namespace safemem;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot read file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw input_error("cannot write file '" + path + "'");
  out << content;
  if (!out) throw input_error("cannot write file '" + path + "'");
}

void emit(const std::string& out_path, const std::string& payload) {
  if (out_path.empty())
    std::cout << payload;
  else
    write_file(out_path, payload);
}

SafetyAutomaton load_objective(const std::string& path) {
  return SafetyAutomaton(automaton_from_json(read_file(path)));
}

Arena load_arena(const std::string& path) { return Arena(arena_from_json(read_file(path))); }

std::string word_text(const Alphabet& alphabet, const Word& word) {
  if (word.empty()) return "(empty)";
  std::string out;
  for (size_t i = 0; i < word.size(); ++i) {
    if (i) out += ' ';
    out += alphabet.name(word[i]);
  }
  return out;
}

std::string certificate_table(const ResidualPoset& poset, const WidthCertificate& cert,
                              bool full) {
  std::ostringstream out;
  if (full) {
    out << "residuals:";
    for (int r = 0; r < poset.size(); ++r) out << ' ' << poset.id(r);
    out << "\ninitial: " << poset.id(poset.initial()) << "\n";
  }
  out << "width: " << cert.width << "\n";
  out << "antichain:";
  for (int r : cert.antichain) out << ' ' << poset.id(r);
  out << "\n";
  for (size_t c = 0; c < cert.chains.size(); ++c) {
    out << "chain " << c + 1 << ":";
    for (size_t i = 0; i < cert.chains[c].size(); ++i)
      out << (i ? " > " : " ") << poset.id(cert.chains[c][i]);
    out << "\n";
  }
  out << "representatives:\n";
  for (int r = 0; r < poset.size(); ++r)
    out << "  " << poset.id(r) << " = " << word_text(poset.alphabet(), poset.representative(r))
        << "\n";
  if (!cert.separators.empty()) {
    out << "separators:\n";
    for (const auto& [key, lasso] : cert.separators)
      out << "  (" << key.first << "," << key.second
          << "): prefix = " << word_text(poset.alphabet(), lasso.prefix)
          << ", cycle = " << word_text(poset.alphabet(), lasso.cycle) << "\n";
  }
  return out.str();
}

struct PosetReport {
  SafetyAutomaton minimized;
  ResidualPoset poset;
  WidthCertificate cert;
};

PosetReport analyze(const std::string& objective_path) {
  SafetyAutomaton min_aut = minimize(load_objective(objective_path));
  ResidualPoset poset = build_poset(min_aut);
  WidthCertificate cert = poset_width(poset);
  return {std::move(min_aut), std::move(poset), std::move(cert)};
}

int cmd_poset_report(const std::string& objective_path, const std::string& format,
                     const std::string& out_path, bool full) {
  PosetReport report = analyze(objective_path);
  std::string payload;
  if (format == "dot")
    payload = poset_to_dot(report.poset);
  else if (format == "table")
    payload = certificate_table(report.poset, report.cert, full);
  else
    payload = full ? residuals_report_to_json(report.poset, report.cert)
                   : width_report_to_json(report.poset, report.cert);
  emit(out_path, payload);
  return 0;
}

int cmd_synthesize(const std::string& arena_path, const std::string& objective_path,
                   const std::string& v0_id, const std::string& algo, bool recheck,
                   const std::string& format, const std::string& out_path) {
  Arena arena = load_arena(arena_path);
  SafetyAutomaton min_aut = minimize(load_objective(objective_path));
  int v0 = arena.vertex_index_or_throw(v0_id);

  WinningPairs pairs = winning_pairs(arena, min_aut);
  if (!pairs.at(v0, min_aut.initial())) {
    if (format == "table")
      std::cout << "winner=Adam\n";
    else
      std::cout << nlohmann::json{{"winner", "Adam"}, {"v0", v0_id}}.dump(2) << "\n";
    return 1;
  }

  ResidualPoset poset = build_poset(min_aut);
  SynthesisResult result = algo == "chain"
                               ? synthesize_chain_cover(arena, min_aut, v0, poset_width(poset))
                               : synthesize_min_residual(arena, min_aut, v0);
  if (recheck) {
    VerifyResult check = verify_strategy(arena, min_aut, result.strategy, v0);
    if (!check.winning) throw internal_error("re-verification failed after synthesis");
  }

  std::string payload = synthesis_to_json(result, arena, poset);
  if (!out_path.empty()) {
    write_file(out_path, payload);
    std::cout << "winner=Eve memory_size=" << result.memory_size << "\n";
  } else if (format == "table") {
    std::cout << "winner=Eve\nmemory_size=" << result.memory_size << "\nlabels:\n";
    for (const auto& [key, r] : result.labels)
      std::cout << "  " << arena.vertex(key.first).id << " "
                << result.strategy.memory.state_ids[key.second] << " -> " << poset.id(r) << "\n";
  } else {
    std::cout << payload;
  }
  return 0;
}

int cmd_verify(const std::string& arena_path, const std::string& objective_path,
               const std::string& strategy_path, const std::string& v0_id,
               const std::string& format, const std::string& out_path) {
  Arena arena = load_arena(arena_path);
  SafetyAutomaton min_aut = minimize(load_objective(objective_path));
  MealyStrategy strategy = strategy_from_json(read_file(strategy_path), arena);
  int v0 = arena.vertex_index_or_throw(v0_id);
  VerifyResult result = verify_strategy(arena, min_aut, strategy, v0);

  std::string payload;
  if (format == "table") {
    std::ostringstream out;
    out << "winning: " << (result.winning ? "yes" : "no") << "\n";
    if (result.counterexample) {
      out << "counterexample:";
      for (int e : result.counterexample->edges)
        out << ' ' << arena.alphabet().name(arena.edge(e).color);
      out << "\n";
    }
    for (const auto& w : result.warnings) out << "warning: " << w << "\n";
    payload = out.str();
  } else {
    payload = verify_report_to_json(result, arena);
  }
  emit(out_path, payload);
  return result.winning ? 0 : 1;
}

int cmd_lowerbound(const std::string& objective_path, const std::string& format,
                   const std::string& out_prefix) {
  SafetyAutomaton min_aut = minimize(load_objective(objective_path));
  LowerBoundGame game = gen_lower_bound_game(min_aut);
  std::string summary =
      "width=" + std::to_string(game.width) + ", witness=OK, option-uniqueness=OK";

  if (!out_prefix.empty()) {
    write_file(out_prefix + ".arena.json", arena_to_json(game.arena.to_spec()));
    write_file(out_prefix + ".objective.json", automaton_to_json(game.objective.to_spec()));
    write_file(out_prefix + ".witness.json", strategy_to_json(game.witness, game.arena));
    for (const auto& note : game.notes) std::cout << "note: " << note << "\n";
    std::cout << summary << "\n";
    return 0;
  }
  if (format == "dot") {
    std::cout << arena_to_dot(game.arena);
    return 0;
  }
  if (format == "table") {
    for (const auto& note : game.notes) std::cout << "note: " << note << "\n";
    std::cout << summary << "\n";
    return 0;
  }
  nlohmann::json j;
  j["width"] = game.width;
  j["trivial"] = game.trivial;
  j["notes"] = game.notes;
  j["witness"] = "OK";
  j["option_uniqueness"] = "OK";
  j["arena"] = nlohmann::json::parse(arena_to_json(game.arena.to_spec()));
  j["objective"] = nlohmann::json::parse(automaton_to_json(game.objective.to_spec()));
  j["strategy"] = nlohmann::json::parse(strategy_to_json(game.witness, game.arena));
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_bruteforce(const std::string& arena_path, const std::string& objective_path,
                   const std::string& v0_id, int max_m, const std::string& format) {
  Arena arena = load_arena(arena_path);
  SafetyAutomaton min_aut = minimize(load_objective(objective_path));
  int v0 = arena.vertex_index_or_throw(v0_id);
  if (max_m <= 0) max_m = poset_width(build_poset(min_aut)).width;

  std::optional<int> memory = minimal_memory_bruteforce(arena, min_aut, v0, max_m);
  if (format == "table") {
    std::cout << "memory=" << (memory ? std::to_string(*memory) : "not-found") << "\n";
  } else {
    nlohmann::json j;
    j["max_m"] = max_m;
    j["memory"] = memory ? nlohmann::json(*memory) : nlohmann::json();
    std::cout << j.dump(2) << "\n";
  }
  return memory ? 0 : 1;
}

int emit_automaton(const SafetyAutomaton& aut, const std::string& format,
                   const std::string& out_path) {
  emit(out_path, format == "dot" ? automaton_to_dot(aut) : automaton_to_json(aut.to_spec()));
  return 0;
}

int cmd_figure1(const std::string& format, const std::string& out_prefix) {
  Figure1Instance instance = gen_figure1();
  if (!out_prefix.empty()) {
    write_file(out_prefix + ".objective.json", automaton_to_json(instance.objective.to_spec()));
    write_file(out_prefix + ".arena.json", arena_to_json(instance.arena.to_spec()));
    std::cout << "v0=" << instance.arena.vertex(instance.v0).id << "\n";
    return 0;
  }
  if (format == "dot") {
    std::cout << automaton_to_dot(instance.objective) << arena_to_dot(instance.arena);
    return 0;
  }
  nlohmann::json j;
  j["objective"] = nlohmann::json::parse(automaton_to_json(instance.objective.to_spec()));
  j["arena"] = nlohmann::json::parse(arena_to_json(instance.arena.to_spec()));
  j["v0"] = instance.arena.vertex(instance.v0).id;
  std::cout << j.dump(2) << "\n";
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"residual posets, width, and memory synthesis for safety games"};
  app.set_version_flag("--version", "safemem 0.1.0");
  app.require_subcommand(0, 1);

  std::string objective_path, arena_path, strategy_path, v0_id, out_path;
  std::string format = "json";
  std::string algo = "min-residual";
  bool recheck = false;
  int max_m = 0;
  int k = 1, cap = 0, init = 0, outbid = 1, bound = 0;
  std::vector<std::string> action_names;

  auto add_format = [&](CLI::App* cmd, const std::vector<std::string>& values) {
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember(values))
        ->capture_default_str();
  };
  auto add_out = [&](CLI::App* cmd, const char* help) { cmd->add_option("-o,--out", out_path, help); };

  CLI::App* residuals = app.add_subcommand("residuals", "poset, representatives, width");
  residuals->add_option("objective", objective_path, "objective automaton JSON")->required();
  add_format(residuals, {"json", "dot", "table"});
  add_out(residuals, "write the report here instead of stdout");

  CLI::App* width = app.add_subcommand("width", "width certificate only");
  width->add_option("objective", objective_path, "objective automaton JSON")->required();
  add_format(width, {"json", "dot", "table"});
  add_out(width, "write the report here instead of stdout");

  auto add_game_args = [&](CLI::App* cmd) {
    cmd->add_option("arena", arena_path, "arena JSON")->required();
    cmd->add_option("objective", objective_path, "objective automaton JSON")->required();
    cmd->add_option("v0", v0_id, "initial vertex id")->required();
  };

  CLI::App* solve = app.add_subcommand("solve", "decide the winner and synthesize");
  add_game_args(solve);
  solve->add_option("--algo", algo, "synthesis algorithm")
      ->check(CLI::IsMember({"min-residual", "chain"}))
      ->capture_default_str();
  solve->add_flag("--verify", recheck, "model-check the strategy before writing");
  add_format(solve, {"json", "table"});
  add_out(solve, "write the strategy JSON here");

  CLI::App* synthesize = app.add_subcommand("synthesize", "synthesize a winning strategy");
  add_game_args(synthesize);
  synthesize->add_option("--algo", algo, "synthesis algorithm")
      ->check(CLI::IsMember({"min-residual", "chain"}))
      ->capture_default_str();
  synthesize->add_flag("--verify", recheck, "model-check the strategy before writing");
  add_format(synthesize, {"json", "table"});
  add_out(synthesize, "write the strategy JSON here");

  CLI::App* verify = app.add_subcommand("verify", "model-check a strategy");
  verify->add_option("arena", arena_path, "arena JSON")->required();
  verify->add_option("objective", objective_path, "objective automaton JSON")->required();
  verify->add_option("strategy", strategy_path, "strategy JSON")->required();
  verify->add_option("v0", v0_id, "initial vertex id")->required();
  add_format(verify, {"json", "table"});
  add_out(verify, "write the report here instead of stdout");

  CLI::App* lowerbound = app.add_subcommand("lowerbound", "generate the lower-bound game");
  lowerbound->add_option("objective", objective_path, "objective automaton JSON")->required();
  add_format(lowerbound, {"json", "dot", "table"});
  lowerbound->add_option("-o,--out", out_path,
                         "write <out>.arena.json, <out>.objective.json, <out>.witness.json");

  CLI::App* bruteforce = app.add_subcommand("bruteforce-mem", "minimal memory by exhaustive search");
  add_game_args(bruteforce);
  bruteforce->add_option("--max-m", max_m, "memory bound (default: the objective's width)");
  add_format(bruteforce, {"json", "table"});

  CLI::App* gen = app.add_subcommand("gen", "example objectives and games");
  gen->require_subcommand(1);
  CLI::App* gensafety = gen->add_subcommand("gensafety", "generalized safety objective");
  gensafety->add_option("k", k, "number of colors")->required();
  add_format(gensafety, {"json", "dot"});
  add_out(gensafety, "write the automaton here");
  CLI::App* energy = gen->add_subcommand("energy", "saturating energy objective");
  energy->add_option("cap", cap, "saturation level")->required();
  energy->add_option("init", init, "initial level")->required();
  add_format(energy, {"json", "dot"});
  add_out(energy, "write the automaton here");
  CLI::App* outbidding = gen->add_subcommand("outbidding", "truncated outbidding objective");
  outbidding->add_option("n", outbid, "cap on the number of a's")->required();
  add_format(outbidding, {"json", "dot"});
  add_out(outbidding, "write the automaton here");
  CLI::App* counter = gen->add_subcommand("counter", "bounded counter objective");
  counter->add_option("bound", bound, "counter bound")->required();
  counter->add_option("actions", action_names, "built-in action names")->required();
  add_format(counter, {"json", "dot"});
  add_out(counter, "write the automaton here");
  CLI::App* figure1 = gen->add_subcommand("figure1", "two-memory example game");
  add_format(figure1, {"json", "dot"});
  figure1->add_option("-o,--out", out_path, "write <out>.objective.json and <out>.arena.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(residuals)) return cmd_poset_report(objective_path, format, out_path, true);
    if (app.got_subcommand(width)) return cmd_poset_report(objective_path, format, out_path, false);
    if (app.got_subcommand(solve) || app.got_subcommand(synthesize))
      return cmd_synthesize(arena_path, objective_path, v0_id, algo, recheck, format, out_path);
    if (app.got_subcommand(verify))
      return cmd_verify(arena_path, objective_path, strategy_path, v0_id, format, out_path);
    if (app.got_subcommand(lowerbound)) return cmd_lowerbound(objective_path, format, out_path);
    if (app.got_subcommand(bruteforce))
      return cmd_bruteforce(arena_path, objective_path, v0_id, max_m, format);
    if (gen->got_subcommand(gensafety))
      return emit_automaton(gen_generalized_safety(k), format, out_path);
    if (gen->got_subcommand(energy)) return emit_automaton(gen_energy(cap, init), format, out_path);
    if (gen->got_subcommand(outbidding))
      return emit_automaton(gen_outbidding(outbid), format, out_path);
    if (gen->got_subcommand(counter)) {
      std::vector<CounterAction> actions;
      for (const auto& name : action_names) actions.push_back(counter_builtin(name, bound));
      return emit_automaton(gen_counter(bound, actions), format, out_path);
    }
    if (gen->got_subcommand(figure1)) return cmd_figure1(format, out_path);
    std::cerr << app.help();
    return 2;
  } catch (const internal_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const not_winning_error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const budget_error& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return 2;
  } catch (const input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
