#pragma once

#include <stdexcept>
#include <string>

namespace safemem {

// Malformed input: bad files, schema violations, alphabet mismatches,
// operations invoked outside their preconditions. CLI exit code 2.
class input_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// The objective denotes the empty language; residual analysis is undefined.
class empty_objective_error : public input_error {
public:
  using input_error::input_error;
};

// A strategy file refers to a reachable situation it does not cover.
class malformed_strategy_error : public input_error {
public:
  using input_error::input_error;
};

// Synthesis was requested from a vertex Eve does not win. CLI exit code 1.
class not_winning_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A brute-force operation refused an instance beyond its configured budget.
class budget_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Internal invariant violation. CLI exit code 3.
class internal_error : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

} // namespace safemem
