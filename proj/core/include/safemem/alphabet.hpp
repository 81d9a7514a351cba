#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace safemem {

// A word is a sequence of symbol indices into an Alphabet.
using Word = std::vector<int>;

class Alphabet {
public:
  // Symbols keep their given order; that order is the tie-breaking order
  // everywhere (representatives, witnesses, strategy choices).
  explicit Alphabet(std::vector<std::string> symbols);

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<int> index(const std::string& name) const;
  int index_or_throw(const std::string& name) const;
  bool contains(const std::string& name) const { return index(name).has_value(); }
  bool operator==(const Alphabet& o) const { return names_ == o.names_; }
  bool operator!=(const Alphabet& o) const { return !(*this == o); }

  Word parse_word(const std::vector<std::string>& symbols) const;
  std::vector<std::string> word_names(const Word& w) const;

private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> index_;
};

// Ultimately periodic word prefix.cycle^omega; cycle is non-empty.
struct Lasso {
  Word prefix;
  Word cycle;
};

} // namespace safemem
