#include "safemem/alphabet.hpp"

#include "safemem/errors.hpp"

namespace safemem {

Alphabet::Alphabet(std::vector<std::string> symbols) : names_(std::move(symbols)) {
  if (names_.empty()) throw input_error("empty alphabet");
  for (int i = 0; i < static_cast<int>(names_.size()); ++i) {
    if (names_[i].empty()) throw input_error("empty symbol name");
    if (!index_.emplace(names_[i], i).second)
      throw input_error("duplicate symbol " + names_[i]);
  }
}

std::optional<int> Alphabet::index(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int Alphabet::index_or_throw(const std::string& name) const {
  auto i = index(name);
  if (!i) throw input_error("unknown symbol " + name);
  return *i;
}

Word Alphabet::parse_word(const std::vector<std::string>& symbols) const {
  Word w;
  w.reserve(symbols.size());
  for (const auto& s : symbols) w.push_back(index_or_throw(s));
  return w;
}

std::vector<std::string> Alphabet::word_names(const Word& w) const {
  std::vector<std::string> out;
  out.reserve(w.size());
  for (int a : w) out.push_back(name(a));
  return out;
}

} // namespace safemem
