#include "geo/alphabet.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>

namespace geo {

Alphabet::Alphabet(const std::vector<SymbolSpec>& symbols) {
  if (symbols.size() > kMaxAlphabet) throw InputError("alphabet too large");
  std::unordered_map<std::string, Letter> index;
  for (const auto& s : symbols) {
    if (s.name.empty()) throw InputError("empty symbol name");
    if (s.name.find_first_of(". \t\n") != std::string::npos)
      throw InputError("symbol name '" + s.name + "' contains a separator");
    if (!index.emplace(s.name, static_cast<Letter>(names_.size())).second)
      throw InputError("duplicate symbol '" + s.name + "'");
    names_.push_back(s.name);
    identity_.push_back(s.identity);
    if (s.name.size() != 1) single_char_ = false;
  }
  inverse_.resize(names_.size());
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    auto it = index.find(symbols[i].inverse);
    if (it == index.end())
      throw InputError("inverse '" + symbols[i].inverse + "' of '" + symbols[i].name + "' is not a symbol");
    inverse_[i] = it->second;
  }
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (inverse_[inverse_[i]] != i)
      throw InputError("inverse map is not an involution at '" + names_[i] + "'");
    if (identity_[i] && inverse_[i] != i)
      throw InputError("identity symbol '" + names_[i] + "' must be its own inverse");
  }
}

Alphabet Alphabet::with_inverses(const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::vector<SymbolSpec> specs;
  for (const auto& [a, b] : pairs) {
    specs.push_back({a, b, false});
    if (a != b) specs.push_back({b, a, false});
  }
  return Alphabet(specs);
}

std::optional<Letter> Alphabet::identity_symbol() const {
  for (std::size_t i = 0; i < identity_.size(); ++i)
    if (identity_[i]) return static_cast<Letter>(i);
  return std::nullopt;
}

std::optional<Letter> Alphabet::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<Letter>(i);
  return std::nullopt;
}

Letter Alphabet::letter(std::string_view name) const {
  if (auto x = find(name)) return *x;
  throw InputError("unknown symbol '" + std::string(name) + "'");
}

std::vector<SymbolSpec> Alphabet::symbols() const {
  std::vector<SymbolSpec> out;
  for (std::size_t i = 0; i < names_.size(); ++i)
    out.push_back({names_[i], names_[inverse_[i]], identity_[i]});
  return out;
}

Word Alphabet::parse(std::string_view text) const {
  Word w;
  bool separated = text.find_first_of(". \t") != std::string_view::npos;
  if (single_char_ && !separated) {
    for (char c : text) w.push_back(letter(std::string_view(&c, 1)));
    return w;
  }
  std::string token;
  auto flush = [&] {
    if (!token.empty()) w.push_back(letter(token));
    token.clear();
  };
  for (char c : text) {
    if (c == '.' || std::isspace(static_cast<unsigned char>(c)))
      flush();
    else
      token.push_back(c);
  }
  flush();
  return w;
}

std::string Alphabet::format(const Word& w) const {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i > 0 && !single_char_) out.push_back('.');
    out += w[i] == kPad ? std::string("_") : name(w[i]);
  }
  return out;
}

Word Alphabet::inverse_word(const Word& w) const {
  Word r(w.rbegin(), w.rend());
  for (auto& x : r) x = inverse(x);
  return r;
}

void require_same_alphabet(const Alphabet& a, const Alphabet& b, std::string_view what) {
  if (!(a == b)) throw InputError(std::string(what) + ": alphabet mismatch");
}

}  // namespace geo
