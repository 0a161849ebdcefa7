#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "geo/common.hpp"

namespace geo {

struct SymbolSpec {
  std::string name;
  std::string inverse;
  bool identity = false;
};

/// Finite symmetric alphabet. Symbol order is fixed at construction and
/// defines the shortlex order on words.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(const std::vector<SymbolSpec>& symbols);

  /// One symbol per distinct name; (x, x) declares an involution.
  static Alphabet with_inverses(const std::vector<std::pair<std::string, std::string>>& pairs);

  std::size_t size() const { return names_.size(); }
  const std::string& name(Letter x) const { return names_.at(x); }
  Letter inverse(Letter x) const { return inverse_.at(x); }
  bool is_identity(Letter x) const { return identity_.at(x); }
  std::optional<Letter> identity_symbol() const;

  std::optional<Letter> find(std::string_view name) const;
  Letter letter(std::string_view name) const;  // throws InputError

  std::vector<SymbolSpec> symbols() const;

  /// Parses a word. Single-character alphabets allow plain concatenation;
  /// otherwise symbols are separated by '.' or whitespace. "" is the empty word.
  Word parse(std::string_view text) const;
  std::string format(const Word& w) const;

  Word inverse_word(const Word& w) const;

  bool single_char_names() const { return single_char_; }

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.names_ == b.names_ && a.inverse_ == b.inverse_ && a.identity_ == b.identity_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<Letter> inverse_;
  std::vector<bool> identity_;
  bool single_char_ = true;
};

/// Throws InputError unless both alphabets are identical.
void require_same_alphabet(const Alphabet& a, const Alphabet& b, std::string_view what);

}  // namespace geo
