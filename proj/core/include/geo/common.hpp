#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace geo {

/// Index of a symbol in an Alphabet.
using Letter = std::uint8_t;

/// Reserved out-of-alphabet marker used on the tapes of pair automata.
inline constexpr Letter kPad = 0xFF;

/// Maximum number of symbols an alphabet may declare (kPad is excluded).
inline constexpr std::size_t kMaxAlphabet = 0xFF;

using Word = std::vector<Letter>;
using State = std::uint32_t;

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (Letter x : w) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return h;
  }
};

/// Shortlex order: by length, then lexicographically by letter index.
inline bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

struct ShortlexLess {
  bool operator()(const Word& a, const Word& b) const { return shortlex_less(a, b); }
};

inline Word concat(const Word& a, const Word& b) {
  Word r;
  r.reserve(a.size() + b.size());
  r.insert(r.end(), a.begin(), a.end());
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad JSON, unknown symbols, mismatched alphabets.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A configured budget (states, elements, ball radius, ...) was exhausted.
/// Never a verdict about the object being examined.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Three-valued verdict. `unknown` means a budget ran out before a decision.
enum class Truth { no, yes, unknown };

inline const char* to_string(Truth t) {
  switch (t) {
    case Truth::no: return "false";
    case Truth::yes: return "true";
    case Truth::unknown: return "unknown";
  }
  return "unknown";
}

inline Truth truth(bool b) { return b ? Truth::yes : Truth::no; }

}  // namespace geo
