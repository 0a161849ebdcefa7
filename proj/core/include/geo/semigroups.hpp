#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "geo/automata.hpp"

namespace geo {

inline constexpr std::size_t kDefaultElementBudget = 1'000'000;

/// Transition semigroup of a complete DFA: the transformations of the state
/// set induced by nonempty words. For a minimal DFA this is the syntactic
/// semigroup of its language.
///
/// Elements are numbered in order of discovery, which is the shortlex order of
/// their least representatives. The identity transformation is not an element
/// unless some nonempty word induces it; `kOne` stands for an adjoined
/// identity where a criterion quantifies over S with 1 adjoined.
class TransitionSemigroup {
 public:
  using Element = std::uint32_t;
  static constexpr Element kOne = std::numeric_limits<Element>::max();
  static constexpr Element kUnknown = kOne - 1;

  /// Throws ResourceError when more than `max_elements` are found, unless
  /// `allow_partial` is set; then exploration stops and complete() is false.
  explicit TransitionSemigroup(const Dfa& d, std::size_t max_elements = kDefaultElementBudget,
                               bool allow_partial = false);

  const Dfa& base() const { return base_; }
  std::size_t size() const { return parent_.size(); }
  std::size_t degree() const { return degree_; }
  bool complete() const { return complete_; }

  Element generator(Letter x) const { return generators_[x]; }
  /// Right multiplication by a letter; kUnknown past the frontier of a partial semigroup.
  Element times_letter(Element e, Letter x) const;
  Element multiply(Element a, Element b) const;
  Element power(Element a, std::size_t n) const;
  /// Element induced by w; kOne for the empty word.
  Element of_word(const Word& w) const;
  Word representative(Element e) const;

  State apply(Element e, State q) const { return e == kOne ? q : map_[e * degree_ + q]; }
  const std::uint16_t* transformation(Element e) const { return &map_[e * degree_]; }

  bool is_idempotent(Element e) const { return multiply(e, e) == e; }
  /// The idempotent power of e.
  Element idempotent_power(Element e) const;
  /// True iff e^n = e^(n+1) for some n (no cycle of length > 1 in e's map).
  bool is_aperiodic_element(Element e) const;

 private:
  void require_complete(const char* what) const;

  Dfa base_;
  std::size_t degree_ = 0;
  bool complete_ = true;
  std::vector<std::uint16_t> map_;
  std::vector<Element> parent_;
  std::vector<Letter> last_;
  std::vector<Element> right_;
  std::vector<Element> generators_;
  std::vector<std::uint16_t> table_;  // full product table when small
};

/// Outcome of a semigroup predicate. `witness` lists elements as words, in
/// the order the predicate documents.
struct SemigroupVerdict {
  Truth holds = Truth::unknown;
  std::vector<Word> witness;
  std::string reason;
};

std::vector<TransitionSemigroup::Element> idempotents(const TransitionSemigroup& s);

/// Witness: s with s*s != s.
SemigroupVerdict is_idempotent(const TransitionSemigroup& s);
/// Witness: s, t with st != ts.
SemigroupVerdict is_commutative(const TransitionSemigroup& s);
/// Witness: s with s^n != s^(n+1) for all n. Works on partial semigroups.
SemigroupVerdict is_aperiodic(const TransitionSemigroup& s);
/// For every idempotent e, eSe is idempotent and commutative.
/// Witness: e, s, t (t = s when ese is not idempotent).
SemigroupVerdict is_locally_idempotent_commutative(const TransitionSemigroup& s);

}  // namespace geo
