#pragma once

#include <optional>
#include <string>
#include <vector>

#include "geo/automata.hpp"

namespace geo {

/// Length of a shortest word reaching each state (unreachable: SIZE_MAX).
std::vector<std::size_t> depths(const Dfa& m);

/// Moore refinement levels: level j numbers the classes of states that accept
/// the same words of length <= j.
class BoundedEquivalence {
 public:
  BoundedEquivalence(const Dfa& m, std::size_t max_level);
  std::size_t max_level() const { return levels_.size() - 1; }
  /// Same accepted words of length <= j from p and q.
  bool same(State p, State q, std::size_t j) const;

 private:
  std::vector<std::vector<std::uint32_t>> levels_;
};

/// M(s, k-d) = M(t, k-d) with d the larger depth; requires k > d.
bool k_equivalent(const Dfa& m, State s, State t, std::size_t k);

struct TbAbort {
  enum class Kind { not_transitive, inconsistent_transitions, incomparable_pair, mixed_acceptance };
  Kind kind;
  State s = 0, t = 0, r = 0;  // r only for not_transitive
  Letter letter = 0;          // only for inconsistent_transitions
  std::string describe(const Alphabet& a) const;
};
std::string_view to_string(TbAbort::Kind k);

struct TbResult {
  std::optional<Dfa> automaton;  // minimized quotient
  std::optional<TbAbort> abort;
  std::size_t classes = 0;  // quotient size before minimization
};

/// c(M', k). States are explored from the start state: each transition target
/// joins the unique representative it is k-equivalent to, or becomes a new
/// representative. Afterwards every class must be pairwise k-equivalent and
/// transitions from members must agree with the representative's.
/// State numbers in aborts refer to canonical(m).
TbResult tb_merge(const Dfa& m, std::size_t k);

}  // namespace geo
