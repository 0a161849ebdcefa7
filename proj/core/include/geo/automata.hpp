#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "geo/alphabet.hpp"
#include "geo/common.hpp"

namespace geo {

/// Default cap on states produced by subset and product constructions.
inline constexpr std::size_t kDefaultStateBudget = 1'000'000;

/// Complete deterministic automaton. The transition table is row-major:
/// next(q, x) = table[q * |X| + x].
class Dfa {
 public:
  Dfa() = default;
  Dfa(Alphabet alphabet, std::size_t states, State start, std::vector<bool> accepting,
      std::vector<State> table);

  static Dfa all_words(const Alphabet& alphabet);
  static Dfa empty_language(const Alphabet& alphabet);

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t state_count() const { return accepting_.size(); }
  std::size_t letter_count() const { return alphabet_.size(); }
  State start() const { return start_; }
  bool accepting(State q) const { return accepting_[q]; }
  State next(State q, Letter x) const { return table_[q * letter_count() + x]; }
  State run(State q, const Word& w) const;
  State run(const Word& w) const { return run(start_, w); }
  bool accepts(const Word& w) const { return accepting(run(w)); }

  const std::vector<bool>& accepting_flags() const { return accepting_; }
  const std::vector<State>& table() const { return table_; }

  friend bool operator==(const Dfa& a, const Dfa& b) {
    return a.start_ == b.start_ && a.accepting_ == b.accepting_ && a.table_ == b.table_ &&
           a.alphabet_ == b.alphabet_;
  }

 private:
  Alphabet alphabet_;
  State start_ = 0;
  std::vector<bool> accepting_;
  std::vector<State> table_;
};

/// Nondeterministic automaton without epsilon moves.
struct Nfa {
  Alphabet alphabet;
  std::size_t state_count = 0;
  std::vector<State> starts;
  std::vector<bool> accepting;
  std::vector<std::vector<State>> next;  // indexed q * |X| + x

  explicit Nfa(Alphabet a = {}) : alphabet(std::move(a)) {}
  State add_state(bool accept);
  void add_transition(State from, Letter x, State to);
  const std::vector<State>& targets(State q, Letter x) const { return next[q * alphabet.size() + x]; }
  bool accepts(const Word& w) const;
};

struct PairEdge {
  Letter left;   // kPad allowed
  Letter right;  // kPad allowed, never both
  State target;

  friend bool operator==(const PairEdge&, const PairEdge&) = default;
  friend auto operator<=>(const PairEdge&, const PairEdge&) = default;
};

/// Two-tape synchronous automaton reading padded pairs (u, v)+.
class PairAutomaton {
 public:
  PairAutomaton() = default;
  PairAutomaton(Alphabet alphabet, std::size_t states, State start, std::vector<bool> accepting,
                std::vector<std::vector<PairEdge>> edges);

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t state_count() const { return accepting_.size(); }
  State start() const { return start_; }
  bool accepting(State q) const { return accepting_[q]; }
  const std::vector<PairEdge>& edges(State q) const { return edges_[q]; }
  const std::vector<bool>& accepting_flags() const { return accepting_; }
  std::size_t edge_count() const;

  /// Simulates on the padded pair (u, v)+.
  bool accepts(const Word& u, const Word& v) const;

  friend bool operator==(const PairAutomaton& a, const PairAutomaton& b) {
    return a.start_ == b.start_ && a.accepting_ == b.accepting_ && a.edges_ == b.edges_ &&
           a.alphabet_ == b.alphabet_;
  }

 private:
  Alphabet alphabet_;
  State start_ = 0;
  std::vector<bool> accepting_;
  std::vector<std::vector<PairEdge>> edges_;
};

enum class PairMode { equal_length, first_longer, any };
enum class Side { first, second };

// ---- one-tape constructions -------------------------------------------------

/// Renumbers states by breadth-first discovery from the start state, scanning
/// letters in alphabet order. Unreachable states are dropped.
Dfa canonical(const Dfa& d);

Dfa determinize(const Nfa& n, std::size_t max_states = kDefaultStateBudget);
Nfa to_nfa(const Dfa& d);
/// Accepts the reversed words.
Nfa reverse(const Nfa& n);
/// Minimal DFA by double reversal; cheaper than determinize when the subset
/// construction blows up going forward.
Dfa brzozowski(const Nfa& n, std::size_t max_states = kDefaultStateBudget);

/// Hopcroft partition refinement; the result is canonical.
Dfa minimize(const Dfa& d);

Dfa complement(const Dfa& d);
Dfa union_of(const Dfa& a, const Dfa& b);
Dfa intersection(const Dfa& a, const Dfa& b);
Dfa difference(const Dfa& a, const Dfa& b);

bool is_empty(const Dfa& d);
/// Shortlex-least accepted word, if any.
std::optional<Word> shortest_accepted(const Dfa& d);
/// Shortlex-least word accepted by exactly one of a, b.
std::optional<Word> find_difference(const Dfa& a, const Dfa& b);
inline bool equivalent(const Dfa& a, const Dfa& b) { return !find_difference(a, b).has_value(); }

/// Calls `visit` on every accepted word of length <= max_len, in shortlex order.
void for_each_accepted(const Dfa& d, std::size_t max_len, const std::function<void(const Word&)>& visit);
std::vector<Word> enumerate(const Dfa& d, std::size_t max_len);
/// Number of accepted words of each length 0..max_len.
std::vector<std::uint64_t> count_by_length(const Dfa& d, std::size_t max_len);

/// Shortlex-least rejected word p such that px is accepted for some letter x;
/// nullopt when the language is prefix-closed.
std::optional<Word> prefix_closure_violation(const Dfa& d);
inline bool is_prefix_closed(const Dfa& d) { return !prefix_closure_violation(d).has_value(); }

/// Accepts w over `domain` iff d accepts phi(w), with phi applied letterwise.
Dfa inverse_image(const Dfa& d, const Alphabet& domain, const std::vector<Letter>& phi);

/// States from which no accepting state is reachable.
std::vector<bool> dead_states(const Dfa& d);
/// State count excluding dead states (the trimmed accessible part).
std::size_t live_state_count(const Dfa& d);

/// Breadth-first distances from the start state.
std::vector<std::size_t> bfs_depths(const Dfa& d);

// ---- pair automata -------------------------------------------------------

PairAutomaton pair_restrict(const PairAutomaton& p, PairMode mode);

/// Filter on one tape of a pair automaton: the tape's word must be accepted
/// (or rejected, when `accept` is false) by `dfa`.
struct TapeFilter {
  const Dfa* dfa = nullptr;
  bool accept = true;
};

PairAutomaton pair_product(const PairAutomaton& p, TapeFilter left, TapeFilter right);
inline PairAutomaton pair_product_second(const PairAutomaton& p, const Dfa& d) {
  return pair_product(p, {}, {&d, true});
}
inline PairAutomaton pair_product_first(const PairAutomaton& p, const Dfa& d) {
  return pair_product(p, {&d, true}, {});
}

/// Existentially quantifies the other tape.
Nfa pair_project(const PairAutomaton& p, Side side);

/// Shortest accepted pair, ties broken by the shortlex order of the label sequence.
std::optional<std::pair<Word, Word>> shortest_accepted_pair(const PairAutomaton& p);

/// Keeps the states that are reachable and co-reachable, renumbered canonically.
PairAutomaton trim(const PairAutomaton& p);

/// True iff no useful path reads a letter on a tape after that tape read PAD.
bool padding_well_formed(const PairAutomaton& p);

}  // namespace geo
