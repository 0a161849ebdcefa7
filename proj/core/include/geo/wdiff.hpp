#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "geo/automata.hpp"
#include "geo/groups.hpp"

namespace geo {

/// Padded two-tape automaton whose states carry group elements (word
/// differences). Each difference appears in up to three padding phases: both
/// tapes running, left tape ended, right tape ended; a tape that has read PAD
/// reads nothing else. The start state is (identity, both tapes running).
struct WordDifferenceMachine {
  PairAutomaton automaton;
  std::vector<std::string> labels;  // per state
  std::vector<Element> elements;    // per state; empty for a machine loaded from file
};

inline constexpr std::size_t kDefaultSynthesisBound = 8;

/// Differences inv(p) q over the prefix pairs of (ux, snf(ux))+ for every
/// shortlex normal form u with l(u) <= bound and x in X or empty; every
/// transition g -(x,y)-> x^-1 g y between collected differences is added.
WordDifferenceMachine synthesize_D(GeodesicOracle& oracle, std::size_t bound);

struct DCheck {
  bool deterministic = true;
  bool d1 = true;
  std::optional<std::pair<Word, Word>> d1_witness;
  bool d3 = true;
  std::string d3_detail;
  std::size_t d2_pairs = 0;
  std::size_t d2_accepted = 0;
  std::optional<std::pair<Word, Word>> d2_witness;

  double d2_percent() const { return d2_pairs ? 100.0 * double(d2_accepted) / double(d2_pairs) : 100.0; }
  bool passed() const { return deterministic && d1 && d3 && d2_accepted == d2_pairs; }
};

/// D1 exactly on pairs with both sides of length <= sample_length (search over
/// (state, difference)); D3 structurally; D2 on every normal-form pair within
/// sample_length, as a percentage.
DCheck check_D(GeodesicOracle& oracle, const PairAutomaton& d, std::size_t sample_length);

/// Words w having a D-partner v with v shortlex-less than w.
Dfa reducible_words(const PairAutomaton& d, std::size_t max_states = kDefaultStateBudget);

/// Shortlex word acceptor: the words with no factor in reducible_words(d).
Dfa shortlex_acceptor(const PairAutomaton& d, std::size_t max_states = kDefaultStateBudget);

/// First word of length <= max_len (shortlex) on which W and the oracle's
/// normal forms disagree.
std::optional<Word> acceptor_mismatch(GeodesicOracle& oracle, const Dfa& w, std::size_t max_len);

std::string to_json(const WordDifferenceMachine& d);
WordDifferenceMachine wdiff_from_json(std::string_view text);

}  // namespace geo
