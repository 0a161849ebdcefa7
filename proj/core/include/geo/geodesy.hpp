#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "geo/automata.hpp"
#include "geo/fixtures.hpp"
#include "geo/groups.hpp"
#include "geo/semigroups.hpp"
#include "geo/wdiff.hpp"

namespace geo {

/// Words v having a D-partner w in L(prev) with l(w) = l(v).
Dfa gw_iterate(const PairAutomaton& d, const Dfa& prev, std::size_t max_states = kDefaultStateBudget);

struct GwTrace {
  std::vector<Dfa> gw;  // gw[0] = W
  bool converged = false;
  /// Per step i >= 1, a word in L(GW_i) \ L(GW_{i-1}) (nullopt once equal).
  std::vector<std::optional<Word>> growth;
};

/// Iterates gw_iterate from W until the language repeats or max_iter steps.
/// Throws Error if some step is not a superset of its predecessor.
GwTrace gw_fixpoint(const PairAutomaton& d, const Dfa& w, std::size_t max_iter,
                    std::size_t max_states = kDefaultStateBudget);

struct GwVerdict {
  std::optional<Word> prefix_closed_witness;                     // (i)
  std::optional<Word> contains_w_witness;                        // (ii) in W, not in GW
  std::optional<std::pair<Word, Word>> equal_length_witness;     // (iii) u in GW, v not (either order)
  std::optional<std::pair<Word, Word>> shorter_partner_witness;  // (iv) u in GW, v shorter

  bool prefix_closed() const { return !prefix_closed_witness; }
  bool contains_w() const { return !contains_w_witness; }
  bool closed_under_partners() const { return !equal_length_witness; }
  bool no_shorter_partner() const { return !shorter_partner_witness; }
  bool passed() const { return prefix_closed() && contains_w() && closed_under_partners() && no_shorter_partner(); }
};

/// The four sufficient conditions for L(GW) = Geo, decided exactly.
GwVerdict verify_gw(const Dfa& gw, const Dfa& w, const PairAutomaton& d);

/// Alphabet Z = (X + e) x (Y + e) with the projections onto X + e and Y + e.
/// The adjoined identity is named "1" and comes first; letter (x, y) is named
/// "(x,y)" and (1,1) is the identity of Z.
struct ProductAlphabet {
  Alphabet alphabet;
  Alphabet left, right;  // factor alphabets with "1" prepended
  std::vector<Letter> pi1, pi2;
};
ProductAlphabet product_alphabet(const Alphabet& x, const Alphabet& y);

/// Geodesics of the direct product over product_alphabet(X, Y): w is geodesic
/// iff one of its projections is a geodesic word without identity letters.
Dfa product_geodesics(const Dfa& left, const Dfa& right);

/// Exact comparison of L(gw) with the oracle's geodesics up to `length`:
/// per-length counts of both, and the number of gw words that are geodesic
/// (counted along the Cayley ball, no word list is built).
struct CrossCheck {
  std::size_t length = 0;
  std::vector<std::uint64_t> gw_counts, geodesic_counts, common_counts;
  std::optional<Word> non_geodesic;  // accepted by gw, not geodesic
  std::optional<Word> missing;       // geodesic, rejected by gw
  bool exact() const { return !non_geodesic && !missing && gw_counts == geodesic_counts; }
};
CrossCheck oracle_crosscheck(GeodesicOracle& oracle, const Dfa& gw, std::size_t length);

using TbPoint = std::pair<std::size_t, std::size_t>;  // (i, k)

/// i in 2..max_iter, k in 4..14, ordered by i + k then i.
std::vector<TbPoint> default_schedule(std::size_t max_iter);
/// (1, k), (2, k), ..., (i, k) for a reported run.
std::vector<TbPoint> seeded_schedule(const ReportedRun& r);

struct PipelineConfig {
  std::size_t max_iter = 8;
  std::vector<TbPoint> seeds;     // tried first
  std::vector<TbPoint> schedule;  // empty: default_schedule(max_iter)
  std::size_t crosscheck_len = 10;
  std::vector<std::size_t> d_bounds{8, 10, 12};
  std::size_t d_sample_len = 6;
  std::size_t max_states = kDefaultStateBudget;
  std::size_t lt_max_k = 8;
  std::size_t semigroup_elements = kDefaultElementBudget;
  /// Use this machine instead of synthesizing one; no escalation then.
  std::optional<WordDifferenceMachine> machine;
};

/// Pipeline settings for a bundled fixture: its reported (i, k) seeds the
/// schedule; Artin groups are cross-checked to length 12.
PipelineConfig fixture_config(const Fixture& f);

struct MachineAttempt {
  std::size_t bound = 0;  // 0 for a loaded machine
  std::size_t states = 0;
  DCheck check;
  std::optional<Word> w_mismatch;  // W against the oracle's normal forms
  std::string outcome;
};

struct CandidateOutcome {
  std::size_t bound = 0;
  std::size_t i = 0, k = 0;  // k = 0: GW_i itself (converged)
  std::string outcome;       // "verified", "tb-abort", "theorem-failed", "crosscheck-failed", "budget"
  std::string detail;
  std::size_t states = 0;  // live states of the candidate
};

struct GwReport {
  std::string group;
  std::string digest;         // of the group spec JSON
  std::string config_digest;  // of the pipeline settings
  std::string d_source;
  std::vector<MachineAttempt> machines;

  // data of the machine the final candidate came from (the last one tried otherwise)
  std::optional<WordDifferenceMachine> machine;
  std::optional<Dfa> w;
  std::vector<std::size_t> trace_states, trace_live;  // GW_0 = W, GW_1, ...
  bool converged = false;
  std::vector<CandidateOutcome> candidates;

  std::optional<Dfa> gw;
  std::size_t i = 0, k = 0;
  std::optional<GwVerdict> verdict;
  std::optional<CrossCheck> crosscheck;

  bool theorem_verified = false;
  bool oracle_corroborated = false;
  std::string status;  // "verified" or "no verified GW found at these budgets"

  // language classification of the verified GW
  Truth locally_testable = Truth::unknown;
  std::optional<std::size_t> min_k;
  bool min_k_exact = false;
  Truth aperiodic = Truth::unknown;
  std::size_t semigroup_size = 0;
  std::string lt_detail;

  bool verified() const { return theorem_verified && oracle_corroborated; }
  std::size_t gw_states() const { return gw ? gw->state_count() : 0; }
  std::size_t gw_live_states() const { return gw ? live_state_count(*gw) : 0; }
};

GwReport pipeline(GeodesicOracle& oracle, const PipelineConfig& config = {});
GwReport pipeline(const GroupSpec& spec, const PipelineConfig& config = {});

/// JSON ("format": 1) with the automata embedded.
std::string to_json(const GwReport& r);

}  // namespace geo
