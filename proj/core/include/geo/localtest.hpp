#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "geo/automata.hpp"
#include "geo/semigroups.hpp"

namespace geo {

/// (pre_{k-1}, suf_{k-1}, sub_k) of a word; two words are ~_k iff their
/// profiles are equal.
struct KProfile {
  std::size_t k = 1;
  Word prefix;
  Word suffix;
  std::set<Word> factors;

  friend bool operator==(const KProfile&, const KProfile&) = default;
};

KProfile k_profile(const Word& w, std::size_t k);
bool sim_k(const Word& u, const Word& v, std::size_t k);
std::set<Letter> support(const Word& w);

inline constexpr std::size_t kDefaultProfileBudget = 4'000'000;

/// Deterministic automaton whose state after reading u is the ~_k class of u.
/// States are discovered lazily.
class ProfileClassifier {
 public:
  ProfileClassifier(std::size_t letters, std::size_t k, std::size_t max_states = kDefaultProfileBudget);

  /// Sentinel for profiles that no word of the restricting language shares.
  static constexpr std::size_t kDead = SIZE_MAX - 1;

  /// Collapses every profile with a factor outside `factor_ok` (indexed by
  /// factor code) or a (k-1)-prefix outside `prefix_ok` into kDead.
  void restrict_to(std::vector<bool> factor_ok, std::vector<bool> prefix_ok);

  /// Coarser classifier: instead of the k-factor set, records for each
  /// listed group of words (lengths 1..k) whether one of them occurs as a
  /// factor. profile() is meaningless afterwards.
  void track_factors(const std::vector<std::vector<Word>>& predicates);

  std::size_t k() const { return k_; }
  std::size_t letters() const { return letters_; }
  std::size_t start() const { return 0; }
  std::size_t size() const { return keys_.size(); }
  /// Throws ResourceError when the profile budget is exceeded.
  std::size_t next(std::size_t p, Letter x);
  std::size_t run(const Word& w);
  KProfile profile(std::size_t p) const;
  /// Shorter than k - 1: the profile is the word itself.
  bool is_short(std::size_t p) const;
  std::uint64_t prefix_code(std::size_t p) const;
  /// ORs the factor bits of p into `bits`.
  void merge_into(std::size_t p, std::vector<std::uint64_t>& bits) const;
  /// The factor bits of p are among `bits`.
  bool within(std::size_t p, const std::vector<std::uint64_t>& bits) const;
  /// Explores every reachable profile; returns the count.
  std::size_t explore();

 private:
  using Key = std::vector<std::uint64_t>;
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept;
  };
  std::size_t intern(Key key);
  Word decode(std::uint64_t code, std::size_t len) const;

  std::size_t letters_, k_, max_states_;
  std::uint64_t block_ = 1;  // letters^(k-1)
  std::size_t factor_words_ = 0;
  std::vector<Key> keys_;
  std::unordered_map<Key, std::size_t, KeyHash> ids_;
  std::vector<std::size_t> next_;
  std::vector<bool> factor_ok_, prefix_ok_;
  bool tracking_ = false;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> predicates_;  // (code << 8 | length) -> bits
  std::vector<bool> by_length_;
};

/// Verdict of a k-testability decider. When `holds` is no, `witness` holds
/// either u ~_k v with u accepted and v rejected (classifier) or the words
/// violating a semigroup condition (see `detail`).
struct LtVerdict {
  Truth holds = Truth::unknown;
  std::vector<Word> witness;
  std::string detail;
  std::size_t explored = 0;
};

/// Definitional decider: walks the classifier in lockstep with d.
LtVerdict is_k_testable(const Dfa& d, std::size_t k, std::size_t max_profiles = kDefaultProfileBudget);

inline constexpr std::uint64_t kDefaultWorkBudget = 4'000'000'000ull;

struct SemigroupBudget {
  std::size_t max_elements = kDefaultElementBudget;
  std::uint64_t max_work = kDefaultWorkBudget;
};

/// Semigroup criterion: with x ranging over words of length k-1 and y, z
/// over all words (the empty word included),
///   (1) xyxzx = xzxyx in S, and
///   (2) xy = zx as words implies xy = xyy in S.
/// Witness for (1): x, y, z; for (2): x, y.
LtVerdict is_k_testable_semigroup(const Dfa& d, std::size_t k, const SemigroupBudget& budget = {});
LtVerdict is_k_testable_semigroup(const TransitionSemigroup& s, std::size_t k, const SemigroupBudget& budget = {});

/// Locally idempotent and commutative syntactic semigroup.
SemigroupVerdict is_locally_testable(const Dfa& d, std::size_t max_elements = kDefaultElementBudget);

enum class LtMethod { classifier, semigroup, both };

struct MinKResult {
  std::optional<std::size_t> k;  // least k found testable
  bool exact = true;             // false when a smaller k was left undecided
  std::vector<LtVerdict> per_k;  // index i holds the verdict for k = i + 1
};

/// Linear search for the least k <= k_max. With `both`, the classifier
/// cross-checks each decided verdict when it finishes within its budget and
/// a disagreement raises Error.
MinKResult min_k(const Dfa& d, std::size_t k_max, LtMethod method = LtMethod::semigroup,
                 std::size_t max_profiles = kDefaultProfileBudget, const SemigroupBudget& budget = {});

/// 2k(n^{2k}+1), saturating at SIZE_MAX.
std::size_t repetition_bound(std::size_t alphabet_size, std::size_t k);

struct RepetitionWitness {
  Word rotated;
  std::size_t bound = 0;
  std::size_t shift = 0;  // rotated = w[shift..] w[..shift]
};

/// Cyclic permutation w~ of w with w~ ~_k w~^j for all j >= 1, found from a
/// repeated length-2k block. Throws PreconditionError when l(w) is below the
/// bound.
RepetitionWitness repetition_witness(const Word& w, std::size_t k, std::size_t alphabet_size);

Word power(const Word& w, std::size_t j);

}  // namespace geo
