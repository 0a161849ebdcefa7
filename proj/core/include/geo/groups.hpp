#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "geo/alphabet.hpp"
#include "geo/common.hpp"

namespace geo {

/// Canonical form of a group element. The encoding is backend specific;
/// two words evaluate to the same element iff their Elements are equal.
struct Element {
  std::vector<std::int32_t> data;

  friend bool operator==(const Element&, const Element&) = default;
  friend auto operator<=>(const Element&, const Element&) = default;
};

struct ElementHash {
  std::size_t operator()(const Element& e) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ull ^ e.data.size();
    for (std::int32_t v : e.data) h = (h ^ static_cast<std::uint32_t>(v)) * 0x100000001b3ull;
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

/// Identity component of a product letter.
inline constexpr Letter kNoLetter = kPad;

struct RewriteRule {
  Word lhs;
  Word rhs;
  friend bool operator==(const RewriteRule&, const RewriteRule&) = default;
};

enum class Backend { free, lattice, dihedral_artin, coxeter, direct_product, free_product, rewriting_system };

std::string_view to_string(Backend b);

/// Declarative description of a group with a finite symmetric generating set.
struct GroupSpec {
  std::string name;
  Alphabet alphabet;
  Backend backend = Backend::free;

  // lattice: one vector per letter; with `swap` (dimension 2 only) letters
  // flagged in `twist` also exchange the two coordinates.
  std::size_t dimension = 0;
  std::vector<std::vector<std::int64_t>> vectors;
  bool swap = false;
  std::vector<bool> twist;

  // dihedral_artin: generators[0], generators[1] are the positive letters.
  unsigned m = 0;
  // coxeter: generators in matrix order; 0 in the matrix stands for infinity.
  std::vector<Letter> generators;
  std::vector<std::vector<unsigned>> coxeter;

  // products: per letter, the components in the two factors. For a direct
  // product both may be set (kNoLetter = identity); for a free product at
  // most one is set.
  std::shared_ptr<const GroupSpec> left, right;
  std::vector<std::pair<Letter, Letter>> components;

  // rewriting_system: a complete shortlex-reducing system.
  std::vector<RewriteRule> rules;

  /// Throws InputError when the backend parameters are malformed.
  void validate() const;
};

std::string to_json(const GroupSpec& g);
GroupSpec group_from_json(std::string_view text);

class GroupImpl;
class GeodesicOracle;

/// Solvable word problem for a GroupSpec.
class Group {
 public:
  explicit Group(GroupSpec spec);
  ~Group();
  Group(const Group&) = delete;
  Group& operator=(const Group&) = delete;

  const GroupSpec& spec() const { return spec_; }
  const Alphabet& alphabet() const { return spec_.alphabet; }

  Element identity() const;
  Element eval(const Word& w) const;  // throws InputError on letters outside the alphabet
  Element times_letter(const Element& g, Letter x) const;
  Element mult(const Element& g, const Element& h) const;
  Element inv(const Element& g) const;
  bool is_identity(const Element& g) const { return g == identity(); }
  std::string to_string(const Element& g) const;

  /// Word length of g when the backend has a closed formula; nullopt means
  /// the Cayley ball is the only source.
  std::optional<std::size_t> length(const Element& g) const;

 private:
  GroupSpec spec_;
  std::unique_ptr<GroupImpl> impl_;
};

inline constexpr std::size_t kDefaultBallBudget = 8'000'000;  // a few GiB for the heavier element encodings
inline constexpr std::size_t kDefaultOrbitBudget = 100'000;

/// Cayley-ball engine. Layers are expanded in shortlex order, so the first
/// word found for an element is its shortlex normal form. Not thread-safe
/// while the ball grows.
class GeodesicOracle {
 public:
  explicit GeodesicOracle(std::shared_ptr<const Group> group, std::size_t max_elements = kDefaultBallBudget);
  explicit GeodesicOracle(GroupSpec spec, std::size_t max_elements = kDefaultBallBudget);

  const Group& group() const { return *group_; }
  const Alphabet& alphabet() const { return group_->alphabet(); }

  /// Grows the ball to radius r; throws ResourceError past the element budget.
  void ensure_radius(std::size_t r);
  std::size_t radius() const { return layer_start_.size() - 2; }
  std::size_t ball_size() const { return elements_.size(); }
  /// Number of elements at each distance 0..radius.
  std::vector<std::size_t> sphere_sizes() const;

  /// Distance of g from the identity, growing the ball as needed (at most
  /// to `limit`; beyond it ResourceError).
  std::size_t length(const Element& g, std::size_t limit = 64);
  std::size_t geodesic_length(const Word& w);
  bool is_geodesic(const Word& w);
  Word shortlex_normal_form(const Word& w);

  /// Geodesic words of length <= max_len in shortlex order.
  std::vector<Word> geodesic_words(std::size_t max_len);
  void for_each_geodesic(std::size_t max_len, const std::function<void(const Word&)>& visit);
  /// Number of geodesic words of each length 0..max_len.
  std::vector<std::uint64_t> geodesic_counts(std::size_t max_len);

  // Ball access by index; valid indices are < ball_size().
  static constexpr std::uint32_t kOutside = UINT32_MAX;
  std::optional<std::uint32_t> find(const Element& g) const;
  const Element& element(std::uint32_t i) const { return *elements_[i]; }
  std::size_t distance(std::uint32_t i) const { return dist_[i]; }
  Word word(std::uint32_t i) const;
  /// Neighbour index of i along x; requires distance(i) < radius().
  std::uint32_t neighbour(std::uint32_t i, Letter x) const { return adj_[std::size_t(i) * letters_ + x]; }

 private:
  void grow();

  std::shared_ptr<const Group> group_;
  std::size_t max_elements_;
  std::size_t letters_;
  std::unordered_map<Element, std::uint32_t, ElementHash> index_;
  std::vector<const Element*> elements_;  // keys of index_ by ball index
  std::vector<std::uint8_t> dist_;
  std::vector<std::uint32_t> parent_;
  std::vector<Letter> via_;
  std::vector<std::uint32_t> adj_;
  std::vector<std::size_t> layer_start_;
};

/// Normal form of w under exhaustive leftmost rule application.
Word rewrite(const std::vector<RewriteRule>& rules, Word w);

/// Overlaps and inclusions of left-hand sides whose two reductions have
/// different normal forms; empty iff the (terminating) system is confluent.
std::vector<std::pair<Word, Word>> unresolved_critical_pairs(const std::vector<RewriteRule>& rules);

/// Bounded Knuth-Bendix completion under the shortlex order. Rules are
/// oriented so the shortlex-greater side rewrites to the smaller. nullopt
/// ("incomplete") when more than max_rules rules or a rule longer than
/// max_len would be needed.
std::optional<std::vector<RewriteRule>> complete_rs(std::vector<RewriteRule> rules, std::size_t max_rules,
                                                    std::size_t max_len);

/// Free reduction rules xX -> e for every non-identity letter, and x -> e for
/// identity letters.
std::vector<RewriteRule> free_reduction_rules(const Alphabet& a);

// ---- Coxeter groups ---------------------------------------------------------

/// Tits' solution of the word problem: the set of words reachable from w by
/// braid moves, with `reduced` false as soon as some word has a factor xx.
struct BraidOrbit {
  bool reduced = true;
  std::vector<Word> words;  // sorted shortlex; otherwise one word with a factor xx
};

/// Letters of w must be Coxeter generators.
BraidOrbit braid_orbit(const GroupSpec& coxeter, const Word& w, std::size_t max_words = kDefaultOrbitBudget);

/// Shortlex-least reduced word equal to w (Tits: delete xx and close under
/// braid moves until stable).
Word tits_normal_form(const GroupSpec& coxeter, const Word& w, std::size_t max_words = kDefaultOrbitBudget);

}  // namespace geo
