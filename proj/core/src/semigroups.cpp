#include "geo/semigroups.hpp"

#include <algorithm>

namespace geo {

namespace {

using Element = TransitionSemigroup::Element;

std::uint64_t hash_map(const std::uint16_t* m, std::size_t n) {
  std::uint64_t h = 1469598103934665603ull;
  for (std::size_t i = 0; i < n; ++i) {
    h ^= m[i];
    h *= 1099511628211ull;
  }
  return h ^ (h >> 31);
}

constexpr std::size_t kTableLimit = 4096;

}  // namespace

TransitionSemigroup::TransitionSemigroup(const Dfa& d, std::size_t max_elements, bool allow_partial)
    : base_(minimize(d)) {
  degree_ = base_.state_count();
  if (degree_ > 0xFFFF) throw InputError("transition semigroup: automaton has too many states");
  const std::size_t k = base_.letter_count();
  if (k == 0) throw InputError("transition semigroup: empty alphabet");

  std::vector<Element> slots(1024, kOne);
  auto lookup_or_insert = [&](const std::vector<std::uint16_t>& m, Element parent, Letter last) -> Element {
    std::size_t mask = slots.size() - 1;
    std::size_t i = hash_map(m.data(), degree_) & mask;
    while (slots[i] != kOne) {
      if (std::equal(m.begin(), m.end(), map_.begin() + slots[i] * degree_)) return slots[i];
      i = (i + 1) & mask;
    }
    if (parent_.size() >= max_elements) return kUnknown;
    Element id = static_cast<Element>(parent_.size());
    map_.insert(map_.end(), m.begin(), m.end());
    parent_.push_back(parent);
    last_.push_back(last);
    right_.resize(right_.size() + k, kUnknown);
    slots[i] = id;
    if (2 * parent_.size() > slots.size()) {
      std::vector<Element> bigger(slots.size() * 2, kOne);
      std::size_t bmask = bigger.size() - 1;
      for (Element e = 0; e < parent_.size(); ++e) {
        std::size_t j = hash_map(&map_[e * degree_], degree_) & bmask;
        while (bigger[j] != kOne) j = (j + 1) & bmask;
        bigger[j] = e;
      }
      slots.swap(bigger);
    }
    return id;
  };

  auto budget_hit = [&]() {
    if (!allow_partial)
      throw ResourceError("transition semigroup exceeds " + std::to_string(max_elements) + " elements");
    complete_ = false;
  };

  std::vector<std::uint16_t> m(degree_);
  generators_.resize(k);
  for (Letter x = 0; x < k; ++x) {
    for (State q = 0; q < degree_; ++q) m[q] = static_cast<std::uint16_t>(base_.next(q, x));
    generators_[x] = lookup_or_insert(m, kOne, x);
    if (generators_[x] == kUnknown) budget_hit();
  }
  for (Element e = 0; e < parent_.size() && complete_; ++e) {
    for (Letter x = 0; x < k; ++x) {
      for (State q = 0; q < degree_; ++q)
        m[q] = static_cast<std::uint16_t>(base_.next(map_[e * degree_ + q], x));
      Element r = lookup_or_insert(m, e, x);
      if (r == kUnknown) {
        budget_hit();
        break;
      }
      right_[e * k + x] = r;
    }
  }

  if (complete_ && size() <= kTableLimit) {
    const std::size_t n = size();
    table_.resize(n * n);
    for (Element a = 0; a < n; ++a)
      for (Element b = 0; b < n; ++b) {
        Element left = parent_[b] == kOne ? a : table_[a * n + parent_[b]];
        table_[a * n + b] = static_cast<std::uint16_t>(right_[left * k + last_[b]]);
      }
  }
}

void TransitionSemigroup::require_complete(const char* what) const {
  if (!complete_) throw PreconditionError(std::string(what) + " needs the complete semigroup");
}

Element TransitionSemigroup::times_letter(Element e, Letter x) const {
  if (e == kUnknown) return kUnknown;
  if (e == kOne) return generators_[x];
  return right_[e * base_.letter_count() + x];
}

Element TransitionSemigroup::multiply(Element a, Element b) const {
  if (a == kUnknown || b == kUnknown) return kUnknown;
  if (a == kOne) return b;
  if (b == kOne) return a;
  if (!table_.empty()) return table_[a * size() + b];
  Element r = a;
  for (Letter x : representative(b)) r = times_letter(r, x);
  return r;
}

Element TransitionSemigroup::power(Element a, std::size_t n) const {
  Element r = kOne;
  for (std::size_t i = 0; i < n; ++i) r = multiply(r, a);
  return r;
}

Element TransitionSemigroup::of_word(const Word& w) const {
  Element r = kOne;
  for (Letter x : w) {
    if (x >= base_.letter_count()) throw InputError("word letter outside the alphabet");
    r = times_letter(r, x);
  }
  return r;
}

Word TransitionSemigroup::representative(Element e) const {
  Word w;
  for (Element c = e; c != kOne; c = parent_[c]) w.push_back(last_[c]);
  std::reverse(w.begin(), w.end());
  return w;
}

Element TransitionSemigroup::idempotent_power(Element e) const {
  Element p = e;
  for (std::size_t i = 0; i <= size() + 1; ++i) {
    if (p == kUnknown) return kUnknown;
    if (multiply(p, p) == p) return p;
    p = multiply(p, e);
  }
  return kUnknown;
}

bool TransitionSemigroup::is_aperiodic_element(Element e) const {
  if (e == kOne) return true;
  const std::uint16_t* f = transformation(e);
  // 0 unvisited, 1 on current path, 2 finished
  std::vector<std::uint8_t> color(degree_, 0);
  std::vector<State> path;
  for (State s = 0; s < degree_; ++s) {
    if (color[s]) continue;
    State q = s;
    path.clear();
    while (color[q] == 0) {
      color[q] = 1;
      path.push_back(q);
      q = f[q];
    }
    if (color[q] == 1 && f[q] != q) return false;
    for (State p : path) color[p] = 2;
  }
  return true;
}

std::vector<Element> idempotents(const TransitionSemigroup& s) {
  if (!s.complete()) throw PreconditionError("idempotents need the complete semigroup");
  std::vector<Element> out;
  for (Element e = 0; e < s.size(); ++e)
    if (s.is_idempotent(e)) out.push_back(e);
  return out;
}

SemigroupVerdict is_idempotent(const TransitionSemigroup& s) {
  SemigroupVerdict v;
  for (Element e = 0; e < s.size(); ++e)
    if (!s.is_idempotent(e)) {
      v.holds = Truth::no;
      v.witness = {s.representative(e)};
      v.reason = "s*s != s";
      return v;
    }
  v.holds = s.complete() ? Truth::yes : Truth::unknown;
  return v;
}

SemigroupVerdict is_commutative(const TransitionSemigroup& s) {
  SemigroupVerdict v;
  // Generators commuting pairwise suffices.
  const std::size_t k = s.base().letter_count();
  for (Letter x = 0; x < k; ++x)
    for (Letter y = x + 1; y < k; ++y) {
      Element a = s.generator(x), b = s.generator(y);
      if (a == TransitionSemigroup::kUnknown || b == TransitionSemigroup::kUnknown) continue;
      Element ab = s.multiply(a, b), ba = s.multiply(b, a);
      if (ab == TransitionSemigroup::kUnknown || ba == TransitionSemigroup::kUnknown) {
        v.holds = Truth::unknown;
        continue;
      }
      if (ab != ba) {
        v.holds = Truth::no;
        v.witness = {Word{x}, Word{y}};
        v.reason = "st != ts";
        return v;
      }
    }
  v.holds = s.complete() ? Truth::yes : Truth::unknown;
  return v;
}

SemigroupVerdict is_aperiodic(const TransitionSemigroup& s) {
  SemigroupVerdict v;
  for (Element e = 0; e < s.size(); ++e)
    if (!s.is_aperiodic_element(e)) {
      v.holds = Truth::no;
      v.witness = {s.representative(e)};
      v.reason = "s^n != s^(n+1) for every n";
      return v;
    }
  v.holds = s.complete() ? Truth::yes : Truth::unknown;
  return v;
}

SemigroupVerdict is_locally_idempotent_commutative(const TransitionSemigroup& s) {
  SemigroupVerdict v;
  // A non-aperiodic s gives e = s^omega with ese in a nontrivial group.
  for (Element e = 0; e < s.size(); ++e)
    if (!s.is_aperiodic_element(e)) {
      Element idem = s.idempotent_power(e);
      if (idem == TransitionSemigroup::kUnknown) break;
      v.holds = Truth::no;
      v.witness = {s.representative(idem), s.representative(e), s.representative(e)};
      v.reason = "ese is not idempotent";
      return v;
    }
  if (!s.complete()) return v;

  const std::size_t n = s.size();
  std::vector<Element> first(n);
  std::vector<char> seen(n);
  std::vector<Element> local;
  for (Element e : idempotents(s)) {
    std::fill(seen.begin(), seen.end(), 0);
    local.clear();
    for (Element x = 0; x < n; ++x) {
      Element y = s.multiply(s.multiply(e, x), e);
      if (!seen[y]) {
        seen[y] = 1;
        first[y] = x;
        local.push_back(y);
      }
    }
    for (Element y : local)
      if (!s.is_idempotent(y)) {
        v.holds = Truth::no;
        v.witness = {s.representative(e), s.representative(first[y]), s.representative(first[y])};
        v.reason = "ese is not idempotent";
        return v;
      }
    for (std::size_t i = 0; i < local.size(); ++i)
      for (std::size_t j = i + 1; j < local.size(); ++j)
        if (s.multiply(local[i], local[j]) != s.multiply(local[j], local[i])) {
          v.holds = Truth::no;
          v.witness = {s.representative(e), s.representative(first[local[i]]), s.representative(first[local[j]])};
          v.reason = "(ese)(ete) != (ete)(ese)";
          return v;
        }
  }
  v.holds = Truth::yes;
  return v;
}

}  // namespace geo
