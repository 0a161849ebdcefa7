#include "geo/groups.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <set>

#include "group_impl.hpp"

namespace geo {

std::string_view to_string(Backend b) {
  switch (b) {
    case Backend::free: return "free";
    case Backend::lattice: return "lattice";
    case Backend::dihedral_artin: return "dihedral_artin";
    case Backend::coxeter: return "coxeter";
    case Backend::direct_product: return "direct_product";
    case Backend::free_product: return "free_product";
    case Backend::rewriting_system: return "rewriting_system";
  }
  return "free";
}

Element GroupImpl::mult(const Element& g, const Element& h) const {
  Element r = g;
  for (Letter x : word_of(h)) r = times_letter(r, x);
  return r;
}

Element GroupImpl::inv(const Element& g) const {
  Element r = identity();
  Word w = word_of(g);
  for (auto it = w.rbegin(); it != w.rend(); ++it) r = times_letter(r, alphabet.inverse(*it));
  return r;
}

namespace {

Word as_word(const Element& g) { return Word(g.data.begin(), g.data.end()); }
Element as_element(const Word& w) { return Element{std::vector<std::int32_t>(w.begin(), w.end())}; }

// ---- free ----------------------------------------------------------------

class FreeGroup final : public GroupImpl {
 public:
  using GroupImpl::GroupImpl;
  Element identity() const override { return {}; }
  Element times_letter(const Element& g, Letter x) const override {
    Element r = g;
    if (!r.data.empty() && r.data.back() == alphabet.inverse(x)) r.data.pop_back();
    else r.data.push_back(x);
    return r;
  }
  Word word_of(const Element& g) const override { return as_word(g); }
  std::string to_string(const Element& g) const override { return alphabet.format(as_word(g)); }
  std::optional<std::size_t> length(const Element& g) const override { return g.data.size(); }
};

// ---- lattice, optionally with a coordinate swap ---------------------------

class Lattice final : public GroupImpl {
 public:
  explicit Lattice(const GroupSpec& s) : GroupImpl(s.alphabet), s_(s) {}
  Element identity() const override { return Element{std::vector<std::int32_t>(s_.dimension + 1, 0)}; }
  Element times_letter(const Element& g, Letter x) const override {
    return mult(g, letter_element(x));
  }
  Element mult(const Element& g, const Element& h) const override {
    Element r = g;
    const std::size_t d = s_.dimension;
    const bool swapped = g.data[d] != 0;
    for (std::size_t i = 0; i < d; ++i) r.data[i] += h.data[swapped ? d - 1 - i : i];
    r.data[d] ^= h.data[d];
    return r;
  }
  Element inv(const Element& g) const override {
    Element r = g;
    const std::size_t d = s_.dimension;
    const bool swapped = g.data[d] != 0;
    for (std::size_t i = 0; i < d; ++i) r.data[i] = -g.data[swapped ? d - 1 - i : i];
    return r;
  }
  Word word_of(const Element&) const override { throw Error("lattice: word_of unused"); }
  std::string to_string(const Element& g) const override {
    std::string s = "(";
    for (std::size_t i = 0; i < s_.dimension; ++i) s += (i ? "," : "") + std::to_string(g.data[i]);
    if (s_.swap) s += g.data[s_.dimension] ? ";t" : ";1";
    return s + ")";
  }

 private:
  Element letter_element(Letter x) const {
    Element e = identity();
    for (std::size_t i = 0; i < s_.dimension; ++i) e.data[i] = static_cast<std::int32_t>(s_.vectors[x][i]);
    e.data[s_.dimension] = s_.swap && s_.twist[x] ? 1 : 0;
    return e;
  }
  const GroupSpec& s_;
};

// ---- dihedral Artin groups: left-greedy Garside normal form --------------
// data = [p, code_1, ..., code_r] for Delta^p s_1 ... s_r, where s_i is the
// alternating positive word of length len starting with generator f and
// code = f * m + len, 0 < len < m.

class DihedralArtin final : public GroupImpl {
 public:
  explicit DihedralArtin(const GroupSpec& s) : GroupImpl(s.alphabet), m_(s.m) {
    gen_ = {s.generators[0], s.generators[1]};
  }
  Element identity() const override { return Element{{0}}; }
  Element times_letter(const Element& g, Letter x) const override {
    Element r = g;
    if (x == gen_[0] || x == gen_[1]) {
      times_positive(r, x == gen_[0] ? 0 : 1);
      return r;
    }
    const int y = alphabet.inverse(x) == gen_[0] ? 0 : 1;
    // y^-1 = Delta^-1 R with R y = Delta, and s Delta^-1 = Delta^-1 tau(s)
    r.data[0] -= 1;
    for (std::size_t i = 1; i < r.data.size(); ++i) r.data[i] = tau(r.data[i]);
    const int first = (m_ - 1) % 2 ? 1 - y : y;
    for (unsigned i = 0; i + 1 < m_; ++i) times_positive(r, i % 2 ? 1 - first : first);
    return r;
  }
  Word word_of(const Element& g) const override {
    Word w;
    const std::int32_t p = g.data[0];
    for (std::int32_t i = 0; i < std::abs(p); ++i)
      for (unsigned j = 0; j < m_; ++j)
        w.push_back(p > 0 ? gen_[j % 2] : alphabet.inverse(gen_[(m_ - 1 - j) % 2]));
    for (std::size_t i = 1; i < g.data.size(); ++i) {
      const int f = g.data[i] / static_cast<int>(m_), len = g.data[i] % static_cast<int>(m_);
      for (int j = 0; j < len; ++j) w.push_back(gen_[j % 2 ? 1 - f : f]);
    }
    return w;
  }
  std::string to_string(const Element& g) const override {
    std::string s = "D^" + std::to_string(g.data[0]);
    for (std::size_t i = 1; i < g.data.size(); ++i) {
      const int f = g.data[i] / static_cast<int>(m_), len = g.data[i] % static_cast<int>(m_);
      s += '.';
      for (int j = 0; j < len; ++j) s += alphabet.name(gen_[j % 2 ? 1 - f : f]);
    }
    return s;
  }

 private:
  std::int32_t tau(std::int32_t code) const {
    if (m_ % 2 == 0) return code;
    const int f = code / static_cast<int>(m_), len = code % static_cast<int>(m_);
    return (1 - f) * static_cast<int>(m_) + len;
  }
  void times_positive(Element& r, int x) const {
    if (r.data.size() > 1) {
      std::int32_t& c = r.data.back();
      const int f = c / static_cast<int>(m_), len = c % static_cast<int>(m_);
      const int last = len % 2 ? f : 1 - f;
      if (last != x) {
        if (static_cast<unsigned>(len + 1) < m_) {
          ++c;
          return;
        }
        // the factor became Delta: move it to the front
        r.data.pop_back();
        r.data[0] += 1;
        for (std::size_t i = 1; i < r.data.size(); ++i) r.data[i] = tau(r.data[i]);
        return;
      }
    }
    r.data.push_back(x * static_cast<int>(m_) + 1);
  }
  unsigned m_;
  std::array<Letter, 2> gen_{};
};

// ---- Coxeter groups: Tits' algorithm --------------------------------------

class Coxeter final : public GroupImpl {
 public:
  explicit Coxeter(const GroupSpec& s) : GroupImpl(s.alphabet), s_(s) {}
  Element identity() const override { return {}; }
  Element times_letter(const Element& g, Letter x) const override {
    const Word w = as_word(g);
    const auto& words = orbit(w);
    // words are sorted and equally long, so the first one ending in x gives
    // the least reduced word of gx
    for (const Word& u : words)
      if (!u.empty() && u.back() == x) return as_element(Word(u.begin(), u.end() - 1));
    Word wx = w;
    wx.push_back(x);
    BraidOrbit o = braid_orbit(s_, wx, kDefaultOrbitBudget);
    Word nf = o.words.front();
    cache_.emplace(nf, std::move(o.words));
    return as_element(nf);
  }
  Element inv(const Element& g) const override {
    Word w = as_word(g);
    std::reverse(w.begin(), w.end());
    return as_element(orbit(w).front());
  }
  Word word_of(const Element& g) const override { return as_word(g); }
  std::string to_string(const Element& g) const override { return alphabet.format(as_word(g)); }
  std::optional<std::size_t> length(const Element& g) const override { return g.data.size(); }

 private:
  // All reduced words of the element with reduced word w.
  const std::vector<Word>& orbit(const Word& w) const {
    auto it = cache_.find(w);
    if (it != cache_.end()) return it->second;
    BraidOrbit o = braid_orbit(s_, w, kDefaultOrbitBudget);
    if (!o.reduced) throw Error("coxeter: non-reduced word in canonical form");
    return cache_.emplace(w, std::move(o.words)).first->second;
  }
  const GroupSpec& s_;
  mutable std::unordered_map<Word, std::vector<Word>, WordHash> cache_;
};

// ---- rewriting systems ----------------------------------------------------

class Rewriting final : public GroupImpl {
 public:
  explicit Rewriting(const GroupSpec& s) : GroupImpl(s.alphabet), rules_(s.rules) {}
  Element identity() const override { return {}; }
  Element times_letter(const Element& g, Letter x) const override {
    Word w = as_word(g);
    w.push_back(x);
    return as_element(rewrite(rules_, std::move(w)));
  }
  Element mult(const Element& g, const Element& h) const override {
    return as_element(rewrite(rules_, concat(as_word(g), as_word(h))));
  }
  Element inv(const Element& g) const override {
    return as_element(rewrite(rules_, alphabet.inverse_word(as_word(g))));
  }
  Word word_of(const Element& g) const override { return as_word(g); }
  std::string to_string(const Element& g) const override { return alphabet.format(as_word(g)); }

 private:
  const std::vector<RewriteRule>& rules_;
};

// ---- direct products: data = [size of left part, left..., right...] -------

class DirectProduct final : public GroupImpl {
 public:
  explicit DirectProduct(const GroupSpec& s)
      : GroupImpl(s.alphabet),
        s_(s),
        left_(std::make_shared<Group>(*s.left)),
        right_(std::make_shared<Group>(*s.right)),
        lo_(left_),
        ro_(right_) {
    // |(g, h)| = max(|g|, |h|) needs every pair (x, y) over X and Y, both
    // containing an identity symbol.
    const Alphabet& a = s.left->alphabet;
    const Alphabet& b = s.right->alphabet;
    if (a.identity_symbol() && b.identity_symbol()) {
      std::set<std::pair<Letter, Letter>> pairs;
      for (auto [x, y] : s.components) {
        Letter px = x == kNoLetter ? *a.identity_symbol() : x;
        Letter py = y == kNoLetter ? *b.identity_symbol() : y;
        pairs.emplace(px, py);
      }
      max_formula_ = pairs.size() == a.size() * b.size();
    }
  }
  Element identity() const override { return join(left_->identity(), right_->identity()); }
  Element times_letter(const Element& g, Letter x) const override {
    auto [l, r] = split(g);
    auto [cx, cy] = s_.components[x];
    if (cx != kNoLetter) l = left_->times_letter(l, cx);
    if (cy != kNoLetter) r = right_->times_letter(r, cy);
    return join(l, r);
  }
  Element mult(const Element& g, const Element& h) const override {
    auto [gl, gr] = split(g);
    auto [hl, hr] = split(h);
    return join(left_->mult(gl, hl), right_->mult(gr, hr));
  }
  Element inv(const Element& g) const override {
    auto [l, r] = split(g);
    return join(left_->inv(l), right_->inv(r));
  }
  Word word_of(const Element&) const override { throw Error("direct product: word_of unused"); }
  std::string to_string(const Element& g) const override {
    auto [l, r] = split(g);
    return "(" + left_->to_string(l) + "," + right_->to_string(r) + ")";
  }
  std::optional<std::size_t> length(const Element& g) const override {
    if (!max_formula_) return std::nullopt;
    auto [l, r] = split(g);
    return std::max(lo_.length(l), ro_.length(r));
  }

 private:
  static Element join(const Element& l, const Element& r) {
    Element e;
    e.data.reserve(1 + l.data.size() + r.data.size());
    e.data.push_back(static_cast<std::int32_t>(l.data.size()));
    e.data.insert(e.data.end(), l.data.begin(), l.data.end());
    e.data.insert(e.data.end(), r.data.begin(), r.data.end());
    return e;
  }
  static std::pair<Element, Element> split(const Element& g) {
    const auto n = static_cast<std::size_t>(g.data[0]);
    return {Element{{g.data.begin() + 1, g.data.begin() + 1 + n}}, Element{{g.data.begin() + 1 + n, g.data.end()}}};
  }
  const GroupSpec& s_;
  std::shared_ptr<Group> left_, right_;
  mutable FactorLength lo_, ro_;
  bool max_formula_ = false;
};

// ---- free products: data = sequence of syllables [side, size, factor data]

class FreeProduct final : public GroupImpl {
 public:
  explicit FreeProduct(const GroupSpec& s)
      : GroupImpl(s.alphabet),
        s_(s),
        factors_{std::make_shared<Group>(*s.left), std::make_shared<Group>(*s.right)},
        lengths_{FactorLength(factors_[0]), FactorLength(factors_[1])} {
    // |g| = sum of syllable lengths when every factor letter is available
    std::array<std::set<Letter>, 2> used;
    for (auto [x, y] : s.components) {
      if (x != kNoLetter) used[0].insert(x);
      if (y != kNoLetter) used[1].insert(y);
    }
    sum_formula_ = used[0].size() == s.left->alphabet.size() && used[1].size() == s.right->alphabet.size();
  }
  Element identity() const override { return {}; }
  Element times_letter(const Element& g, Letter x) const override {
    auto [cx, cy] = s_.components[x];
    if (cx == kNoLetter && cy == kNoLetter) return g;
    const int side = cx != kNoLetter ? 0 : 1;
    const Letter y = side == 0 ? cx : cy;
    auto syl = syllables(g);
    Element piece = factors_[side]->times_letter(factors_[side]->identity(), y);
    push(syl, side, piece);
    return join(syl);
  }
  Element mult(const Element& g, const Element& h) const override {
    auto syl = syllables(g);
    for (auto& [side, e] : syllables(h)) push(syl, side, e);
    return join(syl);
  }
  Element inv(const Element& g) const override {
    auto syl = syllables(g);
    std::reverse(syl.begin(), syl.end());
    for (auto& [side, e] : syl) e = factors_[side]->inv(e);
    return join(syl);
  }
  Word word_of(const Element&) const override { throw Error("free product: word_of unused"); }
  std::string to_string(const Element& g) const override {
    std::string s;
    for (auto& [side, e] : syllables(g)) s += (s.empty() ? "" : "*") + factors_[side]->to_string(e);
    return s.empty() ? "1" : s;
  }
  std::optional<std::size_t> length(const Element& g) const override {
    if (!sum_formula_) return std::nullopt;
    std::size_t n = 0;
    for (auto& [side, e] : syllables(g)) n += lengths_[side].length(e);
    return n;
  }

 private:
  using Syllables = std::vector<std::pair<int, Element>>;
  void push(Syllables& syl, int side, const Element& e) const {
    if (factors_[side]->is_identity(e)) return;
    if (!syl.empty() && syl.back().first == side) {
      Element merged = factors_[side]->mult(syl.back().second, e);
      if (factors_[side]->is_identity(merged)) syl.pop_back();
      else syl.back().second = std::move(merged);
      return;
    }
    syl.emplace_back(side, e);
  }
  static Syllables syllables(const Element& g) {
    Syllables out;
    for (std::size_t i = 0; i < g.data.size();) {
      const int side = g.data[i];
      const auto n = static_cast<std::size_t>(g.data[i + 1]);
      out.emplace_back(side, Element{{g.data.begin() + i + 2, g.data.begin() + i + 2 + n}});
      i += 2 + n;
    }
    return out;
  }
  static Element join(const Syllables& syl) {
    Element g;
    for (auto& [side, e] : syl) {
      g.data.push_back(side);
      g.data.push_back(static_cast<std::int32_t>(e.data.size()));
      g.data.insert(g.data.end(), e.data.begin(), e.data.end());
    }
    return g;
  }
  const GroupSpec& s_;
  std::array<std::shared_ptr<Group>, 2> factors_;
  mutable std::array<FactorLength, 2> lengths_;
  bool sum_formula_ = false;
};

}  // namespace

std::size_t FactorLength::length(const Element& g) {
  if (auto n = group_->length(g)) return *n;
  if (!oracle_) oracle_ = std::make_shared<GeodesicOracle>(group_);
  return oracle_->length(g);
}

Group::Group(GroupSpec spec) : spec_(std::move(spec)) {
  spec_.validate();
  switch (spec_.backend) {
    case Backend::free: impl_ = std::make_unique<FreeGroup>(spec_.alphabet); break;
    case Backend::lattice: impl_ = std::make_unique<Lattice>(spec_); break;
    case Backend::dihedral_artin: impl_ = std::make_unique<DihedralArtin>(spec_); break;
    case Backend::coxeter: impl_ = std::make_unique<Coxeter>(spec_); break;
    case Backend::direct_product: impl_ = std::make_unique<DirectProduct>(spec_); break;
    case Backend::free_product: impl_ = std::make_unique<FreeProduct>(spec_); break;
    case Backend::rewriting_system: impl_ = std::make_unique<Rewriting>(spec_); break;
  }
}

Group::~Group() = default;

Element Group::identity() const { return impl_->identity(); }

Element Group::eval(const Word& w) const {
  Element g = identity();
  for (Letter x : w) g = times_letter(g, x);
  return g;
}

Element Group::times_letter(const Element& g, Letter x) const {
  if (x >= alphabet().size()) throw InputError("letter outside the alphabet");
  if (alphabet().is_identity(x)) return g;
  return impl_->times_letter(g, x);
}

Element Group::mult(const Element& g, const Element& h) const { return impl_->mult(g, h); }
Element Group::inv(const Element& g) const { return impl_->inv(g); }
std::string Group::to_string(const Element& g) const { return impl_->to_string(g); }
std::optional<std::size_t> Group::length(const Element& g) const { return impl_->length(g); }

}  // namespace geo
