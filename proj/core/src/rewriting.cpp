#include <algorithm>
#include <deque>
#include <set>

#include "geo/groups.hpp"

namespace geo {

Word rewrite(const std::vector<RewriteRule>& rules, Word w) {
  // stack machine: move letters to the output and, whenever some left-hand
  // side is a suffix of the output, replace it and push the right-hand side
  // back onto the input
  Word out;
  std::vector<Letter> input(w.rbegin(), w.rend());
  out.reserve(w.size());
  while (!input.empty()) {
    out.push_back(input.back());
    input.pop_back();
    for (const auto& r : rules) {
      const std::size_t n = r.lhs.size();
      if (n == 0 || n > out.size() || out.back() != r.lhs.back()) continue;
      if (!std::equal(r.lhs.begin(), r.lhs.end(), out.end() - n)) continue;
      out.resize(out.size() - n);
      input.insert(input.end(), r.rhs.rbegin(), r.rhs.rend());
      break;
    }
  }
  return out;
}

std::vector<RewriteRule> free_reduction_rules(const Alphabet& a) {
  std::vector<RewriteRule> rules;
  for (Letter x = 0; x < a.size(); ++x) {
    if (a.is_identity(x)) rules.push_back({{x}, {}});
    else rules.push_back({{x, a.inverse(x)}, {}});
  }
  return rules;
}

namespace {

// Both one-step reductions of every overlap or inclusion of left-hand sides.
template <typename Visit>
void critical_pairs(const std::vector<RewriteRule>& rules, Visit&& visit) {
  for (const auto& r : rules)
    for (const auto& s : rules) {
      const Word& a = r.lhs;
      const Word& b = s.lhs;
      // a = p b q
      if (&r != &s && b.size() <= a.size())
        for (std::size_t p = 0; p + b.size() <= a.size(); ++p)
          if (std::equal(b.begin(), b.end(), a.begin() + p)) {
            Word left = r.rhs;
            Word right(a.begin(), a.begin() + p);
            right.insert(right.end(), s.rhs.begin(), s.rhs.end());
            right.insert(right.end(), a.begin() + p + b.size(), a.end());
            visit(std::move(left), std::move(right));
          }
      // a = u t, b = t v with t nonempty and u, v nonempty
      for (std::size_t t = 1; t < a.size() && t < b.size(); ++t)
        if (std::equal(a.end() - t, a.end(), b.begin())) {
          Word left = r.rhs;
          left.insert(left.end(), b.begin() + t, b.end());
          Word right(a.begin(), a.end() - t);
          right.insert(right.end(), s.rhs.begin(), s.rhs.end());
          visit(std::move(left), std::move(right));
        }
    }
}

}  // namespace

std::vector<std::pair<Word, Word>> unresolved_critical_pairs(const std::vector<RewriteRule>& rules) {
  std::vector<std::pair<Word, Word>> out;
  critical_pairs(rules, [&](Word l, Word r) {
    Word a = rewrite(rules, std::move(l)), b = rewrite(rules, std::move(r));
    if (a != b) out.emplace_back(std::move(a), std::move(b));
  });
  return out;
}

std::optional<std::vector<RewriteRule>> complete_rs(std::vector<RewriteRule> input, std::size_t max_rules,
                                                    std::size_t max_len) {
  std::vector<RewriteRule> rules;
  std::deque<std::pair<Word, Word>> pending;
  for (auto& r : input) pending.emplace_back(std::move(r.lhs), std::move(r.rhs));

  // returns false when the budget is exceeded
  auto absorb = [&]() {
    while (!pending.empty()) {
      auto [u, v] = std::move(pending.front());
      pending.pop_front();
      u = rewrite(rules, std::move(u));
      v = rewrite(rules, std::move(v));
      if (u == v) continue;
      if (shortlex_less(u, v)) std::swap(u, v);
      if (u.size() > max_len) return false;
      RewriteRule added{u, v};
      // interreduce: rules whose left side contains the new one go back to pending
      std::vector<RewriteRule> kept;
      for (auto& r : rules) {
        bool reducible = std::search(r.lhs.begin(), r.lhs.end(), added.lhs.begin(), added.lhs.end()) != r.lhs.end();
        if (reducible) pending.emplace_back(std::move(r.lhs), std::move(r.rhs));
        else kept.push_back(std::move(r));
      }
      rules = std::move(kept);
      rules.push_back(std::move(added));
      for (auto& r : rules) r.rhs = rewrite(rules, r.rhs);
      if (rules.size() > max_rules) return false;
    }
    return true;
  };

  if (!absorb()) return std::nullopt;
  for (;;) {
    critical_pairs(rules, [&](Word l, Word r) { pending.emplace_back(std::move(l), std::move(r)); });
    // drop pairs that already resolve before adding anything
    std::deque<std::pair<Word, Word>> open;
    for (auto& [l, r] : pending) {
      Word a = rewrite(rules, l), b = rewrite(rules, r);
      if (a != b) open.emplace_back(std::move(a), std::move(b));
    }
    pending = std::move(open);
    if (pending.empty()) break;
    if (!absorb()) return std::nullopt;
  }
  std::sort(rules.begin(), rules.end(),
            [](const RewriteRule& a, const RewriteRule& b) { return shortlex_less(a.lhs, b.lhs); });
  return rules;
}

}  // namespace geo
