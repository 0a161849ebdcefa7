#include <algorithm>
#include <deque>
#include <unordered_set>

#include "geo/groups.hpp"

namespace geo {

namespace {

struct BraidTable {
  // order[x][y]: Coxeter order between alphabet letters, 0 = infinity.
  std::vector<std::vector<unsigned>> order;
};

BraidTable braid_table(const GroupSpec& g) {
  if (g.backend != Backend::coxeter) throw PreconditionError("not a Coxeter group spec");
  const std::size_t n = g.alphabet.size();
  BraidTable t;
  t.order.assign(n, std::vector<unsigned>(n, 0));
  std::vector<int> index(n, -1);
  for (std::size_t i = 0; i < g.generators.size(); ++i) index[g.generators[i]] = static_cast<int>(i);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (index[x] >= 0 && index[y] >= 0) t.order[x][y] = g.coxeter[index[x]][index[y]];
  return t;
}

}  // namespace

BraidOrbit braid_orbit(const GroupSpec& g, const Word& w, std::size_t max_words) {
  const BraidTable t = braid_table(g);
  for (Letter x : w)
    if (x >= g.alphabet.size() || g.alphabet.is_identity(x))
      throw InputError("braid_orbit: letter is not a Coxeter generator");
  BraidOrbit orbit;
  std::unordered_set<Word, WordHash> seen{w};
  std::deque<Word> queue{w};
  while (!queue.empty()) {
    Word u = std::move(queue.front());
    queue.pop_front();
    for (std::size_t i = 0; i + 1 < u.size(); ++i)
      if (u[i] == u[i + 1]) {
        orbit.reduced = false;
        orbit.words = {u};
        return orbit;
      }
    for (std::size_t i = 0; i + 1 < u.size(); ++i) {
      const Letter x = u[i], y = u[i + 1];
      const unsigned m = t.order[x][y];
      if (m < 2 || i + m > u.size()) continue;
      bool alternating = true;
      for (std::size_t j = 2; j < m && alternating; ++j) alternating = u[i + j] == (j % 2 ? y : x);
      if (!alternating) continue;
      Word v = u;
      for (std::size_t j = 0; j < m; ++j) v[i + j] = j % 2 ? x : y;
      if (seen.insert(v).second) {
        if (seen.size() > max_words) throw ResourceError("braid orbit exceeds " + std::to_string(max_words) + " words");
        queue.push_back(std::move(v));
      }
    }
  }
  orbit.words.assign(seen.begin(), seen.end());
  std::sort(orbit.words.begin(), orbit.words.end(), ShortlexLess{});
  return orbit;
}

Word tits_normal_form(const GroupSpec& g, const Word& w, std::size_t max_words) {
  Word cur;
  for (Letter x : w) {
    if (g.alphabet.is_identity(x)) continue;
    cur.push_back(x);
    for (;;) {
      BraidOrbit o = braid_orbit(g, cur, max_words);
      if (o.reduced) {
        cur = o.words.front();
        break;
      }
      // some word in the orbit has a factor xx: delete it and start again
      const Word& u = o.words.front();
      Word v;
      for (std::size_t i = 0; i < u.size(); ++i) {
        if (i + 1 < u.size() && u[i] == u[i + 1]) {
          v.insert(v.end(), u.begin() + i + 2, u.end());
          break;
        }
        v.push_back(u[i]);
      }
      cur = std::move(v);
      if (cur.empty()) break;
    }
  }
  return cur;
}

}  // namespace geo
