#include <algorithm>

#include "geo/geodesy.hpp"

namespace geo {

Dfa gw_iterate(const PairAutomaton& d, const Dfa& prev, std::size_t max_states) {
  require_same_alphabet(d.alphabet(), prev.alphabet(), "gw_iterate");
  // restricting first keeps the product small; the language is the same
  const PairAutomaton eq = pair_restrict(d, PairMode::equal_length);
  const Nfa n = pair_project(pair_product_second(eq, prev), Side::first);
  // forward subsets explode on some groups (Coxeter) where the reversed
  // automaton stays small, and the other way round for others
  const std::size_t cap = std::min(max_states, std::max<std::size_t>(100'000, 16 * n.state_count));
  try {
    return minimize(determinize(n, cap));
  } catch (const ResourceError&) {
  }
  return brzozowski(n, max_states);
}

GwTrace gw_fixpoint(const PairAutomaton& d, const Dfa& w, std::size_t max_iter, std::size_t max_states) {
  GwTrace t;
  t.gw.push_back(minimize(w));
  for (std::size_t i = 1; i <= max_iter; ++i) {
    Dfa next = gw_iterate(d, t.gw.back(), max_states);
    if (auto lost = shortest_accepted(difference(t.gw.back(), next)))
      throw Error("GW_" + std::to_string(i) + " lost the word '" + w.alphabet().format(*lost) + "'");
    t.growth.push_back(shortest_accepted(difference(next, t.gw.back())));
    t.gw.push_back(std::move(next));
    if (!t.growth.back()) {
      t.converged = true;
      break;
    }
  }
  return t;
}

GwVerdict verify_gw(const Dfa& gw, const Dfa& w, const PairAutomaton& d) {
  require_same_alphabet(gw.alphabet(), w.alphabet(), "verify_gw");
  require_same_alphabet(gw.alphabet(), d.alphabet(), "verify_gw");
  GwVerdict v;
  v.prefix_closed_witness = prefix_closure_violation(gw);
  v.contains_w_witness = shortest_accepted(difference(w, gw));
  const PairAutomaton eq = pair_restrict(d, PairMode::equal_length);
  auto a = shortest_accepted_pair(pair_product(eq, {&gw, true}, {&gw, false}));
  auto b = shortest_accepted_pair(pair_product(eq, {&gw, false}, {&gw, true}));
  if (a && b) v.equal_length_witness = shortlex_less(b->first, a->first) ? b : a;
  else v.equal_length_witness = a ? a : b;
  v.shorter_partner_witness =
      shortest_accepted_pair(pair_product(pair_restrict(d, PairMode::first_longer), {&gw, true}, {}));
  return v;
}

ProductAlphabet product_alphabet(const Alphabet& x, const Alphabet& y) {
  auto adjoin = [](const Alphabet& a) {
    if (a.find("1")) throw InputError("factor alphabet already has a symbol named '1'");
    std::vector<SymbolSpec> specs{{"1", "1", true}};
    for (const auto& s : a.symbols()) specs.push_back(s);
    return Alphabet(specs);
  };
  ProductAlphabet p;
  p.left = adjoin(x);
  p.right = adjoin(y);
  auto name = [&](Letter i, Letter j) { return "(" + p.left.name(i) + "," + p.right.name(j) + ")"; };
  std::vector<SymbolSpec> specs;
  for (Letter i = 0; i < p.left.size(); ++i)
    for (Letter j = 0; j < p.right.size(); ++j) {
      specs.push_back({name(i, j), name(p.left.inverse(i), p.right.inverse(j)), i == 0 && j == 0});
      p.pi1.push_back(i);
      p.pi2.push_back(j);
    }
  p.alphabet = Alphabet(specs);
  return p;
}

namespace {

// d over X extended to 1 + X; the identity letter leads to a rejecting sink.
Dfa with_identity_letter(const Dfa& d, const Alphabet& extended) {
  const std::size_t n = d.state_count(), k = d.letter_count();
  const State sink = static_cast<State>(n);
  std::vector<bool> acc(d.accepting_flags());
  acc.push_back(false);
  std::vector<State> table;
  for (State q = 0; q <= n; ++q) {
    table.push_back(sink);
    for (std::size_t x = 0; x < k; ++x) table.push_back(q == sink ? sink : d.next(q, static_cast<Letter>(x)));
  }
  return Dfa(extended, n + 1, d.start(), std::move(acc), std::move(table));
}

}  // namespace

Dfa product_geodesics(const Dfa& left, const Dfa& right) {
  const ProductAlphabet p = product_alphabet(left.alphabet(), right.alphabet());
  const Dfa a = inverse_image(with_identity_letter(left, p.left), p.alphabet, p.pi1);
  const Dfa b = inverse_image(with_identity_letter(right, p.right), p.alphabet, p.pi2);
  return minimize(union_of(a, b));
}

}  // namespace geo
