#include <cctype>

#include "geo/fixtures.hpp"

namespace geo {

namespace {

std::string upper(const std::string& s) {
  std::string r = s;
  for (char& c : r) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return r;
}

}  // namespace

GroupSpec free_group_spec(std::size_t rank) {
  GroupSpec g;
  g.name = "free" + std::to_string(rank);
  std::vector<std::pair<std::string, std::string>> pairs;
  for (std::size_t i = 0; i < rank; ++i) {
    std::string x(1, static_cast<char>('a' + i));
    pairs.emplace_back(x, upper(x));
  }
  g.alphabet = Alphabet::with_inverses(pairs);
  g.backend = Backend::free;
  return g;
}

GroupSpec free_abelian_spec(std::size_t n) {
  GroupSpec g = free_group_spec(n);
  g.name = "z" + std::to_string(n);
  g.backend = Backend::lattice;
  g.dimension = n;
  for (std::size_t i = 0; i < n; ++i)
    for (int sign : {1, -1}) {
      std::vector<std::int64_t> v(n, 0);
      v[i] = sign;
      g.vectors.push_back(v);
    }
  return g;
}

GroupSpec cyclic_with_identity_spec(const std::string& x, const std::string& inverse) {
  GroupSpec g;
  g.name = "z_" + x;
  g.alphabet = Alphabet({{"1", "1", true}, {x, inverse, false}, {inverse, x, false}});
  g.backend = Backend::lattice;
  g.dimension = 1;
  g.vectors = {{0}, {1}, {-1}};
  return g;
}

GroupSpec z2_nine_spec() {
  GroupSpec g;
  g.name = "z2_nine";
  g.backend = Backend::direct_product;
  g.left = std::make_shared<GroupSpec>(cyclic_with_identity_spec("a", "A"));
  g.right = std::make_shared<GroupSpec>(cyclic_with_identity_spec("b", "B"));
  const char* xs[] = {"1", "a", "A"};
  const char* ys[] = {"1", "b", "B"};
  auto inv = [](std::string s) { return s == "1" ? s : s == "a" ? "A" : s == "A" ? "a" : s == "b" ? "B" : "b"; };
  std::vector<SymbolSpec> symbols;
  for (Letter i = 0; i < 3; ++i)
    for (Letter j = 0; j < 3; ++j) {
      std::string name = std::string("(") + xs[i] + "," + ys[j] + ")";
      std::string iname = "(" + inv(xs[i]) + "," + inv(ys[j]) + ")";
      symbols.push_back({name, iname, i == 0 && j == 0});
      g.components.emplace_back(i, j);
    }
  g.alphabet = Alphabet(symbols);
  return g;
}

GroupSpec dihedral_artin_spec(unsigned m) {
  GroupSpec g = free_group_spec(2);
  g.name = "artin" + std::to_string(m);
  g.backend = Backend::dihedral_artin;
  g.m = m;
  g.generators = {g.alphabet.letter("a"), g.alphabet.letter("b")};
  return g;
}

GroupSpec example1_spec() {
  GroupSpec g;
  g.name = "example1";
  g.alphabet = Alphabet({{"a", "A", false},
                         {"A", "a", false},
                         {"b", "B", false},
                         {"B", "b", false},
                         {"t", "t", false},
                         {"u", "U", false},
                         {"U", "u", false},
                         {"v", "V", false},
                         {"V", "v", false}});
  g.backend = Backend::lattice;
  g.dimension = 2;
  g.swap = true;
  // element (x, f) acts as translation by x after f swaps of coordinates;
  // t swaps, u = at, v = bt
  g.vectors = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {0, 0}, {1, 0}, {0, -1}, {0, 1}, {-1, 0}};
  g.twist = {false, false, false, false, true, true, true, true, true};
  return g;
}

GroupSpec example5_spec() {
  GroupSpec g;
  g.name = "example5";
  g.alphabet = Alphabet({{"a", "a", false}, {"b", "b", false}, {"c", "c", false}, {"d", "d", false}});
  g.backend = Backend::coxeter;
  g.generators = {0, 1, 2, 3};
  g.coxeter = {{1, 3, 2, 3}, {3, 1, 3, 2}, {2, 3, 1, 3}, {3, 2, 3, 1}};
  return g;
}

GroupSpec z2_free_z_spec() {
  GroupSpec g;
  g.name = "z2_free_z";
  g.backend = Backend::free_product;
  auto left = std::make_shared<GroupSpec>(z2_nine_spec());
  GroupSpec c = free_abelian_spec(1);
  c.name = "z_c";
  c.alphabet = Alphabet::with_inverses({{"c", "C"}});
  g.right = std::make_shared<GroupSpec>(c);
  std::vector<SymbolSpec> symbols = left->alphabet.symbols();
  for (Letter x = 0; x < left->alphabet.size(); ++x) g.components.emplace_back(x, kNoLetter);
  symbols.push_back({"c", "C", false});
  symbols.push_back({"C", "c", false});
  g.components.emplace_back(kNoLetter, 0);
  g.components.emplace_back(kNoLetter, 1);
  g.left = left;
  g.alphabet = Alphabet(symbols);
  return g;
}

std::vector<Fixture> fixtures() {
  std::vector<Fixture> out;
  out.push_back({"free2", "free group of rank 2", free_group_spec(2), std::nullopt});
  for (std::size_t n = 1; n <= 3; ++n)
    out.push_back({"z" + std::to_string(n), "free abelian group of rank " + std::to_string(n) + ", unit generators",
                   free_abelian_spec(n), std::nullopt});
  out.push_back({"z2_nine", "Z^2 over the nine products of {1,a,A} and {1,b,B}", z2_nine_spec(), std::nullopt});
  out.push_back({"artin3", "dihedral Artin group aba = bab", dihedral_artin_spec(3), ReportedRun{3, 7, 28}});
  out.push_back({"artin4", "dihedral Artin group abab = baba", dihedral_artin_spec(4), ReportedRun{4, 10, 61}});
  out.push_back({"artin5", "dihedral Artin group ababa = babab", dihedral_artin_spec(5), ReportedRun{5, 12, 115}});
  out.push_back({"example1", "<a,b,t,u,v | ab=ba, t^2=1, tat=b, at=u, bt=v>", example1_spec(), ReportedRun{3, 4, 10}});
  out.push_back({"example5", "Coxeter group (ab)^3=(bc)^3=(cd)^3=(da)^3=(ac)^2=(bd)^2=1", example5_spec(),
                 ReportedRun{6, 14, 125}});
  out.push_back({"z2_free_z", "(<a> x <b>) * <c>", z2_free_z_spec(), std::nullopt});
  return out;
}

Fixture fixture(const std::string& name) {
  std::string key = name;
  if (key == "example2") key = "artin3";
  if (key == "example3") key = "artin4";
  if (key == "example4") key = "artin5";
  for (auto& f : fixtures())
    if (f.name == key) return f;
  throw InputError("unknown fixture '" + name + "'");
}

}  // namespace geo
