#include <algorithm>
#include <set>

#include "geo/automata_io.hpp"
#include "geo/groups.hpp"
#include "json_util.hpp"

namespace geo {

using detail::Json;

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw InputError(what);
}

void check_letter(const Alphabet& a, Letter x, const char* what) {
  require(x == kNoLetter || x < a.size(), std::string(what) + ": component letter out of range");
}

}  // namespace

void GroupSpec::validate() const {
  const Alphabet& a = alphabet;
  const std::size_t n = a.size();
  require(n > 0, "group alphabet is empty");
  switch (backend) {
    case Backend::free:
      for (Letter x = 0; x < n; ++x)
        require(a.is_identity(x) || a.inverse(x) != x, "free group: '" + a.name(x) + "' is its own inverse");
      break;
    case Backend::lattice: {
      require(dimension > 0, "lattice: dimension must be positive");
      require(vectors.size() == n, "lattice: one vector per symbol required");
      for (const auto& v : vectors) require(v.size() == dimension, "lattice: vector of wrong dimension");
      require(!swap || dimension == 2, "lattice: swap needs dimension 2");
      require(!swap || twist.size() == n, "lattice: one twist flag per symbol required");
      for (Letter x = 0; x < n; ++x) {
        const bool tx = swap && twist[x];
        const Letter y = a.inverse(x);
        if (a.is_identity(x)) {
          require(!tx && std::all_of(vectors[x].begin(), vectors[x].end(), [](auto c) { return c == 0; }),
                  "lattice: identity symbol must be the zero vector");
          continue;
        }
        require(tx == (swap && twist[y]), "lattice: inverse symbols must share the twist flag");
        // (v, f)(w, f) = (v + sigma^f w, 0) must vanish
        for (std::size_t i = 0; i < dimension; ++i) {
          const std::size_t j = tx ? dimension - 1 - i : i;
          require(vectors[x][i] + vectors[y][j] == 0, "lattice: '" + a.name(y) + "' is not inverse to '" + a.name(x) + "'");
        }
      }
      break;
    }
    case Backend::dihedral_artin: {
      require(m >= 2, "dihedral_artin: m must be at least 2");
      require(generators.size() == 2 && generators[0] != generators[1], "dihedral_artin: two generators required");
      for (Letter g : generators) {
        require(g < n && !a.is_identity(g) && a.inverse(g) != g, "dihedral_artin: bad generator");
      }
      for (Letter x = 0; x < n; ++x) {
        if (a.is_identity(x)) continue;
        bool ok = false;
        for (Letter g : generators) ok = ok || x == g || x == a.inverse(g);
        require(ok, "dihedral_artin: '" + a.name(x) + "' is neither a generator nor an inverse");
      }
      break;
    }
    case Backend::coxeter: {
      const std::size_t r = generators.size();
      require(r > 0, "coxeter: no generators");
      require(coxeter.size() == r, "coxeter: matrix size must match the generators");
      std::set<Letter> gens(generators.begin(), generators.end());
      require(gens.size() == r, "coxeter: repeated generator");
      for (Letter x = 0; x < n; ++x) {
        if (a.is_identity(x)) continue;
        require(gens.count(x), "coxeter: '" + a.name(x) + "' is not a generator");
        require(a.inverse(x) == x, "coxeter: generator '" + a.name(x) + "' must be its own inverse");
      }
      for (std::size_t i = 0; i < r; ++i) {
        require(coxeter[i].size() == r, "coxeter: matrix must be square");
        for (std::size_t j = 0; j < r; ++j) {
          require(coxeter[i][j] == coxeter[j][i], "coxeter: matrix must be symmetric");
          if (i == j) require(coxeter[i][j] == 1, "coxeter: diagonal entries must be 1");
          else require(coxeter[i][j] == 0 || coxeter[i][j] >= 2, "coxeter: off-diagonal entries must be >= 2 or 0");
        }
      }
      break;
    }
    case Backend::direct_product:
    case Backend::free_product: {
      require(left && right, "product: both factors required");
      left->validate();
      right->validate();
      require(components.size() == n, "product: one component pair per symbol required");
      const bool free = backend == Backend::free_product;
      for (Letter x = 0; x < n; ++x) {
        auto [l, r] = components[x];
        check_letter(left->alphabet, l, "product");
        check_letter(right->alphabet, r, "product");
        if (free) require(l == kNoLetter || r == kNoLetter, "free product: a symbol may lie in one factor only");
        if (a.is_identity(x)) continue;
        auto [li, ri] = components[a.inverse(x)];
        require((l == kNoLetter ? li == kNoLetter : li == left->alphabet.inverse(l)) &&
                    (r == kNoLetter ? ri == kNoLetter : ri == right->alphabet.inverse(r)),
                "product: components of '" + a.name(a.inverse(x)) + "' are not inverse to those of '" + a.name(x) + "'");
      }
      break;
    }
    case Backend::rewriting_system: {
      for (const auto& r : rules) {
        require(shortlex_less(r.rhs, r.lhs), "rewriting_system: rules must be shortlex-reducing");
        for (Letter x : r.lhs) require(x < n, "rewriting_system: letter out of range");
        for (Letter x : r.rhs) require(x < n, "rewriting_system: letter out of range");
      }
      require(unresolved_critical_pairs(rules).empty(), "rewriting_system: rules are not confluent");
      for (Letter x = 0; x < n; ++x) {
        if (a.is_identity(x)) continue;
        require(rewrite(rules, {x, a.inverse(x)}).empty(),
                "rewriting_system: '" + a.name(x) + a.name(a.inverse(x)) + "' does not reduce to the empty word");
      }
      break;
    }
  }
}

namespace {

Json spec_to_json(const GroupSpec& g) {
  Json j;
  j["format"] = kFormatVersion;
  j["kind"] = "group";
  if (!g.name.empty()) j["name"] = g.name;
  j["alphabet"] = detail::alphabet_to_json(g.alphabet);
  Json b;
  b["type"] = std::string(to_string(g.backend));
  const Alphabet& a = g.alphabet;
  switch (g.backend) {
    case Backend::free: break;
    case Backend::lattice: {
      b["dimension"] = g.dimension;
      Json v = Json::object();
      for (Letter x = 0; x < a.size(); ++x) v[a.name(x)] = g.vectors[x];
      b["vectors"] = v;
      if (g.swap) {
        Json t = Json::array();
        for (Letter x = 0; x < a.size(); ++x)
          if (g.twist[x]) t.push_back(a.name(x));
        b["twist"] = t;
      }
      break;
    }
    case Backend::dihedral_artin:
      b["m"] = g.m;
      b["generators"] = Json::array({a.name(g.generators[0]), a.name(g.generators[1])});
      break;
    case Backend::coxeter: {
      Json gens = Json::array();
      for (Letter x : g.generators) gens.push_back(a.name(x));
      b["generators"] = gens;
      b["matrix"] = g.coxeter;
      break;
    }
    case Backend::direct_product:
    case Backend::free_product: {
      b["left"] = spec_to_json(*g.left);
      b["right"] = spec_to_json(*g.right);
      Json c = Json::object();
      for (Letter x = 0; x < a.size(); ++x) {
        auto [l, r] = g.components[x];
        c[a.name(x)] = Json::array({l == kNoLetter ? Json() : Json(g.left->alphabet.name(l)),
                        r == kNoLetter ? Json() : Json(g.right->alphabet.name(r))});
      }
      b["components"] = c;
      break;
    }
    case Backend::rewriting_system: {
      Json rules = Json::array();
      for (const auto& r : g.rules) rules.push_back(Json::array({detail::word_to_json(a, r.lhs), detail::word_to_json(a, r.rhs)}));
      b["rules"] = rules;
      break;
    }
  }
  j["backend"] = b;
  return j;
}

Backend backend_from_string(const std::string& s) {
  for (Backend b : {Backend::free, Backend::lattice, Backend::dihedral_artin, Backend::coxeter, Backend::direct_product,
                    Backend::free_product, Backend::rewriting_system})
    if (to_string(b) == s) return b;
  throw InputError("unknown group backend '" + s + "'");
}

GroupSpec spec_from_json(const Json& j) {
  if (j.contains("format") && j["format"].get<int>() != kFormatVersion)
    throw InputError("unsupported format version " + j["format"].dump());
  if (j.contains("kind") && j["kind"].get<std::string>() != "group") throw InputError("expected a group spec");
  GroupSpec g;
  if (j.contains("name")) g.name = j["name"].get<std::string>();
  g.alphabet = detail::alphabet_from_json(detail::field(j, "alphabet"));
  const Alphabet& a = g.alphabet;
  const Json& b = detail::field(j, "backend");
  g.backend = backend_from_string(detail::field(b, "type").get<std::string>());
  switch (g.backend) {
    case Backend::free: break;
    case Backend::lattice: {
      g.dimension = detail::field(b, "dimension").get<std::size_t>();
      g.vectors.assign(a.size(), std::vector<std::int64_t>(g.dimension, 0));
      const Json& v = detail::field(b, "vectors");
      for (auto it = v.begin(); it != v.end(); ++it) g.vectors[a.letter(it.key())] = it.value().get<std::vector<std::int64_t>>();
      for (Letter x = 0; x < a.size(); ++x)
        if (!a.is_identity(x) && !v.contains(a.name(x))) throw InputError("lattice: no vector for '" + a.name(x) + "'");
      if (b.contains("twist")) {
        g.swap = true;
        g.twist.assign(a.size(), false);
        for (const auto& t : b["twist"]) g.twist[a.letter(t.get<std::string>())] = true;
      }
      break;
    }
    case Backend::dihedral_artin:
      g.m = detail::field(b, "m").get<unsigned>();
      for (const auto& s : detail::field(b, "generators")) g.generators.push_back(a.letter(s.get<std::string>()));
      break;
    case Backend::coxeter:
      for (const auto& s : detail::field(b, "generators")) g.generators.push_back(a.letter(s.get<std::string>()));
      g.coxeter = detail::field(b, "matrix").get<std::vector<std::vector<unsigned>>>();
      break;
    case Backend::direct_product:
    case Backend::free_product: {
      g.left = std::make_shared<GroupSpec>(spec_from_json(detail::field(b, "left")));
      g.right = std::make_shared<GroupSpec>(spec_from_json(detail::field(b, "right")));
      g.components.assign(a.size(), {kNoLetter, kNoLetter});
      const Json& c = detail::field(b, "components");
      for (Letter x = 0; x < a.size(); ++x) {
        if (!c.contains(a.name(x))) {
          if (a.is_identity(x)) continue;
          throw InputError("product: no components for '" + a.name(x) + "'");
        }
        const Json& p = c[a.name(x)];
        if (!p.is_array() || p.size() != 2) throw InputError("product: components must be a pair");
        if (!p[0].is_null()) g.components[x].first = g.left->alphabet.letter(p[0].get<std::string>());
        if (!p[1].is_null()) g.components[x].second = g.right->alphabet.letter(p[1].get<std::string>());
      }
      break;
    }
    case Backend::rewriting_system:
      for (const auto& r : detail::field(b, "rules")) {
        if (!r.is_array() || r.size() != 2) throw InputError("rewriting_system: a rule is a pair of words");
        g.rules.push_back({detail::word_from_json(a, r[0]), detail::word_from_json(a, r[1])});
      }
      break;
  }
  return g;
}

}  // namespace

std::string to_json(const GroupSpec& g) { return spec_to_json(g).dump(2) + "\n"; }

GroupSpec group_from_json(std::string_view text) {
  Json j = detail::parse_json(text);
  try {
    GroupSpec g = spec_from_json(j);
    g.validate();
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed group spec: ") + e.what());
  }
}

}  // namespace geo
