#include <fstream>
#include <sstream>

#include "geo/automata_io.hpp"
#include "json_util.hpp"

namespace geo {

namespace detail {

Json alphabet_to_json(const Alphabet& a) {
  Json arr = Json::array();
  for (const auto& s : a.symbols())
    arr.push_back(Json{{"symbol", s.name}, {"inverse", s.inverse}, {"identity", s.identity}});
  return arr;
}

Alphabet alphabet_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("alphabet must be an array");
  std::vector<SymbolSpec> specs;
  for (const auto& s : j) {
    SymbolSpec spec;
    spec.name = field(s, "symbol").get<std::string>();
    spec.inverse = s.contains("inverse") ? s["inverse"].get<std::string>() : spec.name;
    spec.identity = s.contains("identity") && s["identity"].get<bool>();
    specs.push_back(std::move(spec));
  }
  return Alphabet(specs);
}

Json word_to_json(const Alphabet& a, const Word& w) {
  Json arr = Json::array();
  for (Letter x : w) arr.push_back(a.name(x));
  return arr;
}

Word word_from_json(const Alphabet& a, const Json& j) {
  if (j.is_string()) return a.parse(j.get<std::string>());
  if (!j.is_array()) throw InputError("word must be a string or an array of symbols");
  Word w;
  for (const auto& s : j) w.push_back(a.letter(s.get<std::string>()));
  return w;
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  return j[key];
}

}  // namespace detail

using detail::Json;

namespace {

void check_format(const Json& j, const char* kind) {
  if (j.contains("format") && j["format"].get<int>() != kFormatVersion)
    throw InputError("unsupported format version " + j["format"].dump());
  if (j.contains("kind") && j["kind"].get<std::string>() != kind)
    throw InputError(std::string("expected an automaton of kind '") + kind + "'");
}

}  // namespace

std::string to_json(const Dfa& d) {
  Json j;
  j["format"] = kFormatVersion;
  j["kind"] = "dfa";
  j["alphabet"] = detail::alphabet_to_json(d.alphabet());
  j["states"] = d.state_count();
  j["start"] = d.start();
  Json acc = Json::array();
  for (State q = 0; q < d.state_count(); ++q)
    if (d.accepting(q)) acc.push_back(q);
  j["accepting"] = acc;
  Json rows = Json::array();
  for (State q = 0; q < d.state_count(); ++q) {
    Json row = Json::array();
    for (std::size_t x = 0; x < d.letter_count(); ++x) row.push_back(d.next(q, static_cast<Letter>(x)));
    rows.push_back(row);
  }
  j["transitions"] = rows;
  return j.dump() + "\n";
}

Dfa dfa_from_json(std::string_view text) {
  Json j = detail::parse_json(text);
  try {
    check_format(j, "dfa");
    Alphabet a = detail::alphabet_from_json(detail::field(j, "alphabet"));
    auto n = detail::field(j, "states").get<std::size_t>();
    auto start = detail::field(j, "start").get<State>();
    std::vector<bool> acc(n, false);
    for (const auto& q : detail::field(j, "accepting")) {
      auto s = q.get<std::size_t>();
      if (s >= n) throw InputError("accepting state out of range");
      acc[s] = true;
    }
    const auto& rows = detail::field(j, "transitions");
    if (rows.size() != n) throw InputError("transitions must have one row per state");
    std::vector<State> table;
    for (const auto& row : rows) {
      if (row.size() != a.size()) throw InputError("transition row must have one target per symbol");
      for (const auto& t : row) table.push_back(t.get<State>());
    }
    return Dfa(std::move(a), n, start, std::move(acc), std::move(table));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed automaton: ") + e.what());
  }
}

std::string to_json(const PairAutomaton& p, const std::vector<std::string>* labels) {
  const Alphabet& a = p.alphabet();
  auto sym = [&](Letter x) { return x == kPad ? Json(nullptr) : Json(a.name(x)); };
  Json j;
  j["format"] = kFormatVersion;
  j["kind"] = "pair";
  j["alphabet"] = detail::alphabet_to_json(a);
  j["states"] = p.state_count();
  j["start"] = p.start();
  Json acc = Json::array();
  for (State q = 0; q < p.state_count(); ++q)
    if (p.accepting(q)) acc.push_back(q);
  j["accepting"] = acc;
  Json rows = Json::array();
  for (State q = 0; q < p.state_count(); ++q) {
    Json row = Json::array();
    for (const auto& e : p.edges(q)) row.push_back(Json{{"label", Json::array({sym(e.left), sym(e.right)})}, {"target", e.target}});
    rows.push_back(row);
  }
  j["transitions"] = rows;
  if (labels) j["labels"] = *labels;
  return j.dump() + "\n";
}

PairAutomaton pair_from_json(std::string_view text, std::vector<std::string>* labels) {
  Json j = detail::parse_json(text);
  try {
    check_format(j, "pair");
    Alphabet a = detail::alphabet_from_json(detail::field(j, "alphabet"));
    auto n = detail::field(j, "states").get<std::size_t>();
    auto start = detail::field(j, "start").get<State>();
    std::vector<bool> acc(n, false);
    for (const auto& q : detail::field(j, "accepting")) {
      auto s = q.get<std::size_t>();
      if (s >= n) throw InputError("accepting state out of range");
      acc[s] = true;
    }
    const auto& rows = detail::field(j, "transitions");
    if (rows.size() != n) throw InputError("transitions must have one row per state");
    auto sym = [&](const Json& s) -> Letter { return s.is_null() ? kPad : a.letter(s.get<std::string>()); };
    std::vector<std::vector<PairEdge>> edges;
    for (const auto& row : rows) {
      std::vector<PairEdge> out;
      for (const auto& e : row) {
        const auto& label = detail::field(e, "label");
        if (!label.is_array() || label.size() != 2) throw InputError("pair label must be [left, right]");
        out.push_back({sym(label[0]), sym(label[1]), detail::field(e, "target").get<State>()});
      }
      edges.push_back(std::move(out));
    }
    if (labels) {
      labels->clear();
      if (j.contains("labels")) *labels = j["labels"].get<std::vector<std::string>>();
    }
    return PairAutomaton(std::move(a), n, start, std::move(acc), std::move(edges));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed pair automaton: ") + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << contents;
}

}  // namespace geo
