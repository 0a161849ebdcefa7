// geo: command-line front end.
// Exit codes: 0 verified / true, 1 refuted / false, 2 unknown at budget, 3 bad input.

#include <filesystem>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "geo/automata_io.hpp"
#include "geo/geodesy.hpp"
#include "geo/localtest.hpp"
#include "geo/semigroups.hpp"
#include "geo/tbinfer.hpp"
#include "json.hpp"

using namespace geo;
using Json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kRefuted = 1, kUnknown = 2, kBadInput = 3 };

int exit_for(Truth t) { return t == Truth::yes ? kOk : t == Truth::no ? kRefuted : kUnknown; }

Json truth_json(Truth t) {
  if (t == Truth::unknown) return "unknown";
  return t == Truth::yes;
}

Json words_json(const Alphabet& a, const std::vector<Word>& ws) {
  Json arr = Json::array();
  for (const Word& w : ws) arr.push_back(a.format(w));
  return arr;
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) std::cout << text;
  else write_file(out, text);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

struct Common {
  std::string out;
  std::uint64_t seed = 1;
};

GroupSpec load_group(const std::string& path, const std::string& fixture_name) {
  if (!fixture_name.empty()) return fixture(fixture_name).spec;
  if (path.empty()) throw InputError("one of --group or --fixture is required");
  return group_from_json(read_file(path));
}

Dfa load_dfa(const std::string& path) { return dfa_from_json(read_file(path)); }

Json lt_verdict_json(const Alphabet& a, std::size_t k, const LtVerdict& v) {
  return {{"k", k}, {"holds", truth_json(v.holds)}, {"witness", words_json(a, v.witness)},
          {"detail", v.detail}, {"explored", v.explored}};
}

LtMethod parse_method(const std::string& m) {
  if (m == "classifier") return LtMethod::classifier;
  if (m == "semigroup") return LtMethod::semigroup;
  if (m == "both") return LtMethod::both;
  throw InputError("unknown method '" + m + "'");
}

std::vector<TbPoint> parse_schedule(const std::string& s, std::size_t max_iter, const std::optional<ReportedRun>& seed,
                                    std::vector<TbPoint>& seeds) {
  if (s == "default") return default_schedule(max_iter);
  if (s == "seeded") {
    if (!seed) throw InputError("--tb-schedule seeded needs a fixture with a reported run");
    seeds = seeded_schedule(*seed);
    return default_schedule(max_iter);
  }
  // "i:k,i:k,..."
  std::vector<TbPoint> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos) throw InputError("bad schedule entry '" + item + "' (want i:k)");
    try {
      out.emplace_back(std::stoul(item.substr(0, colon)), std::stoul(item.substr(colon + 1)));
    } catch (const std::logic_error&) {
      throw InputError("bad schedule entry '" + item + "' (want i:k)");
    }
  }
  if (out.empty()) throw InputError("empty schedule");
  return out;
}

// ---- subcommands ----------------------------------------------------------

struct PipelineArgs {
  std::string group, fixture, machine, schedule = "default", save_dir;
  std::size_t max_iter = 8;
  std::optional<std::size_t> crosscheck_override;
};

int run_pipeline(const PipelineArgs& a, const Common& c) {
  PipelineConfig cfg;
  std::optional<ReportedRun> reported;
  GroupSpec spec;
  if (!a.fixture.empty()) {
    Fixture f = fixture(a.fixture);
    cfg = fixture_config(f);
    reported = f.reported;
    spec = f.spec;
  } else {
    spec = load_group(a.group, "");
  }
  cfg.max_iter = a.max_iter;
  if (a.crosscheck_override) cfg.crosscheck_len = *a.crosscheck_override;
  std::vector<TbPoint> seeds = cfg.seeds;
  cfg.schedule = parse_schedule(a.schedule, a.max_iter, reported, seeds);
  cfg.seeds = seeds;
  if (!a.machine.empty()) cfg.machine = wdiff_from_json(read_file(a.machine));

  GwReport r = pipeline(spec, cfg);
  emit(to_json(r), c.out);
  if (!a.save_dir.empty()) {
    std::filesystem::create_directories(a.save_dir);
    const std::filesystem::path dir(a.save_dir);
    if (r.machine) write_file((dir / "d.json").string(), to_json(*r.machine));
    if (r.w) write_file((dir / "w.json").string(), to_json(*r.w));
    if (r.gw) write_file((dir / "gw.json").string(), to_json(*r.gw));
  }
  if (r.verified()) return kOk;
  // a candidate failing the theorem or the oracle is not a refutation of anything
  return kUnknown;
}

int run_verify(const std::string& gw_path, const std::string& w_path, const std::string& d_path, const Common& c) {
  Dfa gw = load_dfa(gw_path), w = load_dfa(w_path);
  WordDifferenceMachine d = wdiff_from_json(read_file(d_path));
  GwVerdict v = verify_gw(gw, w, d.automaton);
  const Alphabet& a = gw.alphabet();
  auto word = [&](const std::optional<Word>& x) { return x ? Json(a.format(*x)) : Json(nullptr); };
  auto pair = [&](const std::optional<std::pair<Word, Word>>& x) {
    return x ? Json::array({a.format(x->first), a.format(x->second)}) : Json(nullptr);
  };
  Json j;
  j["format"] = 1;
  j["passed"] = v.passed();
  j["prefix_closed"] = {{"holds", v.prefix_closed()}, {"witness", word(v.prefix_closed_witness)}};
  j["contains_w"] = {{"holds", v.contains_w()}, {"witness", word(v.contains_w_witness)}};
  j["closed_under_partners"] = {{"holds", v.closed_under_partners()}, {"witness", pair(v.equal_length_witness)}};
  j["no_shorter_partner"] = {{"holds", v.no_shorter_partner()}, {"witness", pair(v.shorter_partner_witness)}};
  emit(dump(j), c.out);
  return v.passed() ? kOk : kRefuted;
}

int run_lt(const std::string& path, std::optional<std::size_t> k, std::optional<std::size_t> search,
           const std::string& method, const Common& c) {
  Dfa d = load_dfa(path);
  const Alphabet& a = d.alphabet();
  const LtMethod m = parse_method(method);
  Json j;
  j["format"] = 1;
  if (k) {
    LtVerdict v;
    if (m == LtMethod::classifier) {
      v = is_k_testable(d, *k);
    } else {
      v = is_k_testable_semigroup(d, *k);
      if (m == LtMethod::both) {
        LtVerdict w = is_k_testable(d, *k);
        j["classifier"] = lt_verdict_json(a, *k, w);
        if (v.holds != Truth::unknown && w.holds != Truth::unknown && v.holds != w.holds)
          throw Error("deciders disagree at k = " + std::to_string(*k));
        if (v.holds == Truth::unknown) v = w;
      }
    }
    j["verdict"] = lt_verdict_json(a, *k, v);
    j["budget_exhausted"] = v.holds == Truth::unknown;
    emit(dump(j), c.out);
    return exit_for(v.holds);
  }
  if (search) {
    MinKResult r = min_k(d, *search, m);
    j["min_k"] = r.k ? Json(*r.k) : Json(nullptr);
    j["exact"] = r.exact;
    Json per = Json::array();
    for (std::size_t i = 0; i < r.per_k.size(); ++i) per.push_back(lt_verdict_json(a, i + 1, r.per_k[i]));
    j["per_k"] = per;
    emit(dump(j), c.out);
    if (r.k) return r.exact ? kOk : kUnknown;
    return kUnknown;  // none up to the bound says nothing about larger k
  }
  SemigroupVerdict v = is_locally_testable(d);
  j["locally_testable"] = truth_json(v.holds);
  j["witness"] = words_json(a, v.witness);
  j["reason"] = v.reason;
  emit(dump(j), c.out);
  return exit_for(v.holds);
}

int run_semigroup(const std::string& path, const std::string& report, const Common& c) {
  Dfa d = load_dfa(path);
  const Alphabet& a = d.alphabet();
  TransitionSemigroup s(d);
  Json j;
  j["format"] = 1;
  j["size"] = s.size();
  Json verdicts = Json::object(), witnesses = Json::object();
  Truth all = Truth::yes;
  std::stringstream in(report);
  std::string item;
  while (std::getline(in, item, ',')) {
    SemigroupVerdict v;
    if (item == "idempotent") v = is_idempotent(s);
    else if (item == "commutative") v = is_commutative(s);
    else if (item == "aperiodic") v = is_aperiodic(s);
    else if (item == "locally-ic") v = is_locally_idempotent_commutative(s);
    else throw InputError("unknown semigroup property '" + item + "'");
    verdicts[item] = truth_json(v.holds);
    witnesses[item] = words_json(a, v.witness);
    if (v.holds == Truth::no) all = Truth::no;
    else if (v.holds == Truth::unknown && all == Truth::yes) all = Truth::unknown;
  }
  j["verdicts"] = verdicts;
  j["witnesses"] = witnesses;
  emit(dump(j), c.out);
  return exit_for(all);
}

int run_enumerate(const std::string& group, const std::string& fx, const std::string& automaton, std::size_t maxlen,
                  const Common& c) {
  std::vector<Word> words;
  Alphabet a;
  if (!automaton.empty()) {
    Dfa d = load_dfa(automaton);
    a = d.alphabet();
    words = enumerate(d, maxlen);
  } else {
    GeodesicOracle o(load_group(group, fx));
    a = o.alphabet();
    words = o.geodesic_words(maxlen);
  }
  Json j;
  j["format"] = 1;
  j["max_len"] = maxlen;
  j["count"] = words.size();
  j["words"] = words_json(a, words);
  emit(dump(j), c.out);
  return kOk;
}

int run_product(const std::string& left, const std::string& right, const Common& c) {
  emit(to_json(product_geodesics(load_dfa(left), load_dfa(right))), c.out);
  return kOk;
}

int run_infer(const std::string& path, std::size_t k, const Common& c) {
  Dfa m = load_dfa(path);
  TbResult r = tb_merge(m, k);
  Json j;
  j["format"] = 1;
  j["k"] = k;
  if (r.automaton) {
    j["result"] = "ok";
    j["classes"] = r.classes;
    j["states"] = r.automaton->state_count();
    j["automaton"] = Json::parse(to_json(*r.automaton));
  } else {
    const TbAbort& ab = *r.abort;
    j["result"] = "abort";
    j["abort"] = {{"kind", std::string(to_string(ab.kind))},
                  {"s", ab.s},
                  {"t", ab.t},
                  {"detail", ab.describe(canonical(m).alphabet())}};
    if (ab.kind == TbAbort::Kind::not_transitive) j["abort"]["r"] = ab.r;
    if (ab.kind == TbAbort::Kind::inconsistent_transitions) j["abort"]["letter"] = m.alphabet().name(ab.letter);
  }
  emit(dump(j), c.out);
  return r.automaton ? kOk : kRefuted;
}

int run_fixtures(const std::string& run, const std::string& write_dir, const Common& c) {
  if (!run.empty()) {
    Fixture f = fixture(run);
    GwReport r = pipeline(f.spec, fixture_config(f));
    emit(to_json(r), c.out);
    return r.verified() ? kOk : kUnknown;
  }
  Json list = Json::array();
  for (const auto& f : fixtures()) {
    Json e{{"name", f.name}, {"description", f.description}};
    if (f.reported) e["reported"] = {{"i", f.reported->i}, {"k", f.reported->k}, {"states", f.reported->states}};
    list.push_back(e);
    if (!write_dir.empty()) {
      std::filesystem::create_directories(write_dir);
      write_file((std::filesystem::path(write_dir) / (f.name + ".json")).string(), to_json(f.spec));
    }
  }
  emit(dump(Json{{"format", 1}, {"fixtures", list}}), c.out);
  return kOk;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"geodesic automata and local testability"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", common.out, "output file (default stdout)");
    sub->add_option("--seed", common.seed, "random seed (reports are deterministic)");
  };

  PipelineArgs pa;
  auto* pipe = app.add_subcommand("pipeline", "construct and verify a geodesic automaton");
  pipe->add_option("--group", pa.group, "group spec JSON");
  pipe->add_option("--fixture", pa.fixture, "bundled fixture name");
  pipe->add_option("--d", pa.machine, "word-difference machine JSON (skips synthesis)");
  pipe->add_option("--max-iter", pa.max_iter);
  pipe->add_option("--tb-schedule", pa.schedule, "default | seeded | i:k,i:k,...");
  pipe->add_option("--crosscheck-len", pa.crosscheck_override);
  pipe->add_option("--save-automata", pa.save_dir, "directory for d.json, w.json, gw.json");
  add_common(pipe);

  std::string gw_path, w_path, d_path;
  auto* verify = app.add_subcommand("verify", "check the four sufficient conditions");
  verify->add_option("--gw", gw_path)->required();
  verify->add_option("--w", w_path)->required();
  verify->add_option("--d", d_path)->required();
  add_common(verify);

  std::string automaton, method = "semigroup";
  std::optional<std::size_t> k_opt, search_opt;
  auto* lt = app.add_subcommand("lt", "local testability");
  lt->add_option("--automaton", automaton)->required();
  auto* kflag = lt->add_option("--k", k_opt);
  lt->add_option("--search-max-k", search_opt)->excludes(kflag);
  lt->add_option("--method", method)->check(CLI::IsMember({"classifier", "semigroup", "both"}));
  add_common(lt);

  std::string report = "idempotent,commutative,aperiodic,locally-ic";
  auto* sg = app.add_subcommand("semigroup", "syntactic semigroup properties");
  sg->add_option("--automaton", automaton)->required();
  sg->add_option("--report", report);
  add_common(sg);

  std::string group, fx;
  std::size_t maxlen = 6;
  auto* en = app.add_subcommand("enumerate", "geodesic words of a group, or words of an automaton");
  en->add_option("--group", group);
  en->add_option("--fixture", fx);
  en->add_option("--automaton", automaton);
  en->add_option("--maxlen", maxlen);
  add_common(en);

  std::string left, right;
  auto* prod = app.add_subcommand("product", "geodesics of a direct product");
  prod->add_option("--left", left)->required();
  prod->add_option("--right", right)->required();
  add_common(prod);

  std::size_t k = 0;
  auto* infer = app.add_subcommand("infer", "state merging at a given k");
  infer->add_option("--automaton", automaton)->required();
  infer->add_option("--k", k)->required();
  add_common(infer);

  std::string fx_run, fx_dir;
  auto* fixt = app.add_subcommand("fixtures", "list, write or run bundled groups");
  fixt->add_option("--run", fx_run);
  fixt->add_option("--write", fx_dir, "write every spec as <name>.json");
  add_common(fixt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    if (*pipe) return run_pipeline(pa, common);
    if (*verify) return run_verify(gw_path, w_path, d_path, common);
    if (*lt) return run_lt(automaton, k_opt, search_opt, method, common);
    if (*sg) return run_semigroup(automaton, report, common);
    if (*en) return run_enumerate(group, fx, automaton, maxlen, common);
    if (*prod) return run_product(left, right, common);
    if (*infer) return run_infer(automaton, k, common);
    if (*fixt) return run_fixtures(fx_run, fx_dir, common);
  } catch (const InputError& e) {
    std::cerr << "geo: input error: " << e.what() << "\n";
    return kBadInput;
  } catch (const ResourceError& e) {
    std::cerr << "geo: budget exhausted: " << e.what() << "\n";
    return kUnknown;
  } catch (const Error& e) {
    std::cerr << "geo: " << e.what() << "\n";
    return kUnknown;
  }
  return kBadInput;
}

int main(int argc, char** argv) { return run(argc, argv); }
