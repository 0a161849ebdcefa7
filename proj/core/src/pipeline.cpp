#include <algorithm>
#include <cstdio>
#include <set>
#include <unordered_map>

#include "geo/automata_io.hpp"
#include "geo/geodesy.hpp"
#include "geo/localtest.hpp"
#include "geo/semigroups.hpp"
#include "geo/tbinfer.hpp"
#include "json_util.hpp"

#ifndef GEO_VERSION
#define GEO_VERSION "dev"
#endif

namespace geo {

CrossCheck oracle_crosscheck(GeodesicOracle& oracle, const Dfa& gw, std::size_t length) {
  require_same_alphabet(oracle.alphabet(), gw.alphabet(), "oracle_crosscheck");
  CrossCheck c;
  c.length = length;
  c.gw_counts = count_by_length(gw, length);
  c.geodesic_counts = oracle.geodesic_counts(length);
  oracle.ensure_radius(length);

  // paths (state, ball element) along which every step moves one further out
  const std::uint64_t q_count = gw.state_count();
  const auto dead = dead_states(gw);
  const std::uint32_t root = *oracle.find(oracle.group().identity());
  std::unordered_map<std::uint64_t, std::uint64_t> layer{{std::uint64_t(root) * q_count + gw.start(), 1}}, next;
  c.common_counts.assign(length + 1, 0);
  for (std::size_t n = 0;; ++n) {
    for (const auto& [key, ways] : layer)
      if (gw.accepting(static_cast<State>(key % q_count))) c.common_counts[n] += ways;
    if (n == length) break;
    next.clear();
    for (const auto& [key, ways] : layer) {
      const auto g = static_cast<std::uint32_t>(key / q_count);
      const auto q = static_cast<State>(key % q_count);
      for (Letter x = 0; x < gw.letter_count(); ++x) {
        const State t = gw.next(q, x);
        if (dead[t]) continue;
        const std::uint32_t h = oracle.neighbour(g, x);
        if (oracle.distance(h) != n + 1) continue;
        next[std::uint64_t(h) * q_count + t] += ways;
      }
    }
    layer.swap(next);
  }

  // witnesses at the shortest bad length (slow path)
  for (std::size_t n = 0; n <= length && !c.non_geodesic && !c.missing; ++n) {
    if (c.common_counts[n] < c.gw_counts[n])
      for_each_accepted(gw, n, [&](const Word& w) {
        if (!c.non_geodesic && w.size() == n && !oracle.is_geodesic(w)) c.non_geodesic = w;
      });
    if (c.common_counts[n] < c.geodesic_counts[n])
      oracle.for_each_geodesic(n, [&](const Word& w) {
        if (!c.missing && w.size() == n && !gw.accepts(w)) c.missing = w;
      });
  }
  return c;
}

std::vector<TbPoint> default_schedule(std::size_t max_iter) {
  std::vector<TbPoint> s;
  for (std::size_t i = 2; i <= max_iter; ++i)
    for (std::size_t k = 4; k <= 14; ++k) s.emplace_back(i, k);
  std::stable_sort(s.begin(), s.end(), [](TbPoint a, TbPoint b) {
    return a.first + a.second != b.first + b.second ? a.first + a.second < b.first + b.second : a.first < b.first;
  });
  return s;
}

std::vector<TbPoint> seeded_schedule(const ReportedRun& r) {
  std::vector<TbPoint> s;
  for (std::size_t i = 1; i <= r.i; ++i) s.emplace_back(i, r.k);
  return s;
}

PipelineConfig fixture_config(const Fixture& f) {
  PipelineConfig c;
  if (f.reported) c.seeds = seeded_schedule(*f.reported);
  if (f.spec.backend == Backend::dihedral_artin) c.crosscheck_len = 12;
  return c;
}

namespace {

std::string digest(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : text) h = (h ^ ch) * 0x100000001b3ull;
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string failed_conditions(const GwVerdict& v) {
  std::string s;
  auto add = [&](bool ok, const char* name) {
    if (!ok) s += s.empty() ? name : std::string(",") + name;
  };
  add(v.prefix_closed(), "(i)");
  add(v.contains_w(), "(ii)");
  add(v.closed_under_partners(), "(iii)");
  add(v.no_shorter_partner(), "(iv)");
  return s;
}

// One machine's run over the schedule. Returns true when a failure hints at
// an incomplete machine (a candidate failed the theorem or the oracle).
class ScheduleRun {
 public:
  ScheduleRun(GeodesicOracle& oracle, const PipelineConfig& cfg, GwReport& r, std::size_t bound)
      : oracle_(oracle), cfg_(cfg), r_(r), bound_(bound), d_(r.machine->automaton) {
    gw_.push_back(*r.w);
    r_.trace_states = {r.w->state_count()};
    r_.trace_live = {live_state_count(*r.w)};
    r_.converged = false;
  }

  bool run(const std::vector<TbPoint>& schedule) {
    std::set<TbPoint> done;
    for (auto [i, k] : schedule) {
      if (i > cfg_.max_iter) continue;
      const Dfa* m = get(i);
      if (r_.verified() || oracle_exhausted_) return false;  // settled on the way
      if (!m) continue;
      const std::size_t used = std::min(i, gw_.size() - 1);
      if (!done.insert({used, k}).second) continue;
      CandidateOutcome c{bound_, used, k, "", "", 0};
      TbResult tb = tb_merge(*m, k);
      if (!tb.automaton) {
        c.outcome = "tb-abort";
        c.detail = std::string(to_string(tb.abort->kind)) + ": " + tb.abort->describe(m->alphabet());
        r_.candidates.push_back(c);
        continue;
      }
      if (evaluate(*tb.automaton, c) || oracle_exhausted_) return false;
    }
    return suspicious_;
  }

 private:
  // GW_i, computed on demand; nullptr past the budget.
  const Dfa* get(std::size_t i) {
    while (gw_.size() <= i && !r_.converged && !exhausted_) {
      const std::size_t n = gw_.size();
      std::optional<Dfa> next;
      try {
        next = gw_iterate(d_, gw_.back(), cfg_.max_states);
      } catch (const ResourceError& e) {
        exhausted_ = true;
        r_.candidates.push_back({bound_, n, 0, "budget", "GW_" + std::to_string(n) + ": " + e.what(), 0});
        break;
      }
      if (auto lost = shortest_accepted(difference(gw_.back(), *next))) {
        // the iteration only grows with a machine satisfying the axioms
        exhausted_ = suspicious_ = true;
        r_.candidates.push_back({bound_, n, 0, "theorem-failed",
                                 "GW_" + std::to_string(n) + " lost '" + d_.alphabet().format(*lost) + "'", 0});
        break;
      }
      const bool same = equivalent(gw_.back(), *next);
      r_.trace_states.push_back(next->state_count());
      r_.trace_live.push_back(live_state_count(*next));
      gw_.push_back(std::move(*next));
      if (same) {
        r_.converged = true;
        CandidateOutcome c{bound_, n, 0, "", "", 0};
        evaluate(gw_.back(), c);
      }
    }
    if (i < gw_.size()) return &gw_[i];
    return r_.converged ? &gw_.back() : nullptr;
  }

  bool evaluate(const Dfa& candidate, CandidateOutcome c) {
    c.states = live_state_count(candidate);
    GwVerdict v = verify_gw(candidate, *r_.w, d_);
    if (!v.passed()) {
      suspicious_ = true;
      c.outcome = "theorem-failed";
      c.detail = failed_conditions(v);
      r_.candidates.push_back(c);
      return false;
    }
    CrossCheck x;
    try {
      x = oracle_crosscheck(oracle_, candidate, cfg_.crosscheck_len);
    } catch (const ResourceError& e) {
      c.outcome = "budget";
      c.detail = std::string("cross-check: ") + e.what();
      r_.candidates.push_back(c);
      r_.gw = candidate;
      r_.i = c.i;
      r_.k = c.k;
      r_.verdict = v;
      r_.theorem_verified = true;
      oracle_exhausted_ = true;
      return false;
    }
    if (!x.exact()) {
      suspicious_ = true;
      c.outcome = "crosscheck-failed";
      const Alphabet& a = candidate.alphabet();
      c.detail = x.non_geodesic ? "accepts non-geodesic '" + a.format(*x.non_geodesic) + "'"
                 : x.missing    ? "rejects geodesic '" + a.format(*x.missing) + "'"
                                : "count mismatch";
      r_.candidates.push_back(c);
      return false;
    }
    c.outcome = "verified";
    r_.candidates.push_back(c);
    r_.gw = candidate;
    r_.i = c.i;
    r_.k = c.k;
    r_.verdict = v;
    r_.crosscheck = x;
    r_.theorem_verified = r_.oracle_corroborated = true;
    return true;
  }

  GeodesicOracle& oracle_;
  const PipelineConfig& cfg_;
  GwReport& r_;
  std::size_t bound_;
  const PairAutomaton& d_;
  std::vector<Dfa> gw_;
  bool exhausted_ = false;
  bool oracle_exhausted_ = false;
  bool suspicious_ = false;
};

void classify(GwReport& r, const PipelineConfig& cfg) {
  const Dfa& gw = *r.gw;
  try {
    TransitionSemigroup s(gw, cfg.semigroup_elements);
    r.semigroup_size = s.size();
    r.aperiodic = is_aperiodic(s).holds;
    SemigroupVerdict lt = is_locally_idempotent_commutative(s);
    r.locally_testable = lt.holds;
    r.lt_detail = lt.reason;
  } catch (const ResourceError& e) {
    r.lt_detail = std::string("syntactic semigroup: ") + e.what();
    return;
  }
  if (r.locally_testable == Truth::no) {
    r.min_k_exact = true;
    return;
  }
  MinKResult mk = min_k(gw, cfg.lt_max_k, LtMethod::semigroup, kDefaultProfileBudget,
                        SemigroupBudget{cfg.semigroup_elements, kDefaultWorkBudget});
  r.min_k = mk.k;
  r.min_k_exact = mk.exact && mk.k.has_value();
}

}  // namespace

GwReport pipeline(GeodesicOracle& oracle, const PipelineConfig& cfg) {
  GwReport r;
  const GroupSpec& spec = oracle.group().spec();
  r.group = spec.name;
  r.digest = digest(to_json(spec));
  {
    std::string c = "max_iter=" + std::to_string(cfg.max_iter) + ";crosscheck=" + std::to_string(cfg.crosscheck_len) +
                    ";sample=" + std::to_string(cfg.d_sample_len) + ";states=" + std::to_string(cfg.max_states) +
                    ";lt_max_k=" + std::to_string(cfg.lt_max_k) + ";semigroup=" + std::to_string(cfg.semigroup_elements);
    for (auto [i, k] : cfg.seeds) c += ";seed=" + std::to_string(i) + "," + std::to_string(k);
    for (auto [i, k] : cfg.schedule) c += ";tb=" + std::to_string(i) + "," + std::to_string(k);
    for (auto b : cfg.d_bounds) c += ";bound=" + std::to_string(b);
    if (cfg.machine) c += ";machine=" + digest(to_json(*cfg.machine));
    r.config_digest = digest(c);
  }
  r.d_source = cfg.machine ? "loaded" : "synthesized";
  r.status = "no verified GW found at these budgets";

  std::vector<TbPoint> schedule;
  std::set<TbPoint> seen;
  for (const auto& list : {cfg.seeds, cfg.schedule.empty() ? default_schedule(cfg.max_iter) : cfg.schedule})
    for (TbPoint p : list)
      if (seen.insert(p).second) schedule.push_back(p);

  const std::vector<std::size_t> bounds = cfg.machine ? std::vector<std::size_t>{0} : cfg.d_bounds;
  for (std::size_t bound : bounds) {
    MachineAttempt a;
    a.bound = bound;
    WordDifferenceMachine m;
    try {
      m = cfg.machine ? *cfg.machine : synthesize_D(oracle, bound);
      if (cfg.machine) require_same_alphabet(m.automaton.alphabet(), oracle.alphabet(), "pipeline");
      a.states = m.automaton.state_count();
      a.check = check_D(oracle, m.automaton, cfg.d_sample_len);
      if (!a.check.passed()) {
        a.outcome = "rejected: machine check failed";
        r.machines.push_back(a);
        continue;
      }
      Dfa w = shortlex_acceptor(m.automaton, cfg.max_states);
      a.w_mismatch = acceptor_mismatch(oracle, w, cfg.d_sample_len);
      if (a.w_mismatch) {
        a.outcome = "rejected: word acceptor disagrees with normal forms";
        r.machines.push_back(a);
        continue;
      }
      a.outcome = "accepted";
      r.machines.push_back(a);
      r.machine = std::move(m);
      r.w = std::move(w);
    } catch (const ResourceError& e) {
      a.outcome = std::string("budget: ") + e.what();
      r.machines.push_back(a);
      break;  // larger bounds need more
    }
    const bool escalate = ScheduleRun(oracle, cfg, r, bound).run(schedule);
    if (r.verified() || !escalate) break;
  }

  if (r.verified()) {
    r.status = "verified";
    classify(r, cfg);
  }
  return r;
}

GwReport pipeline(const GroupSpec& spec, const PipelineConfig& config) {
  GeodesicOracle oracle(spec);
  return pipeline(oracle, config);
}

namespace {

using detail::Json;

Json dfa_json(const Dfa& d) { return detail::parse_json(to_json(d)); }

Json pair_json(const Alphabet& a, const std::optional<std::pair<Word, Word>>& p) {
  if (!p) return nullptr;
  return Json::array({detail::word_to_json(a, p->first), detail::word_to_json(a, p->second)});
}

Json word_json(const Alphabet& a, const std::optional<Word>& w) {
  return w ? detail::word_to_json(a, *w) : Json(nullptr);
}

Json truth_json(Truth t) {
  if (t == Truth::unknown) return "unknown";
  return t == Truth::yes;
}

}  // namespace

std::string to_json(const GwReport& r) {
  Json j;
  j["format"] = 1;
  j["tool"] = std::string("geo ") + GEO_VERSION;
  j["group"] = r.group;
  j["spec_digest"] = r.digest;
  j["config_digest"] = r.config_digest;
  j["status"] = r.status;
  j["theorem_verified"] = r.theorem_verified;
  j["oracle_corroborated"] = r.oracle_corroborated;

  Json d;
  d["source"] = r.d_source;
  d["note"] = "completeness of the word-difference machine is checked on a sample only; "
              "the verdict rests on the theorem conditions and the oracle cross-check";
  Json attempts = Json::array();
  for (const auto& a : r.machines) {
    const Alphabet* al = r.w ? &r.w->alphabet() : nullptr;
    Json x;
    x["bound"] = a.bound;
    x["states"] = a.states;
    x["deterministic"] = a.check.deterministic;
    x["d1"] = a.check.d1;
    x["d3"] = a.check.d3;
    x["d2_pairs"] = a.check.d2_pairs;
    x["d2_accepted"] = a.check.d2_accepted;
    x["d2_percent"] = a.check.d2_percent();
    if (al) {
      x["d1_witness"] = pair_json(*al, a.check.d1_witness);
      x["d2_witness"] = pair_json(*al, a.check.d2_witness);
      x["w_mismatch"] = word_json(*al, a.w_mismatch);
    }
    x["outcome"] = a.outcome;
    attempts.push_back(x);
  }
  d["attempts"] = attempts;
  j["machine"] = d;

  if (r.w) j["w_states"] = r.w->state_count();
  j["trace"] = {{"states", r.trace_states}, {"live_states", r.trace_live}, {"converged", r.converged}};
  Json cands = Json::array();
  for (const auto& c : r.candidates)
    cands.push_back({{"bound", c.bound}, {"i", c.i}, {"k", c.k}, {"outcome", c.outcome}, {"detail", c.detail},
                     {"states", c.states}});
  j["candidates"] = cands;

  if (r.gw) {
    const Alphabet& a = r.gw->alphabet();
    Json g;
    g["i"] = r.i;
    g["k"] = r.k;
    g["states"] = r.gw_states();
    g["live_states"] = r.gw_live_states();
    if (r.verdict) {
      const GwVerdict& v = *r.verdict;
      g["conditions"] = {
          {"prefix_closed", {{"holds", v.prefix_closed()}, {"witness", word_json(a, v.prefix_closed_witness)}}},
          {"contains_w", {{"holds", v.contains_w()}, {"witness", word_json(a, v.contains_w_witness)}}},
          {"closed_under_partners",
           {{"holds", v.closed_under_partners()}, {"witness", pair_json(a, v.equal_length_witness)}}},
          {"no_shorter_partner",
           {{"holds", v.no_shorter_partner()}, {"witness", pair_json(a, v.shorter_partner_witness)}}}};
    }
    if (r.crosscheck) {
      const CrossCheck& c = *r.crosscheck;
      g["crosscheck"] = {{"length", c.length},         {"exact", c.exact()},
                         {"gw_counts", c.gw_counts},   {"geodesic_counts", c.geodesic_counts},
                         {"non_geodesic", word_json(a, c.non_geodesic)}, {"missing", word_json(a, c.missing)}};
    }
    g["automaton"] = dfa_json(*r.gw);
    j["gw"] = g;
  }
  if (r.verified()) {
    Json lt;
    lt["locally_testable"] = truth_json(r.locally_testable);
    lt["min_k"] = r.min_k ? Json(*r.min_k) : Json(nullptr);
    lt["min_k_exact"] = r.min_k_exact;
    lt["aperiodic"] = truth_json(r.aperiodic);
    lt["semigroup_size"] = r.semigroup_size;
    lt["detail"] = r.lt_detail;
    j["classification"] = lt;
  }
  return j.dump(2) + "\n";
}

}  // namespace geo
