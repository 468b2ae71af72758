#include "tacs/suites.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <utility>

#include "tacs/errors.hpp"
#include "tacs/generator.hpp"
#include "tacs/preorder.hpp"
#include "tacs/semantics.hpp"
#include "tacs/state_space.hpp"
#include "tacs/syntactic_order.hpp"
#include "tacs/syntax.hpp"
#include "tacs/term.hpp"
#include "tacs/witness.hpp"

#if defined(TACS_HAVE_OPENMP)
#include <omp.h>
#endif

namespace tacs {

namespace {

// Everything one case touches lives here, so cases never share mutable state.
struct CaseCtx {
  const SuiteConfig& cfg;
  std::string suite;
  std::size_t index;
  TermFactory f;
  Semantics sem{f};
  SyntacticOrder order{f};
  std::vector<SuiteViolation> out;
  bool skipped{false};

  CaseCtx(const SuiteConfig& config, std::string name, std::size_t i)
      : cfg(config), suite(std::move(name)), index(i) {}

  GeneratorConfig gen() const { return {cfg.seed, cfg.budget, 3}; }

  CheckPolicy policy() const {
    CheckPolicy p;
    p.threads = 1;  // the runner already parallelizes across cases
    p.config_limit = cfg.config_limit;
    return p;
  }

  void violate(std::string property, std::string detail) {
    std::string replay = "tacs verify --suite " + suite + " --seed " + std::to_string(cfg.seed) +
                         " --cases " + std::to_string(index + 1);
    out.push_back({index, std::move(property), std::move(detail), std::move(replay)});
  }

  Process process(TermId t) { return std::get<Process>(validate_process(f, t)); }

  std::string show(TermId t) { return print(f, t); }
  std::string show2(TermId p, TermId q) { return "(" + show(p) + ", " + show(q) + ")"; }
};

bool has_urgent_tau(const std::vector<Action>& u) {
  return std::binary_search(u.begin(), u.end(), Action::tau());
}

// Independent pair on even cases, clock-padded copy on odd ones so that
// positive verdicts occur often enough to exercise witness paths.
std::pair<TermId, TermId> draw_pair(CaseCtx& c) {
  TermId p = generate_process(c.f, c.gen(), 2 * c.index);
  TermId q = c.index % 2 == 0 ? generate_process(c.f, c.gen(), 2 * c.index + 1)
                              : insert_clock_prefixes(c.f, p, c.cfg.seed ^ (c.index * 2654435761u));
  return {p, q};
}

// ── law bundles ─────────────────────────────────────────────────────────────

void sos_laws(CaseCtx& c) {
  TermId p = generate_process(c.f, c.gen(), c.index);
  StateSpace s = explore(c.sem, p, c.cfg.state_limit);
  for (TermId t : s.states) {
    bool blocked = has_urgent_tau(c.sem.urgent_set(t));
    for (SemanticsType type : {SemanticsType::Type1, SemanticsType::Type2})
      if (c.sem.can_tick(t, type) == blocked)
        c.violate("maximal-progress", c.show(t));
    const auto& c1 = c.sem.clock_successors(t, SemanticsType::Type1);
    const auto& c2 = c.sem.clock_successors(t, SemanticsType::Type2);
    if (c1.size() > 1) c.violate("type1-determinism", c.show(t));
    for (TermId u : c1)
      if (!std::binary_search(c2.begin(), c2.end(), u))
        c.violate("type1-in-type2", c.show(t) + " ticks to " + c.show(u));
    if (!std::holds_alternative<Process>(validate_process(c.f, t)))
      c.violate("guardedness-preservation", c.show(t));
  }

  // Substitution/transition exchange: t and t[mu/y] step in lockstep when y
  // is guarded in t.  The generator keeps y guarded everywhere.
  NameId y = c.f.name_id("y");
  TermId t = generate_open_term(c.f, c.gen(), c.index, y);
  TermId mu = c.f.rec(y, generate_open_term(c.f, c.gen(), c.index + 0x9e3779b9u, y));
  TermId tsub = c.f.substitute(t, y, mu);
  auto sub = [&](TermId u) { return c.f.substitute(u, y, mu); };

  for (const auto& [a, t1] : c.sem.action_successors(t)) {
    const auto& after = c.sem.action_successors(tsub);
    if (std::find(after.begin(), after.end(), std::make_pair(a, sub(t1))) == after.end())
      c.violate("substitution-forward", c.show(t) + " on " + print(c.f, a));
  }
  for (const auto& [a, u] : c.sem.action_successors(tsub)) {
    bool found = false;
    for (const auto& [b, t1] : c.sem.action_successors(t))
      if (b == a && sub(t1) == u) found = true;
    if (!found) c.violate("substitution-backward", c.show(tsub) + " on " + print(c.f, a));
  }
  for (SemanticsType type : {SemanticsType::Type1, SemanticsType::Type2}) {
    const auto& plain = c.sem.clock_successors(t, type);
    const auto& after = c.sem.clock_successors(tsub, type);
    for (TermId t1 : plain)
      if (!std::binary_search(after.begin(), after.end(), sub(t1)))
        c.violate("substitution-forward", c.show(t) + " ticks");
    for (TermId u : after) {
      bool found = false;
      for (TermId t1 : plain)
        if (sub(t1) == u) found = true;
      if (!found) c.violate("substitution-backward", c.show(tsub) + " ticks to " + c.show(u));
    }
  }
}

void sigma2_transitivity(CaseCtx& c) {
  TermId p = generate_process(c.f, c.gen(), c.index);
  StateSpace s = explore(c.sem, p, c.cfg.state_limit);
  for (TermId t : s.states) {
    const auto& from_t = c.sem.clock_successors(t, SemanticsType::Type2);
    for (TermId u : from_t)
      for (TermId v : c.sem.clock_successors(u, SemanticsType::Type2))
        if (!std::binary_search(from_t.begin(), from_t.end(), v))
          c.violate("sigma2-transitivity",
                    c.show(t) + " -> " + c.show(u) + " -> " + c.show(v));
  }
}

void check_witness_as_combined(CaseCtx& c, const CheckVerdict& verdict, TermId p, TermId q,
                               const char* property) {
  if (!verdict.holds) return;
  StateSpace sp = explore(c.sem, p, c.cfg.state_limit);
  StateSpace sq = explore(c.sem, q, c.cfg.state_limit);
  WitnessRelation w = *verdict.witness;
  w.kind = RelationKind::combined();
  std::string why;
  if (!validate_witness(w, sp, sq, &why)) c.violate(property, c.show2(p, q) + ": " + why);
}

void coherence(CaseCtx& c) {
  TermId p = generate_process(c.f, c.gen(), c.index);
  StateSpace s = explore(c.sem, p, c.cfg.state_limit);
  for (TermId t : s.states) {
    const auto& c2 = c.sem.clock_successors(t, SemanticsType::Type2);
    if (c2.empty()) continue;
    const auto& c1 = c.sem.clock_successors(t, SemanticsType::Type1);
    if (c1.empty()) {
      c.violate("coherence", c.show(t) + " ticks under type 2 only");
      continue;
    }
    for (TermId t2 : c2)
      if (!c.order.faster_plus(t2, c1.front()))
        c.violate("coherence", c.show(t2) + " not above " + c.show(c1.front()));
  }

  // Accepted strong witnesses must satisfy the combined clauses as they are.
  TermId q = insert_clock_prefixes(c.f, p, c.cfg.seed ^ (c.index * 0x9e3779b9u));
  for (SemanticsType type : {SemanticsType::Type1, SemanticsType::Type2}) {
    auto verdict = check(c.sem, c.process(p), c.process(q), RelationKind::strong(type),
                         c.cfg.state_limit, c.policy());
    check_witness_as_combined(c, verdict, p, q, "strong-witness-as-combined");
  }
}

void succ_soundness(CaseCtx& c) {
  TermId p = generate_process(c.f, c.gen(), c.index);
  StateSpace s = explore(c.sem, p, c.cfg.state_limit);
  for (TermId t : s.states) {
    for (TermId t1 : c.sem.clock_successors(t, SemanticsType::Type1))
      if (!c.order.syntactically_faster(t1, t))
        c.violate("clock1-in-order", c.show2(t1, t));
    for (TermId t2 : c.sem.clock_successors(t, SemanticsType::Type2))
      if (!c.order.faster_plus(t2, t))
        c.violate("clock2-in-order-closure", c.show2(t2, t));
    const auto& ut = c.sem.urgent_set(t);
    for (TermId m : c.order.faster_set(t).members) {
      const auto& um = c.sem.urgent_set(m);
      if (!std::includes(um.begin(), um.end(), ut.begin(), ut.end()))
        c.violate("order-grows-urgency", c.show2(m, t));
    }
  }
}

void verdict_agreement(CaseCtx& c, const std::vector<RelationKind>& kinds, const char* property) {
  auto [p, q] = draw_pair(c);
  Process vp = c.process(p), vq = c.process(q);
  std::vector<bool> holds;
  for (const RelationKind& k : kinds)
    holds.push_back(check(c.sem, vp, vq, k, c.cfg.state_limit, c.policy()).holds);
  for (std::size_t i = 1; i < holds.size(); ++i)
    if (holds[i] != holds[0])
      c.violate(property, c.show2(p, q) + ": " + to_string(kinds[0]) + "=" +
                              (holds[0] ? "holds" : "fails") + " but " + to_string(kinds[i]) +
                              "=" + (holds[i] ? "holds" : "fails"));
}

void coincidence_naive(CaseCtx& c) {
  verdict_agreement(c, {RelationKind::naive(SemanticsType::Type1),
                        RelationKind::naive(SemanticsType::Type2)},
                    "naive-coincidence");
}

void coincidence_delayed(CaseCtx& c) {
  verdict_agreement(c, {RelationKind::delayed(SemanticsType::Type1),
                        RelationKind::delayed(SemanticsType::Type2),
                        RelationKind::naive(SemanticsType::Type1)},
                    "delayed-coincidence");
}

void coincidence_strong(CaseCtx& c) {
  verdict_agreement(c, {RelationKind::strong(SemanticsType::Type1),
                        RelationKind::strong(SemanticsType::Type2), RelationKind::combined()},
                    "strong-coincidence");
}

void indexed_baseline(CaseCtx& c) {
  verdict_agreement(c, {RelationKind::indexed(SemanticsType::Type1),
                        RelationKind::naive(SemanticsType::Type1)},
                    "indexed-baseline");
}

void containment(CaseCtx& c) {
  auto [p, q] = draw_pair(c);
  Process vp = c.process(p), vq = c.process(q);
  for (SemanticsType type : {SemanticsType::Type1, SemanticsType::Type2}) {
    auto strong = check(c.sem, vp, vq, RelationKind::strong(type), c.cfg.state_limit, c.policy());
    if (strong.holds) {
      auto naive = check(c.sem, vp, vq, RelationKind::naive(type), c.cfg.state_limit, c.policy());
      if (!naive.holds) c.violate("strong-implies-naive", c.show2(p, q));
      check_witness_as_combined(c, strong, p, q, "strong-witness-as-combined");
    }
    auto naive = check(c.sem, vp, vq, RelationKind::naive(type), c.cfg.state_limit, c.policy());
    if (naive.holds &&
        !check(c.sem, vp, vq, RelationKind::delayed(type), c.cfg.state_limit, c.policy()).holds)
      c.violate("naive-implies-delayed", c.show2(p, q));
  }

  // The syntactic order, cut down to one explored space, is itself a naive
  // and a strong witness.  Quadratic in states, so only on small spaces.
  StateSpace s = explore(c.sem, p, c.cfg.state_limit);
  if (s.size() > 60) return;
  WitnessRelation w;
  w.kind = RelationKind::naive(SemanticsType::Type1);
  for (TermId u : s.states)
    for (TermId t : c.order.upward_closure(u))
      if (s.index.count(t)) w.entries.push_back({t, u, 0});
  std::string why;
  if (!validate_witness(w, s, s, &why)) c.violate("order-as-naive-witness", why);
  w.kind = RelationKind::strong(SemanticsType::Type1);
  if (!validate_witness(w, s, s, &why)) c.violate("order-as-strong-witness", why);
}

using SuiteBody = void (*)(CaseCtx&);

SuiteBody body_of(const std::string& name) {
  if (name == "sos-laws") return sos_laws;
  if (name == "sigma2-transitivity") return sigma2_transitivity;
  if (name == "coherence") return coherence;
  if (name == "succ-soundness") return succ_soundness;
  if (name == "coincidence-naive") return coincidence_naive;
  if (name == "coincidence-delayed") return coincidence_delayed;
  if (name == "coincidence-strong") return coincidence_strong;
  if (name == "indexed-baseline") return indexed_baseline;
  if (name == "containment") return containment;
  throw UnknownSuite(name);
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "sos-laws",           "sigma2-transitivity", "coherence",
      "succ-soundness",     "coincidence-naive",   "coincidence-delayed",
      "coincidence-strong", "indexed-baseline",    "containment"};
  return names;
}

SuiteReport run_suite(const std::string& name, const SuiteConfig& cfg) {
  SuiteBody body = body_of(name);
  auto start = std::chrono::steady_clock::now();

  std::vector<std::vector<SuiteViolation>> slots(cfg.cases);
  std::vector<char> skipped(cfg.cases, 0);

  auto run_one = [&](std::size_t i) {
    CaseCtx c{cfg, name, i};
    try {
      body(c);
    } catch (const StateLimitExceeded&) {
      c.skipped = true;
    } catch (const ConfigLimitExceeded&) {
      c.skipped = true;
    } catch (const ClosureLimitExceeded&) {
      c.skipped = true;
    } catch (const std::exception& e) {
      c.violate("unexpected-error", e.what());
    }
    slots[i] = std::move(c.out);
    skipped[i] = c.skipped ? 1 : 0;
  };

  int threads = 1;
#if defined(TACS_HAVE_OPENMP)
  threads = cfg.threads == 0 ? omp_get_max_threads() : cfg.threads;
#endif
  if (threads <= 1) {
    for (std::size_t i = 0; i < cfg.cases; ++i) run_one(i);
  } else {
#if defined(TACS_HAVE_OPENMP)
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (long long i = 0; i < static_cast<long long>(cfg.cases); ++i)
      run_one(static_cast<std::size_t>(i));
#endif
  }

  SuiteReport report;
  report.name = name;
  report.cases = cfg.cases;
  for (std::size_t i = 0; i < cfg.cases; ++i) {
    report.skipped += skipped[i];
    for (auto& v : slots[i]) report.violations.push_back(std::move(v));
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace tacs
