#include "tacs/registry.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <utility>

#include "tacs/errors.hpp"
#include "tacs/preorder.hpp"
#include "tacs/semantics.hpp"
#include "tacs/state_space.hpp"
#include "tacs/syntactic_order.hpp"
#include "tacs/syntax.hpp"
#include "tacs/term.hpp"
#include "tacs/witness.hpp"

namespace tacs {

namespace {

constexpr std::size_t kLimit = 100000;

struct Rep {
  SuiteReport report;
  TermFactory f;
  Semantics sem{f};
  SyntacticOrder order{f};

  explicit Rep(std::string id) { report.name = std::move(id); }

  void expect(bool ok, const std::string& what, const std::string& detail) {
    std::size_t i = report.cases++;
    if (!ok)
      report.violations.push_back(
          {i, what, detail, "tacs reproduce --example " + report.name});
  }

  TermId term(const std::string& text) {
    auto r = parse(f, text);
    return *r.term;
  }

  Process proc(TermId t) { return std::get<Process>(validate_process(f, t)); }

  std::string show(TermId t) { return print(f, t); }

  // Runs a check, audits its certificate, and returns the verdict.
  bool audited(TermId p, TermId q, RelationKind kind) {
    CheckVerdict v = check(sem, proc(p), proc(q), kind, kLimit);
    StateSpace sp = explore(sem, p, kLimit);
    StateSpace sq = explore(sem, q, kLimit);
    std::string why;
    if (v.holds)
      expect(v.witness && validate_witness(*v.witness, sp, sq, &why), "witness-audit",
             to_string(v.kind) + " on (" + show(p) + ", " + show(q) + "): " + why);
    else
      expect(v.refutation && replay_refutation(*v.refutation, v.kind, sp, sq, &why),
             "refutation-audit",
             to_string(v.kind) + " on (" + show(p) + ", " + show(q) + "): " + why);
    return v.holds;
  }

  void expect_verdict(TermId p, TermId q, RelationKind kind, bool holds) {
    bool got = audited(p, q, kind);
    expect(got == holds, "verdict",
           to_string(kind) + " on (" + show(p) + ", " + show(q) + "): expected " +
               (holds ? "holds" : "fails") + ", got " + (got ? "holds" : "fails"));
  }
};

bool same_set(const std::vector<TermId>& got, std::vector<TermId> want) {
  std::sort(want.begin(), want.end());
  return got == want;  // clock successor lists are sorted and deduplicated
}

void sigma_skip(Rep& r) {
  TermId p = r.term("s.s.s.a.0");
  r.expect(same_set(r.sem.clock_successors(p, SemanticsType::Type1), {r.term("s.s.a.0")}),
           "type1-steps", r.show(p));
  r.expect(same_set(r.sem.clock_successors(p, SemanticsType::Type2),
                    {r.term("s.s.a.0"), r.term("s.a.0"), r.term("a.0")}),
           "type2-steps", r.show(p));
}

void parallel_skip(Rep& r) {
  TermId p = r.term("s.s.s.a.0 | s.s.a.0");
  TermId target = r.term("a.0 | s.a.0");
  const auto& c2 = r.sem.clock_successors(p, SemanticsType::Type2);
  r.expect(std::binary_search(c2.begin(), c2.end(), target), "type2-reaches",
           r.show(p) + " -> " + r.show(target));

  // No chain of type-1 steps reaches it: the components tick in lockstep.
  std::set<TermId> seen{p};
  std::vector<TermId> work{p};
  while (!work.empty()) {
    TermId t = work.back();
    work.pop_back();
    for (TermId u : r.sem.clock_successors(t, SemanticsType::Type1))
      if (seen.insert(u).second) work.push_back(u);
  }
  r.expect(!seen.count(target), "type1-cannot-reach", r.show(target));
}

void urgency_blocks_tick(Rep& r) {
  TermId blocked = r.term("a.0 | 'a.0");
  const auto& u = r.sem.urgent_set(blocked);
  r.expect(std::binary_search(u.begin(), u.end(), Action::tau()), "urgent-tau", r.show(blocked));
  r.expect(!r.sem.can_tick(blocked, SemanticsType::Type1) &&
               !r.sem.can_tick(blocked, SemanticsType::Type2),
           "no-tick", r.show(blocked));
  TermId free = r.term("a.0 | s.'a.0");
  r.expect(r.sem.can_tick(free, SemanticsType::Type1) &&
               r.sem.can_tick(free, SemanticsType::Type2),
           "tick", r.show(free));
}

void coherence_triple(Rep& r) {
  TermId p = r.term("s.s.s.a.0 | s.'a.0 | s.a.0");
  TermId p2 = r.term("a.0 | 'a.0 | a.0");       // one type-2 step
  TermId p1 = r.term("s.s.a.0 | 'a.0 | a.0");   // the only type-1 step
  const auto& c2 = r.sem.clock_successors(p, SemanticsType::Type2);
  r.expect(std::binary_search(c2.begin(), c2.end(), p2), "type2-step",
           r.show(p) + " -> " + r.show(p2));
  r.expect(same_set(r.sem.clock_successors(p, SemanticsType::Type1), {p1}), "type1-step",
           r.show(p) + " -> " + r.show(p1));
  const auto& u = r.sem.urgent_set(p1);
  r.expect(std::binary_search(u.begin(), u.end(), Action::tau()) &&
               !r.sem.can_tick(p1, SemanticsType::Type1) &&
               !r.sem.can_tick(p1, SemanticsType::Type2),
           "type1-target-stuck", r.show(p1));
  r.expect(r.order.faster_plus(p2, p1), "order-covers",
           r.show(p2) + " above " + r.show(p1));
}

void indexed_counterexample(Rep& r) {
  TermId p = r.term("tau.0 | s.s.tau.0");
  TermId q = r.term("s.tau.0 | s.s.tau.0");
  r.expect_verdict(p, q, RelationKind::naive(SemanticsType::Type2), true);
  r.expect_verdict(p, q, RelationKind::naive(SemanticsType::Type1), true);
  r.expect_verdict(p, q, RelationKind::indexed(SemanticsType::Type1), true);
  for (std::size_t cap = 1; cap <= 10; ++cap)
    r.expect_verdict(p, q, RelationKind::indexed(SemanticsType::Type2, cap), false);
}

void precongruence_failure(Rep& r) {
  TermId p = r.term("s.a.0");
  TermId q = r.term("a.0");
  r.expect_verdict(p, q, RelationKind::naive(SemanticsType::Type1), true);
  r.expect_verdict(p, q, RelationKind::naive(SemanticsType::Type2), true);
  r.expect_verdict(p, q, RelationKind::strong(SemanticsType::Type1), false);
  r.expect_verdict(p, q, RelationKind::strong(SemanticsType::Type2), false);
  TermId pp = r.term("s.a.0 | 'a.0");
  TermId qq = r.term("a.0 | 'a.0");
  r.expect_verdict(pp, qq, RelationKind::naive(SemanticsType::Type2), false);
  r.expect_verdict(pp, qq, RelationKind::naive(SemanticsType::Type1), false);
}

// The two processes disagree only in how eagerly the a- and b-loops run:
//   faster: rec x. a.x | rec x. b.x | (rec x. s^n.c.x | rec x. s^n.'c.x) \ {c}
//   slower: rec x. s^n.a.x | rec x. s^n.b.x | (same c-loops) \ {c}
// States are coded by the number of leading clock prefixes per component.
struct GrowthFamily {
  TermFactory& f;
  std::size_t n;
  NameId a, b, c, x;

  GrowthFamily(TermFactory& fac, std::size_t size)
      : f(fac), n(size), a(f.name_id("a")), b(f.name_id("b")), c(f.name_id("c")),
        x(f.name_id("x")) {}

  TermId sigmas(TermId t, std::size_t k) {
    while (k-- > 0) t = f.clock(t);
    return t;
  }

  TermId loop(Action head, std::size_t lead) {
    return f.rec(x, sigmas(f.act(head, f.var(x)), lead));
  }

  // Component with `code` leading clock prefixes; code n is the loop itself.
  TermId comp(Action head, std::size_t lead, std::size_t code) {
    TermId mu = loop(head, lead);
    return code == n ? mu : sigmas(f.act(head, mu), code);
  }

  TermId assemble(TermId one, TermId two, std::size_t k, std::size_t l) {
    TermId pair = f.par(comp(Action::in(c), n, k), comp(Action::out(c), n, l));
    return f.par(f.par(one, two), f.restrict(pair, {c}));
  }

  // i, j are 0 or n on the faster side; k, l range over 0..n on both.
  TermId fast_state(std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
    return assemble(comp(Action::in(a), 0, i == n ? n : 0),
                    comp(Action::in(b), 0, j == n ? n : 0), k, l);
  }

  TermId slow_state(std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
    return assemble(comp(Action::in(a), n, i), comp(Action::in(b), n, j), k, l);
  }
};

void relation_growth(Rep& r, std::size_t n) {
  GrowthFamily s(r.f, n);
  TermId p = s.fast_state(n, n, n, n);
  TermId q = s.slow_state(n, n, n, n);
  std::size_t limit = std::max<std::size_t>(kLimit, 8 * (n + 1) * (n + 1) * (n + 1) * (n + 1));
  StateSpace sp = explore(r.sem, p, limit);
  StateSpace sq = explore(r.sem, q, limit);

  // A combined witness needs just 4(n+1) pairs: both sides keep the c-loops
  // in lockstep and the slower side answers ticks with type-2 catch-up steps.
  WitnessRelation w;
  w.kind = RelationKind::combined();
  for (std::size_t i : {std::size_t{0}, n})
    for (std::size_t j : {std::size_t{0}, n})
      for (std::size_t k = 0; k <= n; ++k)
        w.entries.push_back({s.fast_state(i, j, k, k), s.slow_state(i, j, k, k), 0});
  r.expect(w.entries.size() == 4 * (n + 1), "witness-size",
           std::to_string(w.entries.size()) + " entries");
  std::string why;
  r.expect(validate_witness(w, sp, sq, &why), "witness-validates", why);

  // Any relation over type-2 steps must cover every reachable fast-side state.
  std::size_t reach2 = reachable_state_count(r.sem, p, SemanticsType::Type2, limit);
  r.expect(reach2 >= 4 * n * n + 4, "type2-state-count",
           std::to_string(reach2) + " states, bound " + std::to_string(4 * n * n + 4));

  // Any relation over type-1 steps is forced to (n+1)^3 distinct pairs: the
  // joint moves below leave the defender a single answer at every step, so
  // each reached pair must belong to the relation.
  auto tick = [&](TermId& cp, TermId& cq) {
    const auto& pc = r.sem.clock_successors(cp, SemanticsType::Type1);
    const auto& qc = r.sem.clock_successors(cq, SemanticsType::Type1);
    r.expect(pc.size() == 1 && qc.size() == 1, "forced-tick",
             "(" + r.show(cp) + ", " + r.show(cq) + ")");
    if (pc.size() != 1 || qc.size() != 1) return false;
    cp = pc.front();
    cq = qc.front();
    return true;
  };
  auto act = [&](TermId& cp, TermId& cq, Action what) {
    TermId pt = kNoTerm, qt = kNoTerm;
    std::size_t pn = 0, qn = 0;
    for (const auto& [act2, t] : r.sem.action_successors(cp))
      if (act2 == what) {
        pt = t;
        ++pn;
      }
    for (const auto& [act2, t] : r.sem.action_successors(cq))
      if (act2 == what) {
        qt = t;
        ++qn;
      }
    r.expect(pn == 1 && qn == 1, "forced-action", "(" + r.show(cp) + ", " + r.show(cq) + ")");
    if (pn != 1 || qn != 1) return false;
    cp = pt;
    cq = qt;
    return true;
  };

  auto product = product_reachable_pairs(sp, sq);
  std::set<std::pair<TermId, TermId>> forced;
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = 0; j <= n; ++j)
      for (std::size_t k = 0; k <= n; ++k) {
        // Reset a component, tick down, reset the next: the component reset
        // last keeps the highest count, so order the resets by target value.
        struct Leg {
          std::size_t target;
          int which;  // 0 = a, 1 = b, 2 = internal sync
        };
        std::vector<Leg> legs = {{i, 0}, {j, 1}, {k, 2}};
        std::stable_sort(legs.begin(), legs.end(),
                         [](const Leg& l, const Leg& r2) { return l.target < r2.target; });
        TermId cp = p, cq = q;
        bool ok = true;
        for (std::size_t leg = 0; leg < 3 && ok; ++leg) {
          Action what = legs[leg].which == 0   ? Action::in(s.a)
                        : legs[leg].which == 1 ? Action::in(s.b)
                                               : Action::tau();
          ok = act(cp, cq, what);
          std::size_t down =
              leg + 1 < 3 ? legs[leg + 1].target - legs[leg].target : n - legs[leg].target;
          for (std::size_t step = 0; step < down && ok; ++step) ok = tick(cp, cq);
        }
        if (!ok) continue;
        TermId want_p = s.fast_state(i, j, k, k);
        TermId want_q = s.slow_state(i, j, k, k);
        r.expect(cp == want_p && cq == want_q, "recipe-lands",
                 "(" + r.show(cp) + ", " + r.show(cq) + ") vs (" + r.show(want_p) + ", " +
                     r.show(want_q) + ")");
        forced.insert({cp, cq});
        bool in_product = std::binary_search(
            product.begin(), product.end(),
            std::make_pair(sp.index_of(cp), sq.index_of(cq)));
        r.expect(in_product, "pair-in-joint-walk", "(" + r.show(cp) + ", " + r.show(cq) + ")");
      }
  r.expect(forced.size() >= (n + 1) * (n + 1) * (n + 1), "forced-pair-count",
           std::to_string(forced.size()) + " pairs, bound " +
               std::to_string((n + 1) * (n + 1) * (n + 1)));
}

}  // namespace

const std::vector<std::string>& example_ids() {
  static const std::vector<std::string> ids = {
      "sigma-skip",        "parallel-skip",          "urgency-blocks-tick", "coherence-triple",
      "indexed-counterexample", "precongruence-failure", "relation-growth"};
  return ids;
}

SuiteReport reproduce(const std::string& id) {
  auto start = std::chrono::steady_clock::now();
  std::string base = id;
  std::size_t n = 2;
  if (auto qm = id.find("?n="); qm != std::string::npos) {
    base = id.substr(0, qm);
    if (base != "relation-growth") throw UnknownExample(id);
    n = 0;
    for (char ch : id.substr(qm + 3)) {
      if (ch < '0' || ch > '9') throw UnknownExample(id);
      n = n * 10 + static_cast<std::size_t>(ch - '0');
    }
  }
  Rep r(id);
  if (base == "sigma-skip")
    sigma_skip(r);
  else if (base == "parallel-skip")
    parallel_skip(r);
  else if (base == "urgency-blocks-tick")
    urgency_blocks_tick(r);
  else if (base == "coherence-triple")
    coherence_triple(r);
  else if (base == "indexed-counterexample")
    indexed_counterexample(r);
  else if (base == "precongruence-failure")
    precongruence_failure(r);
  else if (base == "relation-growth" && n >= 1 && n <= 8)
    relation_growth(r, n);
  else
    throw UnknownExample(id);
  r.report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r.report;
}

}  // namespace tacs
