#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "tacs/preorder.hpp"
#include "tacs/semantics.hpp"
#include "tacs/state_space.hpp"
#include "tacs/witness.hpp"

using namespace tacs;
using tacs::test::proc;
using tacs::test::t;

namespace {

struct Checked {
  StateSpace sp, sq;
  CheckVerdict v;
};

Checked run(TermFactory& f, Semantics& sem, const char* p, const char* q, RelationKind kind) {
  Process vp = proc(f, p), vq = proc(f, q);
  Checked c;
  c.v = check(sem, vp, vq, kind, 2000);
  c.sp = explore(sem, vp, 2000);
  c.sq = explore(sem, vq, 2000);
  return c;
}

}  // namespace

TEST_CASE("witness validation checks closure, not provenance") {
  TermFactory f;
  Semantics sem(f);
  Checked c = run(f, sem, "s.a.0", "a.0", RelationKind::naive(SemanticsType::Type1));
  REQUIRE(c.v.holds);
  WitnessRelation w = *c.v.witness;
  std::string why;
  CHECK(validate_witness(w, c.sp, c.sq, &why));

  // the engine's certificate must actually certify the root pair
  WitnessEntry root{c.sp.root, c.sq.root, 0};
  CHECK(std::find(w.entries.begin(), w.entries.end(), root) != w.entries.end());

  // dropping a load-bearing entry breaks a clause at some survivor
  {
    WitnessRelation broken = w;
    TermId nil = t(f, "0");
    std::erase_if(broken.entries, [&](const WitnessEntry& e) { return e.p == nil; });
    REQUIRE(broken.entries.size() < w.entries.size());
    CHECK_FALSE(validate_witness(broken, c.sp, c.sq, &why));
    CHECK_FALSE(why.empty());
  }

  // dropping the root entry leaves a smaller but still lawful relation: the
  // audit accepts any clause-closed set, root membership is the caller's
  // assertion (checked above).  The empty relation is closed too.
  {
    WitnessRelation headless = w;
    std::erase_if(headless.entries, [&](const WitnessEntry& e) { return e == root; });
    CHECK(validate_witness(headless, c.sp, c.sq, &why));
    WitnessRelation empty = w;
    empty.entries.clear();
    CHECK(validate_witness(empty, c.sp, c.sq, &why));
  }

  // entries must name explored states
  {
    WitnessRelation stray = w;
    stray.entries.push_back({t(f, "c.0"), c.sq.root, 0});
    CHECK_FALSE(validate_witness(stray, c.sp, c.sq, &why));
    CHECK(why.find("explored") != std::string::npos);
  }

  // a credit is meaningless outside the indexed family
  {
    WitnessRelation credited = w;
    credited.entries.front().credit = 1;
    CHECK_FALSE(validate_witness(credited, c.sp, c.sq, &why));
  }
}

TEST_CASE("hand-built relations validate by the clauses alone") {
  TermFactory f;
  Semantics sem(f);
  StateSpace s = explore(sem, proc(f, "a.0"), 2000);

  WitnessRelation ident;
  ident.kind = RelationKind::naive(SemanticsType::Type1);
  for (TermId state : s.states) ident.entries.push_back({state, state, 0});
  std::string why;
  CHECK(validate_witness(ident, s, s, &why));

  // {(s.a.0, a.0)} alone is not closed: the tick answer lands outside
  StateSpace sp = explore(sem, proc(f, "s.a.0"), 2000);
  WitnessRelation lone;
  lone.kind = RelationKind::naive(SemanticsType::Type1);
  lone.entries.push_back({sp.root, s.root, 0});
  CHECK_FALSE(validate_witness(lone, sp, s, &why));
  CHECK_FALSE(why.empty());

  lone.kind = RelationKind::strong(SemanticsType::Type1);
  CHECK_FALSE(validate_witness(lone, sp, s, &why));
}

TEST_CASE("re-kinding a witness re-runs the right clauses") {
  TermFactory f;
  Semantics sem(f);

  // naive accepts dropping the clock prefix, strong must reject the same
  // relation because the slower side is more urgent
  Checked c = run(f, sem, "s.a.0", "a.0", RelationKind::naive(SemanticsType::Type1));
  REQUIRE(c.v.holds);
  WitnessRelation w = *c.v.witness;
  w.kind = RelationKind::strong(SemanticsType::Type1);
  std::string why;
  CHECK_FALSE(validate_witness(w, c.sp, c.sq, &why));
  CHECK(why.find("urgent") != std::string::npos);

  // a strong witness stays valid when read as a combined witness: type 2
  // offers every type 1 tick answer and the urgent clause is unchanged
  Checked s = run(f, sem, "s.(a.0 + b.0)", "s.a.0 + s.b.0",
                  RelationKind::strong(SemanticsType::Type1));
  REQUIRE(s.v.holds);
  WitnessRelation ws = *s.v.witness;
  ws.kind = RelationKind::combined();
  CHECK(validate_witness(ws, s.sp, s.sq, &why));
}

TEST_CASE("indexed witnesses carry their resolved cap") {
  TermFactory f;
  Semantics sem(f);
  Checked c = run(f, sem, "s.a.0", "a.0", RelationKind::indexed(SemanticsType::Type1));
  REQUIRE(c.v.holds);
  WitnessRelation w = *c.v.witness;
  REQUIRE(w.kind.cap.has_value());
  std::string why;
  CHECK(validate_witness(w, c.sp, c.sq, &why));

  WitnessRelation unresolved = w;
  unresolved.kind.cap.reset();
  CHECK_FALSE(validate_witness(unresolved, c.sp, c.sq, &why));
  CHECK(why.find("cap") != std::string::npos);

  WitnessRelation overdrawn = w;
  overdrawn.entries.front().credit = *w.kind.cap + 1;
  CHECK_FALSE(validate_witness(overdrawn, c.sp, c.sq, &why));
}

TEST_CASE("refutation replay walks real moves to a real violation") {
  TermFactory f;
  Semantics sem(f);
  Checked c = run(f, sem, "a.b.0", "a.c.0", RelationKind::naive(SemanticsType::Type1));
  REQUIRE_FALSE(c.v.holds);
  const Refutation good = *c.v.refutation;
  const RelationKind kind = c.v.kind;
  std::string why;
  REQUIRE(replay_refutation(good, kind, c.sp, c.sq, &why));

  // the only possible play: one action ply into (b.0, c.0), then a move
  // with no answer in the transition sets at all
  REQUIRE(good.steps.size() == 2);
  REQUIRE(good.steps.back().terminal);

  auto rejects = [&](const Refutation& r, const char* needle) {
    std::string msg;
    bool ok = replay_refutation(r, kind, c.sp, c.sq, &msg);
    CAPTURE(msg);
    CHECK_FALSE(ok);
    CHECK(msg.find(needle) != std::string::npos);
  };

  rejects(Refutation{}, "empty");

  Refutation wrong_root = good;
  wrong_root.steps[0].p = t(f, "0");
  rejects(wrong_root, "does not continue the play");

  Refutation wrong_side = good;
  wrong_side.steps[1].clause = wrong_side.steps[1].clause == 1 ? 2 : 1;
  rejects(wrong_side, "attacker on the wrong side");

  Refutation wrong_action = good;
  wrong_action.steps[1].action = good.steps[0].action;  // no a-move remains
  rejects(wrong_action, "does not exist");

  Refutation truncated = good;
  truncated.steps.pop_back();
  rejects(truncated, "does not end in a terminal violation");

  Refutation early_terminal = good;
  early_terminal.steps[0].terminal = true;
  rejects(early_terminal, "terminal step is not last");

  Refutation bad_answer = good;
  {
    RefutationStep& st = bad_answer.steps[0];
    // point the followed answer at the defender's root, which has no such move
    st.defender_target = st.clause == 1 ? c.sq.root : c.sp.root;
  }
  rejects(bad_answer, "defender answer does not exist");

  Refutation unexplored = good;
  unexplored.steps[1].attacker_target = t(f, "c.0 | c.0");
  rejects(unexplored, "outside the explored space");
}

TEST_CASE("credit bookkeeping is replayed move by move") {
  TermFactory f;
  Semantics sem(f);
  Checked c = run(f, sem, "tau.0 | s.s.tau.0", "s.tau.0 | s.s.tau.0",
                  RelationKind::indexed(SemanticsType::Type2, 1));
  REQUIRE_FALSE(c.v.holds);
  const Refutation good = *c.v.refutation;
  const RelationKind kind = c.v.kind;
  REQUIRE(kind.cap == 1);
  std::string why;
  REQUIRE_MESSAGE(replay_refutation(good, kind, c.sp, c.sq, &why), why);
  REQUIRE(good.steps.size() >= 2);

  // losing the pair at cap 1 forces at least one bank move into the play;
  // the play starts at credit 0, so the first bank really increments
  auto bank = std::find_if(good.steps.begin(), good.steps.end(), [](const RefutationStep& st) {
    return st.clause == 4 && st.credit_move;
  });
  REQUIRE(bank != good.steps.end());
  REQUIRE(bank->credit < *kind.cap);
  std::size_t bi = std::size_t(bank - good.steps.begin());

  auto rejects = [&](const Refutation& r, const char* needle) {
    std::string msg;
    bool ok = replay_refutation(r, kind, c.sp, c.sq, &msg);
    CAPTURE(msg);
    CHECK_FALSE(ok);
    CHECK(msg.find(needle) != std::string::npos);
  };

  RelationKind unresolved = kind;
  unresolved.cap.reset();
  CHECK_FALSE(replay_refutation(good, unresolved, c.sp, c.sq, &why));
  CHECK(why.find("resolved credit cap") != std::string::npos);

  Refutation lost_credit = good;
  lost_credit.steps[bi].defender_credit = good.steps[bi].credit;  // bank must increment
  rejects(lost_credit, "increment");

  Refutation moved_q = good;
  {
    // an explored p-state that differs from where the bank must stay
    TermId elsewhere = t(f, "0 | s.s.tau.0");
    REQUIRE(c.sp.index.count(elsewhere) == 1);
    moved_q.steps[bi].defender_target =
        good.steps[bi].defender_target == elsewhere ? c.sp.root : elsewhere;
  }
  rejects(moved_q, "credit bank must leave p in place");

  // a bank move can never be the end of the game
  Refutation fake_terminal = good;
  fake_terminal.steps.resize(bi + 1);
  fake_terminal.steps[bi].terminal = true;
  rejects(fake_terminal, "bank");

  if (bi + 1 < good.steps.size()) {
    Refutation skewed = good;
    skewed.steps[bi + 1].credit += 1;
    rejects(skewed, "does not continue the play");
  }
}
