#include <doctest.h>

#include <string>
#include <vector>

#include "helpers.hpp"
#include "tacs/errors.hpp"
#include "tacs/generator.hpp"
#include "tacs/term.hpp"

using namespace tacs;
using tacs::test::t;

namespace {

// Field-by-field structural comparison, deliberately ignoring the interner.
// Used below as an oracle that id equality really is structural equality.
bool deep_eq(const TermFactory& f, TermId a, TermId b) {
  const TermNode& x = f.node(a);
  const TermNode& y = f.node(b);
  if (x.kind != y.kind) return false;
  switch (x.kind) {
    case TermKind::Nil:
      return true;
    case TermKind::Var:
      return x.var == y.var;
    case TermKind::ActPrefix:
      return x.action == y.action && deep_eq(f, x.child0, y.child0);
    case TermKind::ClockPrefix:
      return deep_eq(f, x.child0, y.child0);
    case TermKind::Sum:
    case TermKind::Par:
      return deep_eq(f, x.child0, y.child0) && deep_eq(f, x.child1, y.child1);
    case TermKind::Restrict:
      return x.restrict_set == y.restrict_set && deep_eq(f, x.child0, y.child0);
    case TermKind::Relabel:
      return x.relabelling == y.relabelling && deep_eq(f, x.child0, y.child0);
    case TermKind::Rec:
      return x.var == y.var && deep_eq(f, x.child0, y.child0);
  }
  return false;
}

// Independent node count, ignoring the cached size field.
std::uint32_t count_nodes(const TermFactory& f, TermId a) {
  const TermNode& n = f.node(a);
  std::uint32_t total = 1;
  if (n.child0 != kNoTerm) total += count_nodes(f, n.child0);
  if (n.child1 != kNoTerm) total += count_nodes(f, n.child1);
  return total;
}

}  // namespace

TEST_CASE("names are validated and interned") {
  TermFactory f;
  NameId a = f.name_id("a");
  CHECK(f.name_id("a") == a);
  CHECK(f.name(a) == "a");
  CHECK(f.name_id("abc_1X") != a);

  CHECK_THROWS_AS(f.name_id("A"), InvalidName);
  CHECK_THROWS_AS(f.name_id("1a"), InvalidName);
  CHECK_THROWS_AS(f.name_id(""), InvalidName);
  CHECK_THROWS_AS(f.name_id("a-b"), InvalidName);
  // reserved words of the concrete syntax
  CHECK_THROWS_AS(f.name_id("tau"), InvalidName);
  CHECK_THROWS_AS(f.name_id("sigma"), InvalidName);
  CHECK_THROWS_AS(f.name_id("s"), InvalidName);
  CHECK_THROWS_AS(f.name_id("rec"), InvalidName);
}

TEST_CASE("action complement flips polarity and rejects tau") {
  TermFactory f;
  NameId a = f.name_id("a");
  CHECK(complement(Action::in(a)) == Action::out(a));
  CHECK(complement(Action::out(a)) == Action::in(a));
  CHECK_THROWS_AS(complement(Action::tau()), TauComplement);
}

TEST_CASE("relabellings are canonical finite functions") {
  TermFactory f;
  NameId a = f.name_id("a"), b = f.name_id("b"), c = f.name_id("c");

  Relabelling r = Relabelling::from_pairs({{a, b}, {c, c}});
  CHECK(r.apply(a) == b);
  CHECK(r.apply(b) == b);  // untouched names map to themselves
  CHECK(r.apply(c) == c);
  CHECK(r.entries().size() == 1);  // the identity pair (c, c) is dropped

  CHECK(r.apply(Action::in(a)) == Action::in(b));
  CHECK(r.apply(Action::out(a)) == Action::out(b));
  CHECK(r.apply(Action::tau()) == Action::tau());

  // same source twice: fine when consistent, an error when not
  CHECK(Relabelling::from_pairs({{a, b}, {a, b}}).entries().size() == 1);
  CHECK_THROWS_AS(Relabelling::from_pairs({{a, b}, {a, c}}), InvalidName);

  CHECK(Relabelling().identity());
  CHECK(Relabelling::from_pairs({{a, a}}) == Relabelling());
  CHECK(Relabelling::from_pairs({{a, b}, {c, b}}) == Relabelling::from_pairs({{c, b}, {a, b}}));
}

TEST_CASE("interning makes id equality structural equality") {
  TermFactory f;
  NameId a = f.name_id("a"), b = f.name_id("b");

  TermId left = f.par(f.act(Action::in(a), f.nil()), f.clock(f.act(Action::out(b), f.nil())));
  TermId right = f.par(f.act(Action::in(a), f.nil()), f.clock(f.act(Action::out(b), f.nil())));
  CHECK(left == right);
  CHECK(structural_eq(left, right));

  // different shapes intern differently
  CHECK(f.sum(left, right) != f.par(left, right));
  CHECK(f.act(Action::in(a), f.nil()) != f.act(Action::out(a), f.nil()));
  CHECK(f.restrict(left, {a}) != f.restrict(left, {b}));
  CHECK(f.rec(a, f.act(Action::in(b), f.var(a))) != f.rec(b, f.act(Action::in(b), f.var(b))));
}

TEST_CASE("id equality agrees with a deep structural compare on a corpus") {
  TermFactory f;
  GeneratorConfig cfg{11, 10, 3};
  std::vector<TermId> terms;
  for (std::uint64_t i = 0; i < 200; ++i) terms.push_back(generate_process(f, cfg, i));
  for (std::size_t i = 0; i < terms.size(); ++i)
    for (std::size_t j = i; j < terms.size(); ++j) {
      CAPTURE(i);
      CAPTURE(j);
      REQUIRE(deep_eq(f, terms[i], terms[j]) == (terms[i] == terms[j]));
    }
}

TEST_CASE("cached node counts match a recount") {
  TermFactory f;
  GeneratorConfig cfg{12, 10, 3};
  for (std::uint64_t i = 0; i < 200; ++i) {
    TermId p = generate_process(f, cfg, i);
    REQUIRE(f.node(p).size == count_nodes(f, p));
  }
}

TEST_CASE("free and unguarded variable sets") {
  TermFactory f;
  NameId x = f.name_id("x"), y = f.name_id("y"), a = f.name_id("a");

  TermId vx = f.var(x);
  CHECK(f.free_vars(vx) == std::vector<NameId>{x});
  CHECK(f.node(vx).unguarded_vars == std::vector<NameId>{x});
  CHECK_FALSE(f.is_closed(vx));

  // an action prefix guards, a clock prefix does not
  TermId guarded = f.act(Action::in(a), vx);
  CHECK(f.free_vars(guarded) == std::vector<NameId>{x});
  CHECK(f.node(guarded).unguarded_vars.empty());
  CHECK(f.is_guarded(x, guarded));

  TermId clocked = f.clock(vx);
  CHECK(f.node(clocked).unguarded_vars == std::vector<NameId>{x});
  CHECK_FALSE(f.is_guarded(x, clocked));

  TermId both = f.sum(guarded, f.var(y));
  CHECK(f.free_vars(both) == std::vector<NameId>{x, y});
  CHECK(f.node(both).unguarded_vars == std::vector<NameId>{y});

  // one guarded and one unguarded occurrence: still unguarded overall
  TermId mixed = f.par(guarded, vx);
  CHECK(f.node(mixed).unguarded_vars == std::vector<NameId>{x});
  CHECK_FALSE(f.is_guarded(x, mixed));

  // binding removes the variable from both sets
  TermId bound = f.rec(x, guarded);
  CHECK(f.is_closed(bound));
  CHECK(f.is_guarded(x, f.nil()));  // vacuous
}

TEST_CASE("validate_process accepts exactly closed guarded terms") {
  TermFactory f;
  NameId x = f.name_id("x"), a = f.name_id("a");

  CHECK(std::holds_alternative<Process>(validate_process(f, t(f, "rec x. a.x | b.0"))));

  auto open = validate_process(f, f.act(Action::in(a), f.var(x)));
  REQUIRE(std::holds_alternative<ProcessError>(open));
  CHECK(std::get<ProcessError>(open).kind == ProcessErrorKind::NotClosed);
  CHECK(std::get<ProcessError>(open).var == x);

  // rec() is lenient; validation reports the unguarded binder after the fact
  auto unguarded = validate_process(f, f.rec(x, f.sum(f.var(x), f.act(Action::in(a), f.var(x)))));
  REQUIRE(std::holds_alternative<ProcessError>(unguarded));
  CHECK(std::get<ProcessError>(unguarded).kind == ProcessErrorKind::UnguardedRecursion);
  CHECK(std::get<ProcessError>(unguarded).var == x);

  // a clock prefix does not guard
  auto clocked = validate_process(f, f.rec(x, f.clock(f.var(x))));
  REQUIRE(std::holds_alternative<ProcessError>(clocked));
  CHECK(std::get<ProcessError>(clocked).kind == ProcessErrorKind::UnguardedRecursion);

  // the defect is recorded even under wrappers
  TermId bad = f.par(f.nil(), f.rec(x, f.var(x)));
  CHECK(f.node(bad).has_invalid_rec);
  CHECK(std::holds_alternative<ProcessError>(validate_process(f, bad)));
}

TEST_CASE("substitution plugs closed terms without renaming") {
  TermFactory f;
  NameId x = f.name_id("x"), y = f.name_id("y"), a = f.name_id("a");
  TermId r = t(f, "rec x. a.x");

  CHECK(f.substitute(f.var(x), x, r) == r);
  CHECK(f.substitute(f.act(Action::in(a), f.var(x)), x, r) == f.act(Action::in(a), r));
  CHECK(f.substitute(f.var(y), x, r) == f.var(y));  // other variables untouched

  // substitution stops at a binder for the same variable
  TermId shadow = f.rec(x, f.act(Action::in(a), f.var(x)));
  CHECK(f.substitute(shadow, x, r) == shadow);
  TermId through = f.rec(y, f.act(Action::in(a), f.par(f.var(x), f.var(y))));
  TermId expected = f.rec(y, f.act(Action::in(a), f.par(r, f.var(y))));
  CHECK(f.substitute(through, x, r) == expected);

  // closed terms are fixed points of any substitution
  TermId closed = t(f, "(a.0 | 'a.0) \\ {a}");
  CHECK(f.substitute(closed, x, r) == closed);

  CHECK_THROWS_AS(f.substitute(f.var(x), x, f.var(y)), SubstituteOpenTerm);
}

TEST_CASE("substitution results validate whenever the context was guarded") {
  TermFactory f;
  NameId y = f.name_id("y");
  GeneratorConfig cfg{13, 8, 3};
  for (std::uint64_t i = 0; i < 100; ++i) {
    TermId body = generate_open_term(f, cfg, i, y);
    TermId mu = f.rec(y, body);
    TermId ctx = generate_open_term(f, cfg, i + 1000, y);
    TermId plugged = f.substitute(ctx, y, mu);
    CAPTURE(i);
    REQUIRE(f.is_closed(plugged));
    REQUIRE(std::holds_alternative<Process>(validate_process(f, plugged)));
  }
}
