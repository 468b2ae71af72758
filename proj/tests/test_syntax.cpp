#include <doctest.h>

#include <string>
#include <variant>

#include "helpers.hpp"
#include "tacs/errors.hpp"
#include "tacs/generator.hpp"
#include "tacs/syntax.hpp"
#include "tacs/term.hpp"

using namespace tacs;
using tacs::test::t;

namespace {

ParseError err(TermFactory& f, std::string_view text) {
  ParseResult r = parse(f, text);
  REQUIRE_MESSAGE(!r.ok(), "expected a parse error: " << std::string(text));
  return *r.error;
}

}  // namespace

TEST_CASE("atoms and prefixes parse to the expected trees") {
  TermFactory f;
  NameId a = f.name_id("a"), b = f.name_id("b");

  CHECK(t(f, "0") == f.nil());
  CHECK(t(f, "x") == f.var(f.name_id("x")));
  CHECK(t(f, "a.0") == f.act(Action::in(a), f.nil()));
  CHECK(t(f, "'a.0") == f.act(Action::out(a), f.nil()));
  CHECK(t(f, "tau.0") == f.act(Action::tau(), f.nil()));
  CHECK(t(f, "s.0") == f.clock(f.nil()));
  CHECK(t(f, "sigma.0") == f.clock(f.nil()));  // synonym
  CHECK(t(f, "s.0") == t(f, "sigma.0"));
  CHECK(t(f, "rec x. a.x") == f.rec(f.name_id("x"), f.act(Action::in(a), f.var(f.name_id("x")))));
  CHECK(t(f, "a.b.0") == f.act(Action::in(a), f.act(Action::in(b), f.nil())));
  CHECK(t(f, "  a . 0  ") == t(f, "a.0"));
}

TEST_CASE("operator precedence: postfix, prefix, parallel, sum") {
  TermFactory f;
  TermId a0 = t(f, "a.0"), b0 = t(f, "b.0"), c0 = t(f, "c.0");

  CHECK(t(f, "a.0 + b.0 | c.0") == f.sum(a0, f.par(b0, c0)));
  CHECK(t(f, "(a.0 + b.0) | c.0") == f.par(f.sum(a0, b0), c0));
  CHECK(t(f, "a.0 + b.0 + c.0") == f.sum(f.sum(a0, b0), c0));  // left associative
  CHECK(t(f, "a.0 | b.0 | c.0") == f.par(f.par(a0, b0), c0));

  // a prefix swallows everything up to the next operator
  CHECK(t(f, "a.b.0 | c.0") == f.par(t(f, "a.b.0"), c0));
  CHECK(t(f, "s.a.0 + b.0") == f.sum(f.clock(a0), b0));

  // restriction and relabelling bind tighter than prefixes: a.0 \ {a}
  // restricts the continuation, (a.0) \ {a} restricts the whole prefix
  NameId a = f.name_id("a"), b = f.name_id("b");
  CHECK(t(f, "a.0 \\ {a}") == f.act(Action::in(a), f.restrict(f.nil(), {a})));
  CHECK(t(f, "(a.0) \\ {a}") == f.restrict(a0, {a}));
  CHECK(t(f, "(a.0 | 'a.0) \\ {a}") == f.restrict(f.par(a0, t(f, "'a.0")), {a}));
  CHECK(t(f, "(a.0) \\ {a, b} ") == f.restrict(a0, {a, b}));

  // relabelling entries read target/source
  CHECK(t(f, "(a.0)[b/a]") == f.relabel(a0, Relabelling::from_pairs({{a, b}})));
  CHECK(t(f, "(a.0)[b/a, a/b]") ==
        f.relabel(a0, Relabelling::from_pairs({{a, b}, {b, a}})));
  // postfix operators chain left to right
  CHECK(t(f, "(a.0)[b/a] \\ {b}") ==
        f.restrict(f.relabel(a0, Relabelling::from_pairs({{a, b}})), {b}));
}

TEST_CASE("parse errors carry a kind and a span inside the text") {
  TermFactory f;

  CHECK(err(f, "a.").kind == ParseErrorKind::Syntax);
  CHECK(err(f, "(a.0").kind == ParseErrorKind::Syntax);
  CHECK(err(f, "a.0 +").kind == ParseErrorKind::Syntax);
  CHECK(err(f, "a.0 b.0").kind == ParseErrorKind::Syntax);  // trailing input
  CHECK(err(f, "").kind == ParseErrorKind::Syntax);
  CHECK(err(f, "?").kind == ParseErrorKind::Lex);
  CHECK(err(f, "A.0").kind == ParseErrorKind::Lex);

  CHECK(err(f, "(a.0) \\ {tau}").kind == ParseErrorKind::TauInRestriction);
  CHECK(err(f, "(a.0)[tau/a]").kind == ParseErrorKind::TauInRelabelling);
  CHECK(err(f, "(a.0)[b/tau]").kind == ParseErrorKind::TauInRelabelling);

  CHECK(err(f, "rec x. x").kind == ParseErrorKind::UnguardedRecursion);
  CHECK(err(f, "rec x. s.x").kind == ParseErrorKind::UnguardedRecursion);
  CHECK(err(f, "rec x. x + a.x").kind == ParseErrorKind::UnguardedRecursion);

  // rec binds like a prefix, so the trailing x falls outside the binder:
  // the term parses as (rec x. a.x) + x and is merely open, not ill-formed
  {
    NameId x = f.name_id("x"), a = f.name_id("a");
    TermId u = t(f, "rec x. a.x + x");
    CHECK(u == f.sum(f.rec(x, f.act(Action::in(a), f.var(x))), f.var(x)));
    auto v = validate_process(f, u);
    auto* pe = std::get_if<ProcessError>(&v);
    REQUIRE(pe != nullptr);
    CHECK(pe->kind == ProcessErrorKind::NotClosed);
  }

  // reserved words cannot be names
  CHECK_FALSE(parse(f, "rec.0").ok());
  CHECK_FALSE(parse(f, "(a.0) \\ {s}").ok());

  ParseError e = err(f, "a.0 + ?");
  CHECK(e.span.begin == 6);
  CHECK(e.span.end <= 7);
  CHECK(!e.message.empty());
  CHECK(std::string(to_string(e.kind)) == "Lex");
}

TEST_CASE("parse_process additionally requires closedness") {
  TermFactory f;

  CHECK(parse_process(f, "rec x. a.x").ok());
  ParseProcessResult r = parse_process(f, "a.x + b.0");
  REQUIRE_FALSE(r.ok());
  CHECK(r.error->kind == ParseErrorKind::UnboundVariable);
  CHECK(r.error->span.begin == 2);  // points at the occurrence of x
  CHECK(r.error->span.end == 3);

  // parse() itself is fine with open terms
  CHECK(parse(f, "a.x + b.0").ok());
}

TEST_CASE("print emits minimal parentheses and parse inverts it") {
  TermFactory f;

  CHECK(print(f, t(f, "(a.0 + b.0) + c.0")) == "a.0 + b.0 + c.0");
  CHECK(print(f, t(f, "a.0 + (b.0 + c.0)")) == "a.0 + (b.0 + c.0)");
  CHECK(print(f, t(f, "(a.0 | b.0) | c.0")) == "a.0 | b.0 | c.0");
  CHECK(print(f, t(f, "a.0 + b.0 | c.0")) == "a.0 + b.0 | c.0");
  CHECK(print(f, t(f, "(a.0 + b.0) | c.0")) == "(a.0 + b.0) | c.0");
  CHECK(print(f, t(f, "sigma.a.0")) == "s.a.0");
  CHECK(print(f, t(f, "(s.a.0) \\ {a}")) == "(s.a.0) \\ {a}");
  CHECK(print(f, t(f, "a.0 \\ {a}")) == "a.0 \\ {a}");
  CHECK(print(f, t(f, "rec x. a.(x | b.0)")) == "rec x. a.(x | b.0)");
  CHECK(print(f, Action::in(f.name_id("a"))) == "a");
  CHECK(print(f, Action::out(f.name_id("a"))) == "'a");
  CHECK(print(f, Action::tau()) == "tau");

  for (const char* text :
       {"0", "a.tau.'b.0", "s.s.s.a.0", "(a.0 | 'a.0) \\ {a}", "rec x. s.(a.x + b.x)",
        "(a.0 + tau.0) | (b.0)[a/b]", "((a.b.0) \\ {b})[c/a] + s.0",
        "rec x. a.((x | b.x) \\ {b})"}) {
    CAPTURE(text);
    TermId u = t(f, text);
    REQUIRE(t(f, print(f, u)) == u);
  }
}

TEST_CASE("round trip on a generated corpus") {
  TermFactory f;
  GeneratorConfig cfg{21, 10, 4};
  for (std::uint64_t i = 0; i < 300; ++i) {
    TermId p = generate_process(f, cfg, i);
    TermId padded = insert_clock_prefixes(f, p, i);
    for (TermId u : {p, padded}) {
      CAPTURE(i);
      CAPTURE(print(f, u));
      REQUIRE(t(f, print(f, u)) == u);
      // printing is stable, not just invertible
      REQUIRE(print(f, t(f, print(f, u))) == print(f, u));
    }
  }
}

TEST_CASE("JSON encoding round trips and rejects malformed documents") {
  TermFactory f;

  for (const char* text :
       {"0", "a.'b.tau.0", "s.a.0 + b.0", "(a.0 | 'a.0) \\ {a}", "rec x. a.(x[b/a])",
        "(a.0)[b/a, a/b]"}) {
    CAPTURE(text);
    TermId u = t(f, text);
    REQUIRE(from_json(f, to_json(f, u)) == u);
  }

  // round trip through a fresh factory: the encoding is self-contained
  TermId u = t(f, "rec x. s.(a.x + 'b.0) \\ {b}");
  TermFactory g;
  TermId copy = from_json(g, to_json(f, u));
  CHECK(print(g, copy) == print(f, u));

  CHECK_THROWS_AS(from_json(f, "not json"), JsonFormatError);
  CHECK_THROWS_AS(from_json(f, "[]"), JsonFormatError);
  CHECK_THROWS_AS(from_json(f, "{}"), JsonFormatError);
  CHECK_THROWS_AS(from_json(f, R"({"frob": {}})"), JsonFormatError);
  CHECK_THROWS_AS(from_json(f, R"({"nil": {}, "var": {"name": "x"}})"), JsonFormatError);
  CHECK_THROWS_AS(from_json(f, R"({"var": {}})"), JsonFormatError);
  CHECK_THROWS_AS(from_json(f, R"({"var": {"name": "Tau"}})"), JsonFormatError);
  CHECK_THROWS_AS(from_json(f, R"({"act": {"action": {"tau": {}}}})"), JsonFormatError);
  CHECK_THROWS_AS(from_json(f, R"({"clock": {"next": 7}})"), JsonFormatError);
  CHECK_THROWS_AS(from_json(f, R"({"restrict": {"names": ["tau"], "next": {"nil": {}}}})"),
                  JsonFormatError);
  // semantic rules hold for JSON input too: guarded recursion only
  CHECK_THROWS_AS(from_json(f, R"({"rec": {"var": "x", "body": {"var": {"name": "x"}}}})"),
                  JsonFormatError);
}
