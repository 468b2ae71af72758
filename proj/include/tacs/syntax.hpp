#pragma once

// Concrete syntax for TACS terms.
//
//   term   :=  sum
//   sum    :=  par ('+' par)*                      left associative
//   par    :=  prefix ('|' prefix)*                left associative
//   prefix :=  'tau' '.' prefix
//           |  ('s' | 'sigma') '.' prefix          clock prefix
//           |  name '.' prefix                     input action
//           |  '\'' name '.' prefix                output action (co-name)
//           |  'rec' name '.' prefix
//           |  postfix
//   postfix:=  atom ( '\' '{' names '}' | '[' name '/' name (',' ...)* ']' )*
//   atom   :=  '0' | name | '(' sum ')'
//
// Names match [a-z][a-zA-Z0-9_]*; tau, sigma, s and rec are reserved.
// Restriction lists plain names only and blocks both polarities; relabelling
// entries read target/source, so "P[b/a]" renames a to b.  print() emits the
// minimal-parenthesis form and parse(print(t)) returns t for every term.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "tacs/term.hpp"

namespace tacs {

// Byte offsets [begin, end) into the source text.
struct Span {
  std::uint32_t begin{0};
  std::uint32_t end{0};
  friend bool operator==(const Span&, const Span&) = default;
};

enum class ParseErrorKind : std::uint8_t {
  Lex,                 // unknown character or malformed token
  Syntax,              // token sequence does not match the grammar
  TauInRestriction,    // restriction sets hold plain names only
  TauInRelabelling,    // relabelling functions never touch tau
  UnguardedRecursion,  // rec x. P with an unguarded occurrence of x
  UnboundVariable,     // free variable where a process was required
};

struct ParseError {
  ParseErrorKind kind;
  Span span;
  std::string message;
};

const char* to_string(ParseErrorKind k);

// Result of parsing a (possibly open) term.  Exactly one of term/error is set.
struct ParseResult {
  std::optional<TermId> term;
  std::optional<ParseError> error;
  bool ok() const { return term.has_value(); }
};

// Parses a term.  Guardedness of recursion and the tau rules are enforced;
// closedness is not, so free variables are fine here.
ParseResult parse(TermFactory& f, std::string_view text);

// Result of parsing a process: additionally requires the term to be closed
// (kind UnboundVariable otherwise, with the span of the first offending
// occurrence).
struct ParseProcessResult {
  std::optional<Process> process;
  std::optional<ParseError> error;
  bool ok() const { return process.has_value(); }
};

ParseProcessResult parse_process(TermFactory& f, std::string_view text);

// Canonical printer: minimal parentheses, single spaces around '+' and '|',
// prefixes written tightly.  Injective on terms (parse inverts it).
std::string print(const TermFactory& f, TermId t);

std::string print(const TermFactory& f, Action a);

// ── JSON serialisation ──────────────────────────────────────────────────────
//
// Schema, one single-key object per node:
//   {"nil": {}}
//   {"var": {"name": "x"}}
//   {"act": {"action": A, "next": T}}        A = {"name":"a"} | {"coname":"a"}
//                                                | {"tau": {}}
//   {"clock": {"next": T}}
//   {"sum": {"left": T, "right": T}}          {"par": ...} alike
//   {"restrict": {"names": ["a",...], "next": T}}
//   {"relabel": {"map": {"a": "b", ...}, "next": T}}   source -> target
//   {"rec": {"var": "x", "body": T}}

std::string to_json(const TermFactory& f, TermId t);

// Accepts exactly the documents to_json produces (field order free).  Throws
// JsonFormatError on anything else, including terms that violate the tau
// rules or guarded recursion.
TermId from_json(TermFactory& f, std::string_view text);

}  // namespace tacs
