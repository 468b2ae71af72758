#pragma once

// Small conveniences shared by the unit tests.  Everything asserts on the
// spot, so a malformed fixture fails the test that wrote it instead of
// surfacing later as a confusing downstream error.

#include <doctest.h>

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

#include "tacs/syntax.hpp"
#include "tacs/term.hpp"

namespace tacs::test {

inline TermId t(TermFactory& f, std::string_view text) {
  ParseResult r = parse(f, text);
  REQUIRE_MESSAGE(r.ok(), "parse failed: " << std::string(text) << " (" << r.error->message
                                           << ")");
  return *r.term;
}

inline Process proc(TermFactory& f, std::string_view text) {
  ParseProcessResult r = parse_process(f, text);
  REQUIRE_MESSAGE(r.ok(), "not a process: " << std::string(text));
  return *r.process;
}

// Sorted printed forms, convenient for order-insensitive set comparison.
inline std::vector<std::string> printed(const TermFactory& f, const std::vector<TermId>& ts) {
  std::vector<std::string> out;
  out.reserve(ts.size());
  for (TermId u : ts) out.push_back(print(f, u));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace tacs::test
