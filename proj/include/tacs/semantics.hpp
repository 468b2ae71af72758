#pragma once

// Operational semantics of TACS.
//
// Action transitions are the CCS ones, with one twist: a clock prefix is
// transparent to actions, so s.P inherits every action step of P.  Clock
// transitions come in two flavours.  Type 1 lets s.P tick exactly to P; it is
// deterministic (at most one successor).  Type 2 additionally lets s.P absorb
// a tick of P itself, so a tower of clock prefixes can collapse by any
// positive amount in one step.  Type 1 steps are always type 2 steps.
//
// Both relations enforce maximal progress: a term with an urgent internal
// action (tau in its urgent set) cannot tick.  Visible prefixes and nil
// idle; tau prefixes never do.
//
// All rules are applied literally to open terms: a free variable has no
// transitions and an empty urgent set, which silently disables any composite
// rule that needs a step from it.

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tacs/term.hpp"

namespace tacs {

enum class SemanticsType : std::uint8_t { Type1 = 1, Type2 = 2 };

// Memoising evaluator for one factory.  Like the factory itself it is single
// threaded; results are stable references into internal tables.
class Semantics {
 public:
  explicit Semantics(TermFactory& f) : f_(f) {}

  TermFactory& factory() { return f_; }

  // Actions the term insists on performing before time may pass.  Sorted.
  const std::vector<Action>& urgent_set(TermId t);

  // All action steps, sorted by (action, target) and deduplicated.
  const std::vector<std::pair<Action, TermId>>& action_successors(TermId t);

  // All clock steps of the given type, sorted by target and deduplicated.
  // Type 1 yields at most one successor.
  const std::vector<TermId>& clock_successors(TermId t, SemanticsType type);

  bool can_tick(TermId t, SemanticsType type) { return !clock_successors(t, type).empty(); }

 private:
  TermFactory& f_;
  std::unordered_map<TermId, std::vector<Action>> urgent_;
  std::unordered_map<TermId, std::vector<std::pair<Action, TermId>>> actions_;
  std::unordered_map<TermId, std::vector<TermId>> clock1_, clock2_;
};

}  // namespace tacs
