#pragma once

// Independent audits of engine verdicts.
//
// validate_witness re-checks a claimed witness relation clause by clause,
// membership-testing over term-level hash sets and reading transitions
// straight off the explored spaces.  It shares no data structures with the
// fixed-point engine, so an engine bug cannot vouch for itself.
//
// replay_refutation walks a claimed refutation from the two roots: every
// attacker move and every followed defender answer must exist in the
// transition sets, and the final step's violation must be visible in the
// transition sets alone (no relation needed).  Intermediate steps certify one
// concrete play of the game, not that the defender had no better answer;
// optimality of defender play is exactly what the fixed point established.

#include <string>

#include "tacs/preorder.hpp"
#include "tacs/state_space.hpp"

namespace tacs {

// True iff every entry lies in the explored spaces and every defining clause
// of w.kind holds inside the entry set.  For indexed witnesses w.kind.cap
// must carry the resolved credit cap.  On failure, *why names the first
// violated clause when a non-null pointer is given.
bool validate_witness(const WitnessRelation& w, const StateSpace& space_p,
                      const StateSpace& space_q, std::string* why = nullptr);

// True iff the refutation replays from (space_p.root, space_q.root, credit 0)
// under the clauses of `kind` and ends in a terminal violation.  For indexed
// refutations kind.cap must carry the resolved cap.
bool replay_refutation(const Refutation& r, const RelationKind& kind, const StateSpace& space_p,
                       const StateSpace& space_q, std::string* why = nullptr);

}  // namespace tacs
