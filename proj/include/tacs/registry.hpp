#pragma once

// Reproductions of the worked examples behind the documented claims.  Each id
// rebuilds the processes involved from scratch, replays the claimed
// transitions, verdicts and counts, and reports every mismatch.  Verdicts are
// audited on the spot: a holds verdict must carry a validating witness, a
// fails verdict a replayable refutation.
//
//   sigma-skip             a tower of clock prefixes collapses by any amount
//                          under type 2 but steps singly under type 1
//   parallel-skip          components may skip unequal amounts under type 2,
//                          reaching states no type-1 sequence reaches
//   urgency-blocks-tick    an urgent internal synchronisation forbids ticking
//   coherence-triple       the type-2 step, its type-1 shadow, and the
//                          syntactic order between their targets
//   indexed-counterexample a pair inside the naive preorder that every
//                          bounded credit count rejects
//   precongruence-failure  naive acceptance that breaks under parallel
//                          composition; strong rejects the culprit up front
//   relation-growth?n=N    the family where the combined relation needs only
//                          4(n+1) pairs while type-bound relations are forced
//                          to grow with the state counts (default n=2)

#include <string>
#include <vector>

#include "tacs/suites.hpp"

namespace tacs {

const std::vector<std::string>& example_ids();

// Throws UnknownExample for unregistered ids (relation-growth accepts a ?n=N
// suffix with 1 <= N <= 8).
SuiteReport reproduce(const std::string& id);

}  // namespace tacs
