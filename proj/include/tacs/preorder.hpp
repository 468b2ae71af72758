#pragma once

// Decision engine for the five faster-than relation families over finite
// explored state spaces:
//
//   naive-i     action bisimulation clauses plus simulation of the faster
//               side's type-i clock steps,
//   delayed-i   the slower side may answer an action inside s*.action.s*
//               and a clock step inside s+,
//   indexed-i   (pair, credit) configurations: an unanswered clock step of
//               the faster side spends one credit, a clock step of the slower
//               side may bank one,
//   strong-i    naive-i plus urgent-set inclusion (slower inside faster)
//               whenever the faster side ticks,
//   combined    actions exact, type-1 steps of the faster side answered by
//               type-2 steps of the slower side under the same urgent-set
//               inclusion.
//
// The engine computes the greatest fixed point by iterated deletion over the
// pair universe reachable from the root pair (every candidate answer of every
// clause is itself in the universe, so the root verdict agrees with the
// fixed point over the full product).  Rounds are synchronous: every pair is
// judged against the relation as it stood at the start of the round, so the
// result and all per-pair deletion rounds are independent of sweep order and
// of the thread count.
//
// Verdicts are self-certifying.  "holds" ships a witness relation, pruned to
// the closure of the root under deterministically chosen answers, which
// validate_witness re-checks clause by clause.  "fails" ships a refutation: a
// move sequence replayed from the root in which each attacked configuration
// was deleted in a strictly earlier round, ending in a violation visible in
// the transition sets alone.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tacs/semantics.hpp"
#include "tacs/state_space.hpp"
#include "tacs/term.hpp"

namespace tacs {

enum class Family : std::uint8_t { Naive, Delayed, Indexed, Strong, Combined };

struct RelationKind {
  Family family{Family::Naive};
  SemanticsType sem{SemanticsType::Type1};  // ignored by Combined
  std::optional<std::size_t> cap{};         // Indexed only; nullopt = automatic

  static RelationKind naive(SemanticsType s) { return {Family::Naive, s, {}}; }
  static RelationKind delayed(SemanticsType s) { return {Family::Delayed, s, {}}; }
  static RelationKind indexed(SemanticsType s, std::optional<std::size_t> cap = {}) {
    return {Family::Indexed, s, cap};
  }
  static RelationKind strong(SemanticsType s) { return {Family::Strong, s, {}}; }
  static RelationKind combined() { return {Family::Combined, SemanticsType::Type1, {}}; }
};

std::string to_string(const RelationKind& k);

// A finite relation certifying a "holds" verdict.  Entries carry a credit
// only for the indexed family (0 otherwise); kind.cap holds the resolved cap.
struct WitnessEntry {
  TermId p{kNoTerm};
  TermId q{kNoTerm};
  std::size_t credit{0};
  friend bool operator==(const WitnessEntry&, const WitnessEntry&) = default;
};

struct WitnessRelation {
  RelationKind kind;
  std::vector<WitnessEntry> entries;  // sorted by (printed p, printed q, credit)
};

// One ply of a refutation.  The attacker move could not be answered inside
// the relation; for every non-terminal step the recorded defender answer is
// the one the replay follows.
struct RefutationStep {
  TermId p{kNoTerm};
  TermId q{kNoTerm};
  std::size_t credit{0};
  int clause{0};            // 1..4, numbering as in the definitions above
  bool attacker_is_p{true}; // clauses 1,3 attack from p; 2,4 from q
  bool clock_move{false};
  Action action{};          // meaningful when !clock_move
  TermId attacker_target{kNoTerm};
  bool terminal{false};     // no answer exists in the transition sets at all
  std::string reason;       // terminal steps: why nothing answers
  TermId defender_target{kNoTerm};   // non-terminal steps
  std::size_t defender_credit{0};
  bool credit_move{false};  // indexed: defender answered via the credit rule
};

struct Refutation {
  std::vector<RefutationStep> steps;
};

struct CheckStats {
  std::size_t p_states{0};
  std::size_t q_states{0};
  std::size_t pairs{0};    // size of the explored pair universe
  std::size_t configs{0};  // indexed: pairs * (cap + 1); otherwise = pairs
  std::size_t rounds{0};   // deletion sweeps, final stable sweep included
  std::size_t credit_cap{0};
};

struct CheckVerdict {
  RelationKind kind;  // cap resolved for indexed
  bool holds{false};
  std::optional<WitnessRelation> witness;
  std::optional<Refutation> refutation;
  CheckStats stats;
};

enum class UniverseMode : std::uint8_t {
  GameClosure,  // pairs reachable in the two-player game (default)
  FullProduct,  // every pair of states; same verdicts, larger sweeps
};

struct CheckPolicy {
  int threads{1};  // 1 = serial reference kernel; 0 = all cores; n = exactly n
  UniverseMode universe{UniverseMode::GameClosure};
  std::size_t config_limit{20000000};
};

// Explores both processes (throws StateLimitExceeded), then decides the
// relation.  Indexed checks with an automatic cap re-run once at cap+1 and
// throw CapUnstable if the verdict flips; ConfigLimitExceeded guards the
// credit blow-up.
CheckVerdict check(Semantics& sem, Process p, Process q, RelationKind kind,
                   std::size_t state_limit, const CheckPolicy& policy = {});

// Surviving pairs of the indexed fixed point, per credit level.  Exposed so
// the credit-monotonicity property (level j contained in level j+1) can be
// audited from outside the engine.
struct IndexedFamily {
  std::size_t cap{0};
  std::vector<std::vector<std::pair<TermId, TermId>>> at_credit;  // sorted by state index
};

IndexedFamily indexed_family(Semantics& sem, Process p, Process q, SemanticsType type,
                             std::optional<std::size_t> cap, std::size_t state_limit,
                             const CheckPolicy& policy = {});

}  // namespace tacs
