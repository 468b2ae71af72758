#pragma once

// The syntactic faster-than preorder.  A term p is syntactically faster than
// q when p is q with some clock prefixes deleted, compatibly placed: the
// relation is generated by reflexivity, "P is faster than s.P", congruence
// under sum, parallel, restriction and relabelling, and unfolding-compatible
// recursion (p' faster than the body lifts to p'[rec x. body / x] faster than
// the recursion).  It is not transitive by itself; faster_plus closes it.
//
// faster_set(q) enumerates every p generated this way, by structural
// recursion on q.  The recursion-unfolding clause substitutes the whole
// recursion into candidates drawn from the body; when the recursion term is
// open this would substitute an open term, which substitution does not
// support, so the operation reports SubstituteOpenTerm in that corner.

#include <cstddef>
#include <unordered_map>
#include <vector>

#include "tacs/term.hpp"

namespace tacs {

inline constexpr std::size_t kDefaultClosureLimit = 100000;

struct FasterSet {
  TermId base;
  std::vector<TermId> members;  // sorted by id; always contains base
};

class SyntacticOrder {
 public:
  explicit SyntacticOrder(TermFactory& f) : f_(f) {}

  FasterSet faster_set(TermId q);

  // p generated-faster-than q (one step of the order, no transitive closure).
  bool syntactically_faster(TermId p, TermId q);

  // Everything faster than q under the transitive closure, q included.
  // Iterates faster_set to a fixed point; throws ClosureLimitExceeded when
  // the set passes `limit`.
  std::vector<TermId> upward_closure(TermId q, std::size_t limit = kDefaultClosureLimit);

  // p in upward_closure(q).
  bool faster_plus(TermId p, TermId q, std::size_t limit = kDefaultClosureLimit);

 private:
  const std::vector<TermId>& members(TermId q);

  TermFactory& f_;
  std::unordered_map<TermId, std::vector<TermId>> memo_;
  std::unordered_map<TermId, std::vector<TermId>> closure_memo_;
};

}  // namespace tacs
