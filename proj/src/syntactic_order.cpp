#include "tacs/syntactic_order.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

namespace tacs {

const std::vector<TermId>& SyntacticOrder::members(TermId q) {
  if (auto it = memo_.find(q); it != memo_.end()) return it->second;
  const TermNode n = f_.node(q);  // copy: the node table may grow below
  std::vector<TermId> out;
  switch (n.kind) {
    case TermKind::Nil:
    case TermKind::Var:
    case TermKind::ActPrefix:
      // Nothing below a slow guard may be removed, so only q itself.
      out.push_back(q);
      break;
    case TermKind::ClockPrefix:
      // Either keep the prefix or drop it; never look deeper.
      out.push_back(q);
      out.push_back(n.child0);
      break;
    case TermKind::Sum: {
      const auto l = members(n.child0);
      const auto r = members(n.child1);
      for (TermId a : l)
        for (TermId b : r) out.push_back(f_.sum(a, b));
      break;
    }
    case TermKind::Par: {
      const auto l = members(n.child0);
      const auto r = members(n.child1);
      for (TermId a : l)
        for (TermId b : r) out.push_back(f_.par(a, b));
      break;
    }
    case TermKind::Restrict:
      for (TermId a : members(n.child0)) out.push_back(f_.restrict(a, n.restrict_set));
      break;
    case TermKind::Relabel:
      for (TermId a : members(n.child0)) out.push_back(f_.relabel(a, n.relabelling));
      break;
    case TermKind::Rec: {
      out.push_back(q);
      // The unfolding clause asks for the variable to stay guarded in the
      // faster body.  For guarded recursions that is automatic; the check
      // only bites on terms built leniently with an unguarded binder.
      for (TermId a : members(n.child0))
        if (f_.is_guarded(n.var, a)) out.push_back(f_.substitute(a, n.var, q));
      break;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return memo_.emplace(q, std::move(out)).first->second;
}

FasterSet SyntacticOrder::faster_set(TermId q) { return {q, members(q)}; }

bool SyntacticOrder::syntactically_faster(TermId p, TermId q) {
  const auto& m = members(q);
  return std::binary_search(m.begin(), m.end(), p);
}

std::vector<TermId> SyntacticOrder::upward_closure(TermId q, std::size_t limit) {
  if (auto it = closure_memo_.find(q); it != closure_memo_.end()) {
    if (it->second.size() <= limit) return it->second;
    throw ClosureLimitExceeded(limit);
  }
  std::unordered_set<TermId> seen{q};
  std::deque<TermId> frontier{q};
  while (!frontier.empty()) {
    TermId t = frontier.front();
    frontier.pop_front();
    for (TermId m : members(t)) {
      if (seen.insert(m).second) {
        if (seen.size() > limit) throw ClosureLimitExceeded(limit);
        frontier.push_back(m);
      }
    }
  }
  std::vector<TermId> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  closure_memo_.emplace(q, out);
  return out;
}

bool SyntacticOrder::faster_plus(TermId p, TermId q, std::size_t limit) {
  auto closure = upward_closure(q, limit);
  return std::binary_search(closure.begin(), closure.end(), p);
}

}  // namespace tacs
