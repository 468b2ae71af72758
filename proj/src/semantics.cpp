#include "tacs/semantics.hpp"

#include <algorithm>

namespace tacs {

namespace {

template <typename T>
void sort_unique(std::vector<T>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

bool contains(const std::vector<Action>& s, Action a) {
  return std::binary_search(s.begin(), s.end(), a);
}

}  // namespace

const std::vector<Action>& Semantics::urgent_set(TermId t) {
  if (auto it = urgent_.find(t); it != urgent_.end()) return it->second;
  const TermNode n = f_.node(t);  // copy: recursion may grow the node table
  std::vector<Action> out;
  switch (n.kind) {
    case TermKind::Nil:
    case TermKind::Var:
    case TermKind::ClockPrefix:
      break;  // nothing is urgent
    case TermKind::ActPrefix:
      out.push_back(n.action);
      break;
    case TermKind::Sum: {
      out = urgent_set(n.child0);
      const auto& r = urgent_set(n.child1);
      out.insert(out.end(), r.begin(), r.end());
      break;
    }
    case TermKind::Par: {
      const auto& l = urgent_set(n.child0);
      const auto& r = urgent_set(n.child1);
      out = l;
      out.insert(out.end(), r.begin(), r.end());
      // A synchronisation both sides insist on is itself urgent.
      bool sync = false;
      for (Action a : l)
        if (a.is_visible() && contains(r, complement(a))) sync = true;
      if (sync) out.push_back(Action::tau());
      break;
    }
    case TermKind::Restrict: {
      for (Action a : urgent_set(n.child0)) {
        bool blocked = a.is_visible() &&
                       std::binary_search(n.restrict_set.begin(), n.restrict_set.end(), a.name);
        if (!blocked) out.push_back(a);
      }
      break;
    }
    case TermKind::Relabel:
      for (Action a : urgent_set(n.child0)) out.push_back(n.relabelling.apply(a));
      break;
    case TermKind::Rec:
      out = urgent_set(n.child0);
      break;
  }
  sort_unique(out);
  return urgent_.emplace(t, std::move(out)).first->second;
}

const std::vector<std::pair<Action, TermId>>& Semantics::action_successors(TermId t) {
  if (auto it = actions_.find(t); it != actions_.end()) return it->second;
  const TermNode n = f_.node(t);
  std::vector<std::pair<Action, TermId>> out;
  switch (n.kind) {
    case TermKind::Nil:
    case TermKind::Var:
      break;
    case TermKind::ActPrefix:
      out.emplace_back(n.action, n.child0);
      break;
    case TermKind::ClockPrefix:
      // The clock prefix is transparent to actions.
      out = action_successors(n.child0);
      break;
    case TermKind::Sum: {
      out = action_successors(n.child0);
      const auto& r = action_successors(n.child1);
      out.insert(out.end(), r.begin(), r.end());
      break;
    }
    case TermKind::Par: {
      const auto l = action_successors(n.child0);
      const auto r = action_successors(n.child1);
      for (const auto& [a, p] : l) out.emplace_back(a, f_.par(p, n.child1));
      for (const auto& [a, q] : r) out.emplace_back(a, f_.par(n.child0, q));
      for (const auto& [a, p] : l) {
        if (!a.is_visible()) continue;
        Action want = complement(a);
        for (const auto& [b, q] : r)
          if (b == want) out.emplace_back(Action::tau(), f_.par(p, q));
      }
      break;
    }
    case TermKind::Restrict: {
      for (const auto& [a, p] : action_successors(n.child0)) {
        bool blocked = a.is_visible() &&
                       std::binary_search(n.restrict_set.begin(), n.restrict_set.end(), a.name);
        if (!blocked) out.emplace_back(a, f_.restrict(p, n.restrict_set));
      }
      break;
    }
    case TermKind::Relabel:
      for (const auto& [a, p] : action_successors(n.child0))
        out.emplace_back(n.relabelling.apply(a), f_.relabel(p, n.relabelling));
      break;
    case TermKind::Rec:
      for (const auto& [a, p] : action_successors(n.child0))
        out.emplace_back(a, f_.substitute(p, n.var, t));
      break;
  }
  sort_unique(out);
  return actions_.emplace(t, std::move(out)).first->second;
}

const std::vector<TermId>& Semantics::clock_successors(TermId t, SemanticsType type) {
  auto& memo = type == SemanticsType::Type1 ? clock1_ : clock2_;
  if (auto it = memo.find(t); it != memo.end()) return it->second;
  const TermNode n = f_.node(t);
  std::vector<TermId> out;
  switch (n.kind) {
    case TermKind::Nil:
      out.push_back(t);
      break;
    case TermKind::Var:
      break;  // literally no rule applies
    case TermKind::ActPrefix:
      // Visible prefixes idle; a tau prefix must fire now.
      if (n.action.is_visible()) out.push_back(t);
      break;
    case TermKind::ClockPrefix:
      out.push_back(n.child0);
      if (type == SemanticsType::Type2) {
        const auto& deeper = clock_successors(n.child0, type);
        out.insert(out.end(), deeper.begin(), deeper.end());
      }
      break;
    case TermKind::Sum: {
      const auto l = clock_successors(n.child0, type);
      const auto r = clock_successors(n.child1, type);
      for (TermId p : l)
        for (TermId q : r) out.push_back(f_.sum(p, q));
      break;
    }
    case TermKind::Par: {
      // Maximal progress: no tick while an internal action is urgent.
      if (contains(urgent_set(t), Action::tau())) break;
      const auto l = clock_successors(n.child0, type);
      const auto r = clock_successors(n.child1, type);
      for (TermId p : l)
        for (TermId q : r) out.push_back(f_.par(p, q));
      break;
    }
    case TermKind::Restrict:
      for (TermId p : clock_successors(n.child0, type))
        out.push_back(f_.restrict(p, n.restrict_set));
      break;
    case TermKind::Relabel:
      for (TermId p : clock_successors(n.child0, type))
        out.push_back(f_.relabel(p, n.relabelling));
      break;
    case TermKind::Rec:
      for (TermId p : clock_successors(n.child0, type))
        out.push_back(f_.substitute(p, n.var, t));
      break;
  }
  sort_unique(out);
  return memo.emplace(t, std::move(out)).first->second;
}

}  // namespace tacs
