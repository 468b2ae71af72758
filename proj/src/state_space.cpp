#include "tacs/state_space.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_set>

namespace tacs {

StateSpace explore(Semantics& sem, Process root, std::size_t limit) {
  return explore(sem, root.id(), limit);
}

StateSpace explore(Semantics& sem, TermId root, std::size_t limit) {
  TermFactory& f = sem.factory();

  std::unordered_set<TermId> seen{root};
  std::deque<TermId> frontier{root};
  while (!frontier.empty()) {
    TermId t = frontier.front();
    frontier.pop_front();
    auto visit = [&](TermId next) {
      if (seen.insert(next).second) {
        if (seen.size() > limit) throw StateLimitExceeded(limit);
        frontier.push_back(next);
      }
    };
    for (const auto& [a, next] : sem.action_successors(t)) {
      (void)a;
      visit(next);
    }
    for (TermId next : sem.clock_successors(t, SemanticsType::Type1)) visit(next);
    for (TermId next : sem.clock_successors(t, SemanticsType::Type2)) visit(next);
  }

  StateSpace s;
  s.root = root;

  std::vector<std::pair<std::string, TermId>> order;
  order.reserve(seen.size());
  for (TermId t : seen) order.emplace_back(print(f, t), t);
  std::sort(order.begin(), order.end());

  s.states.reserve(order.size());
  s.printed.reserve(order.size());
  for (auto& [text, t] : order) {
    s.index.emplace(t, static_cast<StateIdx>(s.states.size()));
    s.states.push_back(t);
    s.printed.push_back(std::move(text));
  }
  s.root_index = s.index.at(root);

  // Label table: every action that appears on an edge or in an urgent set,
  // ordered by printed form.
  std::map<std::string, Action> labels;
  for (TermId t : s.states) {
    for (const auto& [a, next] : sem.action_successors(t)) {
      (void)next;
      labels.emplace(print(f, a), a);
    }
    for (Action a : sem.urgent_set(t)) labels.emplace(print(f, a), a);
  }
  std::unordered_map<std::string, LabelIdx> label_index;
  for (const auto& [text, a] : labels) {
    label_index.emplace(text, static_cast<LabelIdx>(s.label_actions.size()));
    s.label_actions.push_back(a);
    s.label_text.push_back(text);
  }

  s.act_edges.resize(s.states.size());
  s.clock1_edges.resize(s.states.size());
  s.clock2_edges.resize(s.states.size());
  s.urgent.resize(s.states.size());
  for (StateIdx i = 0; i < s.states.size(); ++i) {
    TermId t = s.states[i];
    for (const auto& [a, next] : sem.action_successors(t))
      s.act_edges[i].emplace_back(label_index.at(print(f, a)), s.index.at(next));
    std::sort(s.act_edges[i].begin(), s.act_edges[i].end());
    for (TermId next : sem.clock_successors(t, SemanticsType::Type1))
      s.clock1_edges[i].push_back(s.index.at(next));
    std::sort(s.clock1_edges[i].begin(), s.clock1_edges[i].end());
    for (TermId next : sem.clock_successors(t, SemanticsType::Type2))
      s.clock2_edges[i].push_back(s.index.at(next));
    std::sort(s.clock2_edges[i].begin(), s.clock2_edges[i].end());
    for (Action a : sem.urgent_set(t)) s.urgent[i].push_back(label_index.at(print(f, a)));
    std::sort(s.urgent[i].begin(), s.urgent[i].end());
  }
  return s;
}

std::size_t reachable_state_count(Semantics& sem, TermId root, SemanticsType type,
                                  std::size_t limit) {
  std::unordered_set<TermId> seen{root};
  std::deque<TermId> frontier{root};
  while (!frontier.empty()) {
    TermId t = frontier.front();
    frontier.pop_front();
    auto visit = [&](TermId next) {
      if (seen.insert(next).second) {
        if (seen.size() > limit) throw StateLimitExceeded(limit);
        frontier.push_back(next);
      }
    };
    for (const auto& [a, next] : sem.action_successors(t)) {
      (void)a;
      visit(next);
    }
    for (TermId next : sem.clock_successors(t, type)) visit(next);
  }
  return seen.size();
}

std::vector<std::pair<StateIdx, StateIdx>> product_reachable_pairs(const StateSpace& p,
                                                                   const StateSpace& q) {
  // Label indices differ between the two spaces; match on printed text.
  std::unordered_map<std::string, LabelIdx> q_labels;
  for (LabelIdx i = 0; i < q.label_text.size(); ++i) q_labels.emplace(q.label_text[i], i);

  auto key = [&q](StateIdx a, StateIdx b) {
    return static_cast<std::uint64_t>(a) * q.size() + b;
  };
  std::unordered_set<std::uint64_t> seen;
  std::deque<std::pair<StateIdx, StateIdx>> frontier;
  auto visit = [&](StateIdx a, StateIdx b) {
    if (seen.insert(key(a, b)).second) frontier.emplace_back(a, b);
  };
  visit(p.root_index, q.root_index);
  while (!frontier.empty()) {
    auto [a, b] = frontier.front();
    frontier.pop_front();
    for (const auto& [pl, pt] : p.act_edges[a]) {
      auto it = q_labels.find(p.label_text[pl]);
      if (it == q_labels.end()) continue;
      for (const auto& [ql, qt] : q.act_edges[b])
        if (ql == it->second) visit(pt, qt);
    }
    for (StateIdx pt : p.clock1_edges[a])
      for (StateIdx qt : q.clock1_edges[b]) visit(pt, qt);
  }

  std::vector<std::pair<StateIdx, StateIdx>> out;
  out.reserve(seen.size());
  for (std::uint64_t k : seen)
    out.emplace_back(static_cast<StateIdx>(k / q.size()), static_cast<StateIdx>(k % q.size()));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace tacs
