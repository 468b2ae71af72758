#pragma once

// Explicit state graphs.  explore() walks everything reachable from a process
// under action steps and both clock relations, then freezes the result in
// index form: states are numbered in lexicographic order of their printed
// form, so the numbering is reproducible across runs, factories and thread
// counts.  Labels are numbered the same way.

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "tacs/semantics.hpp"
#include "tacs/syntax.hpp"
#include "tacs/term.hpp"

namespace tacs {

using StateIdx = std::uint32_t;
using LabelIdx = std::uint32_t;

struct StateSpace {
  TermId root{kNoTerm};
  StateIdx root_index{0};

  std::vector<TermId> states;        // index -> term, sorted by printed form
  std::vector<std::string> printed;  // index -> canonical text

  std::vector<Action> label_actions;      // label index -> action
  std::vector<std::string> label_text;    // label index -> printed action

  // Per-state data, all index based and sorted.
  std::vector<std::vector<std::pair<LabelIdx, StateIdx>>> act_edges;
  std::vector<std::vector<StateIdx>> clock1_edges;
  std::vector<std::vector<StateIdx>> clock2_edges;
  std::vector<std::vector<LabelIdx>> urgent;

  std::unordered_map<TermId, StateIdx> index;

  StateIdx index_of(TermId t) const { return index.at(t); }
  std::size_t size() const { return states.size(); }
};

// Throws StateLimitExceeded once more than `limit` distinct states appear.
StateSpace explore(Semantics& sem, Process root, std::size_t limit);
StateSpace explore(Semantics& sem, TermId root, std::size_t limit);

// States reachable using action steps plus clock steps of one type only.
std::size_t reachable_state_count(Semantics& sem, TermId root, SemanticsType type,
                                  std::size_t limit);

// Pairs reachable in the product walk from (p.root, q.root): both sides move
// on the same action label, or both tick (type 1 on each side).  Sorted.
std::vector<std::pair<StateIdx, StateIdx>> product_reachable_pairs(const StateSpace& p,
                                                                   const StateSpace& q);

}  // namespace tacs
