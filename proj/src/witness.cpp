#include "tacs/witness.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace tacs {

namespace {

bool fail(std::string* why, const std::string& msg) {
  if (why) *why = msg;
  return false;
}

// Read-only view of one space with label-text lookup and on-demand clock
// closures, keyed by terms rather than engine pair ids.
struct SpaceView {
  const StateSpace& s;
  std::unordered_map<std::string, LabelIdx> label_by_text;
  mutable std::vector<std::vector<StateIdx>> closure1, closure2;

  explicit SpaceView(const StateSpace& space) : s(space) {
    for (LabelIdx i = 0; i < s.label_text.size(); ++i) label_by_text.emplace(s.label_text[i], i);
    closure1.resize(s.size());
    closure2.resize(s.size());
  }

  std::optional<StateIdx> find(TermId t) const {
    auto it = s.index.find(t);
    if (it == s.index.end()) return std::nullopt;
    return it->second;
  }

  // Printed form of an action if it is a label of this space.
  std::optional<std::string> label_of(Action a) const {
    for (LabelIdx l = 0; l < s.label_actions.size(); ++l)
      if (s.label_actions[l] == a) return s.label_text[l];
    return std::nullopt;
  }

  bool has_act_edge(StateIdx from, const std::string& label, StateIdx to) const {
    auto it = label_by_text.find(label);
    if (it == label_by_text.end()) return false;
    const auto& edges = s.act_edges[from];
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(it->second, to));
  }

  std::vector<StateIdx> act_targets(StateIdx from, const std::string& label) const {
    std::vector<StateIdx> out;
    auto it = label_by_text.find(label);
    if (it == label_by_text.end()) return out;
    for (auto [l, t] : s.act_edges[from])
      if (l == it->second) out.push_back(t);
    return out;
  }

  const std::vector<StateIdx>& clock(StateIdx from, SemanticsType type) const {
    return type == SemanticsType::Type1 ? s.clock1_edges[from] : s.clock2_edges[from];
  }

  // States reachable by zero or more clock steps.  Sorted; contains `from`.
  const std::vector<StateIdx>& clock_closure(StateIdx from, SemanticsType type) const {
    auto& slot = (type == SemanticsType::Type1 ? closure1 : closure2)[from];
    if (!slot.empty()) return slot;
    std::unordered_set<StateIdx> seen{from};
    std::deque<StateIdx> work{from};
    while (!work.empty()) {
      StateIdx t = work.front();
      work.pop_front();
      for (StateIdx v : clock(t, type))
        if (seen.insert(v).second) work.push_back(v);
    }
    slot.assign(seen.begin(), seen.end());
    std::sort(slot.begin(), slot.end());
    return slot;
  }

  std::vector<std::string> urgent_texts(StateIdx at) const {
    std::vector<std::string> out;
    for (LabelIdx l : s.urgent[at]) out.push_back(s.label_text[l]);
    return out;  // sorted: label indices follow printed order
  }
};

SemanticsType p_clock_type(const RelationKind& k) {
  return k.family == Family::Combined ? SemanticsType::Type1 : k.sem;
}
SemanticsType q_clock_type(const RelationKind& k) {
  return k.family == Family::Combined ? SemanticsType::Type2 : k.sem;
}

bool urgent_included(const SpaceView& vp, const SpaceView& vq, StateIdx a, StateIdx b) {
  auto pu = vp.urgent_texts(a);
  auto qu = vq.urgent_texts(b);
  return std::includes(pu.begin(), pu.end(), qu.begin(), qu.end());
}

// Endpoints of ticks* . label . ticks* from `from`.  Sorted.
std::vector<StateIdx> delayed_answers(const SpaceView& vq, StateIdx from, const std::string& label,
                                      SemanticsType type) {
  std::unordered_set<StateIdx> ends;
  for (StateIdx mid : vq.clock_closure(from, type))
    for (StateIdx hit : vq.act_targets(mid, label))
      for (StateIdx end : vq.clock_closure(hit, type)) ends.insert(end);
  std::vector<StateIdx> out(ends.begin(), ends.end());
  std::sort(out.begin(), out.end());
  return out;
}

// Endpoints of one or more ticks from `from`.  Sorted.
std::vector<StateIdx> clock_plus(const SpaceView& vq, StateIdx from, SemanticsType type) {
  std::unordered_set<StateIdx> ends;
  for (StateIdx mid : vq.clock(from, type))
    for (StateIdx end : vq.clock_closure(mid, type)) ends.insert(end);
  std::vector<StateIdx> out(ends.begin(), ends.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

bool validate_witness(const WitnessRelation& w, const StateSpace& space_p,
                      const StateSpace& space_q, std::string* why) {
  const RelationKind& kind = w.kind;
  if (kind.family == Family::Indexed && !kind.cap)
    return fail(why, "indexed witness without a resolved credit cap");
  const std::size_t cap = kind.family == Family::Indexed ? *kind.cap : 0;

  SpaceView vp(space_p), vq(space_q);

  auto key = [](StateIdx a, StateIdx b) { return (static_cast<std::uint64_t>(a) << 32) | b; };
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> credits;
  struct Entry {
    StateIdx a, b;
    std::size_t j;
  };
  std::vector<Entry> entries;
  entries.reserve(w.entries.size());
  for (const auto& e : w.entries) {
    auto a = vp.find(e.p);
    auto b = vq.find(e.q);
    if (!a || !b) return fail(why, "witness entry outside the explored spaces");
    if (kind.family != Family::Indexed && e.credit != 0)
      return fail(why, "credit on a non-indexed witness entry");
    if (e.credit > cap) return fail(why, "witness entry credit exceeds the cap");
    entries.push_back({*a, *b, e.credit});
    credits[key(*a, *b)].push_back(e.credit);
  }
  auto member = [&](StateIdx a, StateIdx b, std::size_t j) {
    auto it = credits.find(key(a, b));
    if (it == credits.end()) return false;
    return std::find(it->second.begin(), it->second.end(), j) != it->second.end();
  };

  SemanticsType pt = p_clock_type(kind);
  SemanticsType qt = q_clock_type(kind);

  for (const auto& [a, b, j] : entries) {
    // Clause 1: p acts, q answers (delayed: inside tick closures).
    for (auto [l, a2] : space_p.act_edges[a]) {
      const std::string& text = space_p.label_text[l];
      bool ok = false;
      if (kind.family == Family::Delayed) {
        for (StateIdx b2 : delayed_answers(vq, b, text, qt))
          if (member(a2, b2, j)) {
            ok = true;
            break;
          }
      } else {
        for (StateIdx b2 : vq.act_targets(b, text))
          if (member(a2, b2, j)) {
            ok = true;
            break;
          }
      }
      if (!ok) return fail(why, "clause 1 violated at (" + space_p.printed[a] + ", " +
                                    space_q.printed[b] + ") on " + text);
    }
    // Clause 2: q acts, p answers exactly.
    for (auto [l, b2] : space_q.act_edges[b]) {
      const std::string& text = space_q.label_text[l];
      bool ok = false;
      for (StateIdx a2 : vp.act_targets(a, text))
        if (member(a2, b2, j)) {
          ok = true;
          break;
        }
      if (!ok) return fail(why, "clause 2 violated at (" + space_p.printed[a] + ", " +
                                    space_q.printed[b] + ") on " + text);
    }
    // Clause 3: p ticks.
    const auto& pc = vp.clock(a, pt);
    bool urgent_needed = kind.family == Family::Strong || kind.family == Family::Combined;
    if (urgent_needed && !pc.empty() && !urgent_included(vp, vq, a, b))
      return fail(why, "urgent-set inclusion violated at (" + space_p.printed[a] + ", " +
                           space_q.printed[b] + ")");
    for (StateIdx a2 : pc) {
      bool ok = false;
      if (kind.family == Family::Delayed) {
        for (StateIdx b2 : clock_plus(vq, b, qt))
          if (member(a2, b2, j)) {
            ok = true;
            break;
          }
      } else {
        for (StateIdx b2 : vq.clock(b, qt))
          if (member(a2, b2, j)) {
            ok = true;
            break;
          }
        if (!ok && kind.family == Family::Indexed && j > 0 && member(a2, b, j - 1)) ok = true;
      }
      if (!ok) return fail(why, "clause 3 violated at (" + space_p.printed[a] + ", " +
                                    space_q.printed[b] + ")");
    }
    // Clause 4: q ticks (indexed only).
    if (kind.family == Family::Indexed) {
      for (StateIdx b2 : vq.clock(b, qt)) {
        bool ok = false;
        for (StateIdx a2 : vp.clock(a, pt))
          if (member(a2, b2, j)) {
            ok = true;
            break;
          }
        if (!ok && member(a, b2, std::min(j + 1, cap))) ok = true;
        if (!ok) return fail(why, "clause 4 violated at (" + space_p.printed[a] + ", " +
                                      space_q.printed[b] + ")");
      }
    }
  }
  return true;
}

bool replay_refutation(const Refutation& r, const RelationKind& kind, const StateSpace& space_p,
                       const StateSpace& space_q, std::string* why) {
  if (r.steps.empty()) return fail(why, "empty refutation");
  if (kind.family == Family::Indexed && !kind.cap)
    return fail(why, "indexed refutation without a resolved credit cap");
  const std::size_t cap = kind.family == Family::Indexed ? *kind.cap : 0;

  SpaceView vp(space_p), vq(space_q);
  SemanticsType pt = p_clock_type(kind);
  SemanticsType qt = q_clock_type(kind);

  TermId cp = space_p.root;
  TermId cq = space_q.root;
  std::size_t cj = 0;

  for (std::size_t si = 0; si < r.steps.size(); ++si) {
    const RefutationStep& st = r.steps[si];
    if (st.p != cp || st.q != cq || st.credit != cj)
      return fail(why, "step " + std::to_string(si) + " does not continue the play");
    auto a = vp.find(cp);
    auto b = vq.find(cq);
    if (!a || !b) return fail(why, "configuration outside the explored spaces");

    if (st.clause < 1 || st.clause > 4) return fail(why, "clause out of range");
    if (kind.family != Family::Indexed && st.clause == 4)
      return fail(why, "clause 4 outside the indexed family");
    if (st.attacker_is_p != (st.clause == 1 || st.clause == 3))
      return fail(why, "attacker on the wrong side");
    if (st.clock_move != (st.clause >= 3)) return fail(why, "move kind does not fit the clause");

    // The attacker move must exist in the transition sets.
    const SpaceView& att = st.attacker_is_p ? vp : vq;
    StateIdx from = st.attacker_is_p ? *a : *b;
    auto tgt = att.find(st.attacker_target);
    if (!tgt) return fail(why, "attacker target outside the explored space");
    std::string label;  // printed action for clauses 1 and 2
    if (st.clock_move) {
      SemanticsType at = st.attacker_is_p ? pt : qt;
      const auto& clk = att.clock(from, at);
      if (!std::binary_search(clk.begin(), clk.end(), *tgt))
        return fail(why, "claimed clock move does not exist");
    } else {
      auto found = att.label_of(st.action);
      if (!found) return fail(why, "claimed action is not a label of the space");
      label = *found;
      if (!att.has_act_edge(from, label, *tgt))
        return fail(why, "claimed action move does not exist");
    }

    if (st.terminal) {
      if (si + 1 != r.steps.size()) return fail(why, "terminal step is not last");
      // Re-establish the violation from the transition sets alone.
      bool urgent_needed = kind.family == Family::Strong || kind.family == Family::Combined;
      if (st.clause == 3 && urgent_needed && !urgent_included(vp, vq, *a, *b))
        return true;  // inclusion failure is directly visible
      switch (st.clause) {
        case 1: {
          bool empty = kind.family == Family::Delayed
                           ? delayed_answers(vq, *b, label, qt).empty()
                           : vq.act_targets(*b, label).empty();
          return empty ? true : fail(why, "terminal step has an unexplored answer");
        }
        case 2:
          return vp.act_targets(*a, label).empty()
                     ? true
                     : fail(why, "terminal step has an unexplored answer");
        case 3: {
          bool no_tick = vq.clock(*b, qt).empty();
          bool credit_blocked = kind.family != Family::Indexed || cj == 0;
          return no_tick && credit_blocked
                     ? true
                     : fail(why, "terminal step has an unexplored answer");
        }
        default:
          return fail(why, "clause 4 can always bank a credit");
      }
    }

    // Non-terminal: the followed defender answer must be a real move.
    bool defender_is_q = st.clause == 1 || st.clause == 3;
    const SpaceView& def = defender_is_q ? vq : vp;
    auto dt = def.find(st.defender_target);
    if (!dt) return fail(why, "defender target outside the explored space");

    switch (st.clause) {
      case 1:
        if (kind.family == Family::Delayed) {
          auto answers = delayed_answers(vq, *b, label, qt);
          if (!std::binary_search(answers.begin(), answers.end(), *dt))
            return fail(why, "defender answer is not a delayed answer");
        } else if (!vq.has_act_edge(*b, label, *dt)) {
          return fail(why, "defender answer does not exist");
        }
        if (st.defender_credit != cj) return fail(why, "credit changed on an action move");
        cp = st.attacker_target;
        cq = st.defender_target;
        break;
      case 2:
        if (!vp.has_act_edge(*a, label, *dt)) return fail(why, "defender answer does not exist");
        if (st.defender_credit != cj) return fail(why, "credit changed on an action move");
        cp = st.defender_target;
        cq = st.attacker_target;
        break;
      case 3:
        if (st.credit_move) {
          if (kind.family != Family::Indexed) return fail(why, "credit move outside indexed");
          if (cj == 0) return fail(why, "credit spend with empty account");
          if (st.defender_target != cq) return fail(why, "credit spend must leave q in place");
          if (st.defender_credit != cj - 1) return fail(why, "credit spend must decrement");
          cp = st.attacker_target;
          cj = st.defender_credit;
        } else {
          if (kind.family == Family::Delayed) {
            auto plus = clock_plus(vq, *b, qt);
            if (!std::binary_search(plus.begin(), plus.end(), *dt))
              return fail(why, "defender answer is not a positive tick sequence");
          } else {
            const auto& clk = vq.clock(*b, qt);
            if (!std::binary_search(clk.begin(), clk.end(), *dt))
              return fail(why, "defender clock answer does not exist");
          }
          if (st.defender_credit != cj) return fail(why, "credit changed on a matched tick");
          cp = st.attacker_target;
          cq = st.defender_target;
        }
        break;
      case 4:
        if (st.credit_move) {
          if (st.defender_target != cp) return fail(why, "credit bank must leave p in place");
          if (st.defender_credit != std::min(cj + 1, cap))
            return fail(why, "credit bank must increment (saturating)");
          cq = st.attacker_target;
          cj = st.defender_credit;
        } else {
          const auto& clk = vp.clock(*a, pt);
          if (!std::binary_search(clk.begin(), clk.end(), *dt))
            return fail(why, "defender clock answer does not exist");
          if (st.defender_credit != cj) return fail(why, "credit changed on a matched tick");
          cp = st.defender_target;
          cq = st.attacker_target;
        }
        break;
    }
  }
  return fail(why, "refutation does not end in a terminal violation");
}

}  // namespace tacs
