#include "tacs/preorder.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tacs {

std::string to_string(const RelationKind& k) {
  std::string out;
  switch (k.family) {
    case Family::Naive: out = "naive"; break;
    case Family::Delayed: out = "delayed"; break;
    case Family::Indexed: out = "indexed"; break;
    case Family::Strong: out = "strong"; break;
    case Family::Combined: return "combined";
  }
  out += k.sem == SemanticsType::Type1 ? "-1" : "-2";
  if (k.family == Family::Indexed)
    out += k.cap ? "(cap=" + std::to_string(*k.cap) + ")" : "(cap=auto)";
  return out;
}

namespace {

constexpr std::uint32_t kAlive = std::numeric_limits<std::uint32_t>::max();

struct Bits {
  std::vector<std::uint64_t> w;
  void init(std::size_t bits) { w.assign((bits + 63) / 64, 0); }
  void set(std::size_t i) { w[i >> 6] |= std::uint64_t(1) << (i & 63); }
  bool get(std::size_t i) const { return (w[i >> 6] >> (i & 63)) & 1; }
  bool any() const {
    for (auto x : w)
      if (x) return true;
    return false;
  }
  void or_with(const Bits& o) {
    for (std::size_t i = 0; i < w.size(); ++i) w[i] |= o.w[i];
  }
  // Calls fn(bit index) in ascending order until fn returns false.
  template <typename Fn>
  void for_each(Fn fn) const {
    for (std::size_t bi = 0; bi < w.size(); ++bi) {
      std::uint64_t x = w[bi];
      while (x) {
        unsigned tz = static_cast<unsigned>(__builtin_ctzll(x));
        if (!fn(bi * 64 + tz)) return;
        x &= x - 1;
      }
    }
  }
};

// The two state spaces with a unified label table, clock relations selected
// per side and family, and (for delayed checks) the slower side's closure
// answer sets.
struct Game {
  const StateSpace* P{nullptr};
  const StateSpace* Q{nullptr};
  Family family{Family::Naive};

  std::vector<Action> label_actions;  // joint label index -> action
  std::vector<std::vector<std::pair<LabelIdx, StateIdx>>> pe, qe;  // joint labels, sorted
  std::vector<std::vector<LabelIdx>> purg, qurg;                   // joint labels, sorted
  const std::vector<std::vector<StateIdx>>* pclk{nullptr};
  const std::vector<std::vector<StateIdx>>* qclk{nullptr};

  std::size_t labels{0};
  std::vector<Bits> qplus;                 // delayed: one-or-more ticks
  std::vector<std::vector<Bits>> qanswer;  // delayed: [state][label], ticks.label.ticks

  bool urgent_included(StateIdx a, StateIdx b) const {
    // The slower side may not be urgent on anything the faster side is not.
    return std::includes(purg[a].begin(), purg[a].end(), qurg[b].begin(), qurg[b].end());
  }
};

Game build_game(const StateSpace& sp, const StateSpace& sq, Family family, SemanticsType sem) {
  Game g;
  g.P = &sp;
  g.Q = &sq;
  g.family = family;

  // Joint label table, ordered by printed form like the per-space tables, so
  // the per-space-to-joint maps are monotone and remapping preserves order.
  std::map<std::string, Action> texts;
  for (std::size_t i = 0; i < sp.label_text.size(); ++i)
    texts.emplace(sp.label_text[i], sp.label_actions[i]);
  for (std::size_t i = 0; i < sq.label_text.size(); ++i)
    texts.emplace(sq.label_text[i], sq.label_actions[i]);
  std::unordered_map<std::string, LabelIdx> joint;
  for (const auto& [text, action] : texts) {
    joint.emplace(text, static_cast<LabelIdx>(g.label_actions.size()));
    g.label_actions.push_back(action);
  }
  g.labels = g.label_actions.size();

  std::vector<LabelIdx> pmap(sp.label_text.size()), qmap(sq.label_text.size());
  for (std::size_t i = 0; i < sp.label_text.size(); ++i) pmap[i] = joint.at(sp.label_text[i]);
  for (std::size_t i = 0; i < sq.label_text.size(); ++i) qmap[i] = joint.at(sq.label_text[i]);

  g.pe.resize(sp.size());
  for (StateIdx s = 0; s < sp.size(); ++s)
    for (auto [l, t] : sp.act_edges[s]) g.pe[s].emplace_back(pmap[l], t);
  g.qe.resize(sq.size());
  for (StateIdx s = 0; s < sq.size(); ++s)
    for (auto [l, t] : sq.act_edges[s]) g.qe[s].emplace_back(qmap[l], t);
  g.purg.resize(sp.size());
  for (StateIdx s = 0; s < sp.size(); ++s)
    for (LabelIdx l : sp.urgent[s]) g.purg[s].push_back(pmap[l]);
  g.qurg.resize(sq.size());
  for (StateIdx s = 0; s < sq.size(); ++s)
    for (LabelIdx l : sq.urgent[s]) g.qurg[s].push_back(qmap[l]);

  if (family == Family::Combined) {
    g.pclk = &sp.clock1_edges;
    g.qclk = &sq.clock2_edges;
  } else if (sem == SemanticsType::Type1) {
    g.pclk = &sp.clock1_edges;
    g.qclk = &sq.clock1_edges;
  } else {
    g.pclk = &sp.clock2_edges;
    g.qclk = &sq.clock2_edges;
  }

  if (family == Family::Delayed) {
    const auto& qc = *g.qclk;
    std::size_t n = sq.size();
    std::vector<Bits> closure(n);  // reflexive-transitive tick closure
    for (StateIdx s = 0; s < n; ++s) {
      closure[s].init(n);
      closure[s].set(s);
      std::deque<StateIdx> work{s};
      while (!work.empty()) {
        StateIdx t = work.front();
        work.pop_front();
        for (StateIdx v : qc[t])
          if (!closure[s].get(v)) {
            closure[s].set(v);
            work.push_back(v);
          }
      }
    }
    g.qplus.resize(n);
    for (StateIdx s = 0; s < n; ++s) {
      g.qplus[s].init(n);
      for (StateIdx t : qc[s]) g.qplus[s].or_with(closure[t]);
    }
    g.qanswer.resize(n);
    for (StateIdx s = 0; s < n; ++s) {
      g.qanswer[s].resize(g.labels);
      for (auto& bits : g.qanswer[s]) bits.init(n);
      closure[s].for_each([&](std::size_t mid) {
        for (auto [l, t] : g.qe[mid]) g.qanswer[s][l].or_with(closure[t]);
        return true;
      });
    }
  }
  return g;
}

// Pair universe.  GameClosure keeps exactly the pairs reachable from the root
// pair when the attacker tries every move and the defender every candidate
// answer, so clause evaluation never looks outside it and the root verdict
// matches the fixed point over the full product.
struct Universe {
  bool full{false};
  std::uint32_t nq{0};
  std::vector<std::pair<StateIdx, StateIdx>> pairs;  // sorted
  std::unordered_map<std::uint64_t, std::uint32_t> index;

  static std::uint64_t key(StateIdx a, StateIdx b) {
    return (static_cast<std::uint64_t>(a) << 32) | b;
  }
  std::uint32_t pid(StateIdx a, StateIdx b) const {
    if (full) return a * nq + b;
    return index.at(key(a, b));
  }
};

// Every pair the clauses can mention starting from (a, b).
template <typename Fn>
void candidate_pairs(const Game& g, StateIdx a, StateIdx b, Fn visit) {
  for (auto [l, a2] : g.pe[a]) {
    if (g.family == Family::Delayed) {
      g.qanswer[b][l].for_each([&, a2 = a2](std::size_t b2) {
        visit(a2, static_cast<StateIdx>(b2));
        return true;
      });
    } else {
      for (auto [m, b2] : g.qe[b])
        if (m == l) visit(a2, b2);
    }
  }
  for (auto [l, b2] : g.qe[b])
    for (auto [m, a2] : g.pe[a])
      if (m == l) visit(a2, b2);

  const auto& pc = (*g.pclk)[a];
  const auto& qc = (*g.qclk)[b];
  for (StateIdx a2 : pc) {
    if (g.family == Family::Delayed) {
      g.qplus[b].for_each([&, a2](std::size_t b2) {
        visit(a2, static_cast<StateIdx>(b2));
        return true;
      });
    } else {
      for (StateIdx b2 : qc) visit(a2, b2);
    }
  }
  if (g.family == Family::Indexed) {
    for (StateIdx a2 : pc) visit(a2, b);  // credit spend: q stays
    for (StateIdx b2 : qc) visit(a, b2);  // credit gain: p stays
  }
}

Universe build_universe(const Game& g, UniverseMode mode) {
  Universe u;
  u.nq = static_cast<std::uint32_t>(g.Q->size());
  if (mode == UniverseMode::FullProduct) {
    u.full = true;
    u.pairs.reserve(g.P->size() * g.Q->size());
    for (StateIdx a = 0; a < g.P->size(); ++a)
      for (StateIdx b = 0; b < g.Q->size(); ++b) u.pairs.emplace_back(a, b);
    return u;
  }
  std::unordered_set<std::uint64_t> seen;
  std::deque<std::pair<StateIdx, StateIdx>> work;
  auto push = [&](StateIdx a, StateIdx b) {
    if (seen.insert(Universe::key(a, b)).second) work.emplace_back(a, b);
  };
  push(g.P->root_index, g.Q->root_index);
  while (!work.empty()) {
    auto [a, b] = work.front();
    work.pop_front();
    candidate_pairs(g, a, b, push);
  }
  u.pairs.reserve(seen.size());
  for (std::uint64_t k : seen)
    u.pairs.emplace_back(static_cast<StateIdx>(k >> 32), static_cast<StateIdx>(k & 0xffffffffu));
  std::sort(u.pairs.begin(), u.pairs.end());
  u.index.reserve(u.pairs.size());
  for (std::uint32_t i = 0; i < u.pairs.size(); ++i)
    u.index.emplace(Universe::key(u.pairs[i].first, u.pairs[i].second), i);
  return u;
}

enum class FailReason : std::uint8_t { NoAliveAnswer, NoAnswerAtAll, UrgentSet };

struct Violation {
  int clause;
  bool attacker_is_p;
  bool clock_move;
  LabelIdx label;  // meaningful when !clock_move
  StateIdx attacker_target;
  FailReason reason;
};

struct Answer {
  StateIdx a, b;
  std::uint32_t credit;
  bool credit_move;
};

// Walks every obligation of configuration (a, b, j) in the fixed reporting
// order: clauses ascending, moves in edge order, clause-(a) options before
// credit options.  For each obligation `on_move` receives the first alive
// answer (or nullopt) and returns true to keep walking.  The GFP sweep, the
// witness pruning and the refutation extraction all run on this one walker,
// so they cannot disagree on clause logic.
template <typename AliveFn, typename OnMove>
void walk_obligations(const Game& g, StateIdx a, StateIdx b, std::uint32_t j, std::uint32_t cap,
                      AliveFn alive, OnMove on_move) {
  const auto& pe = g.pe[a];
  const auto& qe = g.qe[b];
  const auto& pc = (*g.pclk)[a];
  const auto& qc = (*g.qclk)[b];

  // Clause 1: the faster side acts, the slower answers.
  for (auto [l, a2] : pe) {
    std::optional<Answer> ans;
    bool possible = false;
    if (g.family == Family::Delayed) {
      const Bits& cands = g.qanswer[b][l];
      possible = cands.any();
      cands.for_each([&, a2 = a2, jj = j](std::size_t b2) {
        if (alive(a2, static_cast<StateIdx>(b2), jj)) {
          ans = Answer{a2, static_cast<StateIdx>(b2), jj, false};
          return false;
        }
        return true;
      });
    } else {
      for (auto [m, b2] : qe) {
        if (m != l) continue;
        possible = true;
        if (alive(a2, b2, j)) {
          ans = Answer{a2, b2, j, false};
          break;
        }
      }
    }
    FailReason why = possible ? FailReason::NoAliveAnswer : FailReason::NoAnswerAtAll;
    if (!on_move(Violation{1, true, false, l, a2, why}, ans)) return;
  }

  // Clause 2: the slower side acts, the faster answers exactly.
  for (auto [l, b2] : qe) {
    std::optional<Answer> ans;
    bool possible = false;
    for (auto [m, a2] : pe) {
      if (m != l) continue;
      possible = true;
      if (alive(a2, b2, j)) {
        ans = Answer{a2, b2, j, false};
        break;
      }
    }
    FailReason why = possible ? FailReason::NoAliveAnswer : FailReason::NoAnswerAtAll;
    if (!on_move(Violation{2, false, false, l, b2, why}, ans)) return;
  }

  // Clause 3: the faster side ticks.
  bool urgent_needed = g.family == Family::Strong || g.family == Family::Combined;
  if (urgent_needed && !pc.empty() && !g.urgent_included(a, b)) {
    if (!on_move(Violation{3, true, true, 0, pc.front(), FailReason::UrgentSet}, std::nullopt))
      return;
  }
  for (StateIdx a2 : pc) {
    std::optional<Answer> ans;
    bool possible = false;
    if (g.family == Family::Delayed) {
      const Bits& cands = g.qplus[b];
      possible = cands.any();
      cands.for_each([&, a2, jj = j](std::size_t b2) {
        if (alive(a2, static_cast<StateIdx>(b2), jj)) {
          ans = Answer{a2, static_cast<StateIdx>(b2), jj, false};
          return false;
        }
        return true;
      });
    } else {
      for (StateIdx b2 : qc) {
        possible = true;
        if (alive(a2, b2, j)) {
          ans = Answer{a2, b2, j, false};
          break;
        }
      }
      if (g.family == Family::Indexed && j > 0) {
        possible = true;
        if (!ans && alive(a2, b, j - 1)) ans = Answer{a2, b, j - 1, true};
      }
    }
    FailReason why = possible ? FailReason::NoAliveAnswer : FailReason::NoAnswerAtAll;
    if (!on_move(Violation{3, true, true, 0, a2, why}, ans)) return;
  }

  // Clause 4: the slower side ticks (indexed only; banking is always open).
  if (g.family == Family::Indexed) {
    for (StateIdx b2 : qc) {
      std::optional<Answer> ans;
      for (StateIdx a2 : pc) {
        if (alive(a2, b2, j)) {
          ans = Answer{a2, b2, j, false};
          break;
        }
      }
      if (!ans) {
        std::uint32_t j2 = std::min(j + 1, cap);
        if (alive(a, b2, j2)) ans = Answer{a, b2, j2, true};
      }
      if (!on_move(Violation{4, false, true, 0, b2, FailReason::NoAliveAnswer}, ans)) return;
    }
  }
}

template <typename AliveFn>
std::optional<Violation> find_violation(const Game& g, StateIdx a, StateIdx b, std::uint32_t j,
                                        std::uint32_t cap, AliveFn alive) {
  std::optional<Violation> out;
  walk_obligations(g, a, b, j, cap, alive,
                   [&](const Violation& v, const std::optional<Answer>& ans) {
                     if (v.reason == FailReason::UrgentSet || !ans) {
                       out = v;
                       return false;
                     }
                     return true;
                   });
  return out;
}

// ── The fixed-point kernels ─────────────────────────────────────────────────

struct GfpResult {
  std::vector<std::uint8_t> alive;   // final relation
  std::vector<std::uint32_t> round;  // deletion round per config, kAlive if none
  std::size_t rounds{0};
};

// Synchronous deletion sweeps: every configuration is judged against the
// relation as of the start of the round, so results (verdict, rounds, per-
// config deletion rounds) are independent of sweep order and thread count.
GfpResult run_gfp(const Game& g, const Universe& u, std::uint32_t cap, int threads) {
  const std::size_t levels = std::size_t(cap) + 1;
  const std::size_t n = u.pairs.size() * levels;
  GfpResult r;
  r.alive.assign(n, 1);
  r.round.assign(n, kAlive);
  std::vector<std::uint8_t> next(n, 1);

  std::size_t round_no = 0;
  for (;;) {
    ++round_no;
    std::size_t deleted = 0;
    const std::uint8_t* cur = r.alive.data();
    auto alive_fn = [&u, cur, levels](StateIdx a2, StateIdx b2, std::uint32_t j2) {
      return cur[std::size_t(u.pid(a2, b2)) * levels + j2] != 0;
    };
    auto judge = [&](std::size_t ci) -> bool {
      if (!cur[ci]) {
        next[ci] = 0;
        return false;
      }
      auto [a, b] = u.pairs[ci / levels];
      auto j = static_cast<std::uint32_t>(ci % levels);
      bool viol = find_violation(g, a, b, j, cap, alive_fn).has_value();
      next[ci] = viol ? 0 : 1;
      if (viol) r.round[ci] = static_cast<std::uint32_t>(round_no);
      return viol;
    };

    bool parallel = threads != 1;
#ifdef _OPENMP
    if (parallel) {
      int nthreads = threads <= 0 ? omp_get_max_threads() : threads;
      long long del = 0;
      const long long nn = static_cast<long long>(n);
#pragma omp parallel for schedule(static) reduction(+ : del) num_threads(nthreads)
      for (long long ci = 0; ci < nn; ++ci)
        if (judge(static_cast<std::size_t>(ci))) ++del;
      deleted = static_cast<std::size_t>(del);
    }
#else
    parallel = false;
#endif
    if (!parallel) {
      for (std::size_t ci = 0; ci < n; ++ci)
        if (judge(ci)) ++deleted;
    }

    std::swap(r.alive, next);
    if (deleted == 0) break;
  }
  r.rounds = round_no;
  return r;
}

// ── Witness and refutation extraction ───────────────────────────────────────

WitnessRelation prune_witness(const Game& g, const Universe& u, const GfpResult& res,
                              RelationKind kind, std::uint32_t cap) {
  const std::size_t levels = std::size_t(cap) + 1;
  auto alive = [&](StateIdx a2, StateIdx b2, std::uint32_t j2) {
    return res.alive[std::size_t(u.pid(a2, b2)) * levels + j2] != 0;
  };

  std::size_t root_ci = std::size_t(u.pid(g.P->root_index, g.Q->root_index)) * levels;
  std::unordered_set<std::size_t> in{root_ci};
  std::deque<std::size_t> work{root_ci};
  while (!work.empty()) {
    std::size_t ci = work.front();
    work.pop_front();
    auto [a, b] = u.pairs[ci / levels];
    auto j = static_cast<std::uint32_t>(ci % levels);
    walk_obligations(g, a, b, j, cap, alive,
                     [&](const Violation&, const std::optional<Answer>& ans) {
                       // Every obligation of an alive config has an alive
                       // answer; follow the first one so the witness is
                       // deterministic.  A missing answer would be an engine
                       // bug, left for the witness audit to expose.
                       if (!ans) return true;
                       std::size_t tc = std::size_t(u.pid(ans->a, ans->b)) * levels + ans->credit;
                       if (in.insert(tc).second) work.push_back(tc);
                       return true;
                     });
  }

  WitnessRelation w;
  w.kind = kind;
  std::vector<std::size_t> order(in.begin(), in.end());
  // State indices follow printed order, so this is the lexicographic order on
  // printed pairs with credits ascending.
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return std::tuple(u.pairs[x / levels], x % levels) <
           std::tuple(u.pairs[y / levels], y % levels);
  });
  w.entries.reserve(order.size());
  for (std::size_t ci : order) {
    auto [a, b] = u.pairs[ci / levels];
    w.entries.push_back({g.P->states[a], g.Q->states[b], ci % levels});
  }
  return w;
}

Refutation extract_refutation(const Game& g, const Universe& u, const GfpResult& res,
                              std::uint32_t cap) {
  const std::size_t levels = std::size_t(cap) + 1;
  Refutation out;

  StateIdx a = g.P->root_index;
  StateIdx b = g.Q->root_index;
  std::uint32_t j = 0;

  for (;;) {
    std::uint32_t r = res.round[std::size_t(u.pid(a, b)) * levels + j];
    // Alive in the relation this deletion round judged against.
    auto alive_then = [&](StateIdx a2, StateIdx b2, std::uint32_t j2) {
      return res.round[std::size_t(u.pid(a2, b2)) * levels + j2] >= r;
    };
    std::optional<Violation> viol = find_violation(g, a, b, j, cap, alive_then);
    // The pair was deleted in round r, so a violation must reappear.

    RefutationStep step;
    step.p = g.P->states[a];
    step.q = g.Q->states[b];
    step.credit = j;
    step.clause = viol->clause;
    step.attacker_is_p = viol->attacker_is_p;
    step.clock_move = viol->clock_move;
    if (!viol->clock_move) step.action = g.label_actions[viol->label];
    step.attacker_target = viol->attacker_is_p ? g.P->states[viol->attacker_target]
                                               : g.Q->states[viol->attacker_target];

    if (viol->reason == FailReason::UrgentSet) {
      step.terminal = true;
      step.reason = "the slower process is urgent on an action the faster one is not";
      out.steps.push_back(std::move(step));
      return out;
    }
    if (viol->reason == FailReason::NoAnswerAtAll) {
      step.terminal = true;
      step.reason = "no transition answers the move";
      out.steps.push_back(std::move(step));
      return out;
    }

    // Candidates exist but were all refuted in earlier rounds; follow the
    // earliest-refuted one (ties broken by enumeration order).
    std::optional<Answer> best;
    std::uint32_t best_round = kAlive;
    auto consider = [&](StateIdx a2, StateIdx b2, std::uint32_t j2, bool credit_move) {
      std::uint32_t rr = res.round[std::size_t(u.pid(a2, b2)) * levels + j2];
      if (rr < best_round) {
        best_round = rr;
        best = Answer{a2, b2, j2, credit_move};
      }
    };
    if (viol->clause == 1) {
      StateIdx a2 = viol->attacker_target;
      if (g.family == Family::Delayed) {
        g.qanswer[b][viol->label].for_each([&](std::size_t b2) {
          consider(a2, static_cast<StateIdx>(b2), j, false);
          return true;
        });
      } else {
        for (auto [m, b2] : g.qe[b])
          if (m == viol->label) consider(a2, b2, j, false);
      }
    } else if (viol->clause == 2) {
      for (auto [m, a2] : g.pe[a])
        if (m == viol->label) consider(a2, viol->attacker_target, j, false);
    } else if (viol->clause == 3) {
      StateIdx a2 = viol->attacker_target;
      if (g.family == Family::Delayed) {
        g.qplus[b].for_each([&](std::size_t b2) {
          consider(a2, static_cast<StateIdx>(b2), j, false);
          return true;
        });
      } else {
        for (StateIdx b2 : (*g.qclk)[b]) consider(a2, b2, j, false);
        if (g.family == Family::Indexed && j > 0) consider(a2, b, j - 1, true);
      }
    } else {  // clause 4 (indexed)
      StateIdx b2 = viol->attacker_target;
      for (StateIdx a2 : (*g.pclk)[a]) consider(a2, b2, j, false);
      consider(a, b2, std::min(j + 1, cap), true);
    }

    step.terminal = false;
    bool defender_is_q = viol->clause == 1 || viol->clause == 3;
    step.defender_target = defender_is_q ? g.Q->states[best->b] : g.P->states[best->a];
    step.defender_credit = best->credit;
    step.credit_move = best->credit_move;
    out.steps.push_back(std::move(step));

    // best_round < r, so the chain strictly descends and ends in a terminal
    // violation judged against the full initial relation.
    a = best->a;
    b = best->b;
    j = best->credit;
  }
}

}  // namespace

// ── check ───────────────────────────────────────────────────────────────────

CheckVerdict check(Semantics& sem, Process p, Process q, RelationKind kind,
                   std::size_t state_limit, const CheckPolicy& policy) {
  StateSpace sp = explore(sem, p, state_limit);
  StateSpace sq = explore(sem, q, state_limit);
  Game g = build_game(sp, sq, kind.family, kind.sem);
  Universe u = build_universe(g, policy.universe);

  CheckVerdict verdict;
  verdict.kind = kind;
  verdict.stats.p_states = sp.size();
  verdict.stats.q_states = sq.size();
  verdict.stats.pairs = u.pairs.size();

  std::uint32_t cap = 0;
  bool auto_cap = false;
  if (kind.family == Family::Indexed) {
    if (kind.cap) {
      cap = static_cast<std::uint32_t>(*kind.cap);
    } else {
      // Automatic cap: the size of the pair universe.  Credit monotonicity
      // makes the family stable at that depth on finite systems; the probe
      // below re-checks the verdict at cap+1.
      auto_cap = true;
      cap = static_cast<std::uint32_t>(u.pairs.size());
    }
    verdict.kind.cap = cap;
  }

  std::size_t worst_levels = std::size_t(cap) + (auto_cap ? 2 : 1);
  if (u.pairs.size() * worst_levels > policy.config_limit)
    throw ConfigLimitExceeded(policy.config_limit);

  GfpResult res = run_gfp(g, u, cap, policy.threads);
  std::size_t root_ci = std::size_t(u.pid(sp.root_index, sq.root_index)) * (std::size_t(cap) + 1);
  verdict.holds = res.alive[root_ci] != 0;

  if (auto_cap) {
    GfpResult probe = run_gfp(g, u, cap + 1, policy.threads);
    bool probe_holds =
        probe.alive[std::size_t(u.pid(sp.root_index, sq.root_index)) * (std::size_t(cap) + 2)] != 0;
    if (probe_holds != verdict.holds) throw CapUnstable(cap);
  }

  verdict.stats.configs = u.pairs.size() * (std::size_t(cap) + 1);
  verdict.stats.rounds = res.rounds;
  verdict.stats.credit_cap = cap;

  if (verdict.holds)
    verdict.witness = prune_witness(g, u, res, verdict.kind, cap);
  else
    verdict.refutation = extract_refutation(g, u, res, cap);
  return verdict;
}

IndexedFamily indexed_family(Semantics& sem, Process p, Process q, SemanticsType type,
                             std::optional<std::size_t> cap_opt, std::size_t state_limit,
                             const CheckPolicy& policy) {
  StateSpace sp = explore(sem, p, state_limit);
  StateSpace sq = explore(sem, q, state_limit);
  Game g = build_game(sp, sq, Family::Indexed, type);
  Universe u = build_universe(g, policy.universe);
  std::uint32_t cap = static_cast<std::uint32_t>(cap_opt.value_or(u.pairs.size()));
  const std::size_t levels = std::size_t(cap) + 1;
  if (u.pairs.size() * levels > policy.config_limit)
    throw ConfigLimitExceeded(policy.config_limit);
  GfpResult res = run_gfp(g, u, cap, policy.threads);

  IndexedFamily fam;
  fam.cap = cap;
  fam.at_credit.resize(levels);
  for (std::size_t pi = 0; pi < u.pairs.size(); ++pi)
    for (std::size_t j = 0; j < levels; ++j)
      if (res.alive[pi * levels + j])
        fam.at_credit[j].emplace_back(g.P->states[u.pairs[pi].first],
                                      g.Q->states[u.pairs[pi].second]);
  return fam;
}

}  // namespace tacs
