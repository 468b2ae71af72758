#pragma once

// Abstract syntax for TACS: CCS plus a clock prefix that lets a process idle
// for up to one time unit.  Terms are interned ("hash-consed") in a
// TermFactory, so structurally identical terms always share one TermId and
// syntactic equality is a single integer comparison.  The calculus treats
// terms literally: there is no alpha-renaming anywhere, and substitution never
// renames binders (it only ever plugs in closed terms, which cannot be
// captured).
//
// Per-node metadata (free variables, unguarded variables, node count) is
// computed once at intern time from the children's metadata, so the derived
// queries below are O(1) or O(set size).

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "tacs/errors.hpp"

namespace tacs {

using NameId = std::uint32_t;
using TermId = std::uint32_t;
inline constexpr TermId kNoTerm = 0xffffffffu;

// ── Actions ─────────────────────────────────────────────────────────────────

enum class ActKind : std::uint8_t { Name, CoName, Tau };

// A visible input action (Name), its complement (CoName), or the silent
// action tau.  `name` is meaningful only for Name/CoName.
struct Action {
  ActKind kind{ActKind::Tau};
  NameId name{0};

  static Action in(NameId n) { return {ActKind::Name, n}; }
  static Action out(NameId n) { return {ActKind::CoName, n}; }
  static Action tau() { return {ActKind::Tau, 0}; }

  bool is_tau() const { return kind == ActKind::Tau; }
  bool is_visible() const { return kind != ActKind::Tau; }

  friend bool operator==(const Action&, const Action&) = default;
  friend auto operator<=>(const Action&, const Action&) = default;
};

// Complement of a visible action; throws TauComplement on tau.
Action complement(Action a);

// ── Relabelling functions ───────────────────────────────────────────────────

// A finite function on names, extended to actions by f(tau) = tau and
// f('a) = '(f(a)).  Entries are kept sorted by source name with identity
// entries dropped, so equal functions have equal representations.
class Relabelling {
 public:
  Relabelling() = default;
  // Throws InvalidName if the same source name is mapped twice (to different
  // targets).  Identity pairs are accepted and dropped.
  static Relabelling from_pairs(std::vector<std::pair<NameId, NameId>> pairs);

  NameId apply(NameId n) const;
  Action apply(Action a) const;

  const std::vector<std::pair<NameId, NameId>>& entries() const { return entries_; }
  bool identity() const { return entries_.empty(); }

  friend bool operator==(const Relabelling&, const Relabelling&) = default;

 private:
  std::vector<std::pair<NameId, NameId>> entries_;
};

// ── Terms ───────────────────────────────────────────────────────────────────

enum class TermKind : std::uint8_t {
  Nil,          // 0
  Var,          // x
  ActPrefix,    // alpha.P
  ClockPrefix,  // s.P
  Sum,          // P + Q
  Par,          // P | Q
  Restrict,     // P \ {a,...}   (plain names only; blocks both polarities)
  Relabel,      // P[f]
  Rec,          // rec x. P
};

struct TermNode {
  TermKind kind;
  Action action{};                     // ActPrefix
  NameId var{0};                       // Var, Rec
  TermId child0{kNoTerm};              // any unary/binary node
  TermId child1{kNoTerm};              // Sum, Par
  std::vector<NameId> restrict_set;    // Restrict, sorted
  Relabelling relabelling;             // Relabel

  // Derived at intern time.
  std::vector<NameId> free_vars;       // sorted
  std::vector<NameId> unguarded_vars;  // sorted; free vars with an occurrence
                                       // not under an action prefix
  std::uint32_t size{1};               // node count
  bool has_invalid_rec{false};         // some rec binds a var unguarded in its body
};

// ── Factory ─────────────────────────────────────────────────────────────────

// Owns all interned names and terms.  Not thread safe; use one factory per
// worker.  TermIds are only meaningful relative to their factory.
class TermFactory {
 public:
  TermFactory();

  // Names.  Validates the action-name shape [a-z][a-zA-Z0-9_]* and rejects
  // the reserved words (tau, sigma, s, rec); throws InvalidName.
  NameId name_id(std::string_view text);
  const std::string& name(NameId id) const { return names_[id]; }

  // Constructors.  rec() is deliberately lenient: it accepts a body in which
  // the bound variable is unguarded and only records the defect in the node
  // metadata, so validate_process can report it after the fact.
  TermId nil();
  TermId var(NameId x);
  TermId act(Action a, TermId p);
  TermId clock(TermId p);
  TermId sum(TermId l, TermId r);
  TermId par(TermId l, TermId r);
  TermId restrict(TermId p, std::vector<NameId> names);
  TermId relabel(TermId p, Relabelling f);
  TermId rec(NameId x, TermId body);

  const TermNode& node(TermId t) const { return nodes_[t]; }
  std::size_t term_count() const { return nodes_.size(); }

  // Derived queries.
  const std::vector<NameId>& free_vars(TermId t) const { return nodes_[t].free_vars; }
  bool is_closed(TermId t) const { return nodes_[t].free_vars.empty(); }
  // True iff every free occurrence of x in t sits under an action prefix.
  // Vacuously true when x is not free in t.
  bool is_guarded(NameId x, TermId t) const;

  // Capture-free substitution of the closed term r for the free occurrences
  // of x in t.  Never renames binders.  Throws SubstituteOpenTerm when r is
  // open.  Memoised.
  TermId substitute(TermId t, NameId x, TermId r);

 private:
  struct NodeKey {
    TermKind kind;
    Action action;
    NameId var;
    TermId child0, child1;
    std::vector<NameId> restrict_set;
    std::vector<std::pair<NameId, NameId>> relabel_entries;
    bool operator==(const NodeKey&) const = default;
  };
  struct NodeKeyHash {
    std::size_t operator()(const NodeKey& k) const;
  };
  struct SubstKey {
    TermId t;
    NameId x;
    TermId r;
    bool operator==(const SubstKey&) const = default;
  };
  struct SubstKeyHash {
    std::size_t operator()(const SubstKey& k) const {
      std::size_t h = k.t;
      h = h * 0x9e3779b97f4a7c15ull + k.x;
      h = h * 0x9e3779b97f4a7c15ull + k.r;
      return h;
    }
  };

  TermId intern(NodeKey key, TermNode node);

  std::vector<std::string> names_;
  std::unordered_map<std::string, NameId, std::hash<std::string>> name_index_;
  std::vector<TermNode> nodes_;
  std::unordered_map<NodeKey, TermId, NodeKeyHash> node_index_;
  std::unordered_map<SubstKey, TermId, SubstKeyHash> subst_memo_;
  TermId nil_id_{kNoTerm};
};

// Literal syntactic equality.  Complete because terms are interned: two terms
// in the same factory are structurally identical iff their ids coincide.
inline bool structural_eq(TermId a, TermId b) { return a == b; }

// ── Processes ───────────────────────────────────────────────────────────────

// A process is a closed term whose recursions are all guarded.  Values of
// this type are only produced by validate_process, so holding one certifies
// both properties.
class Process {
 public:
  TermId id() const { return id_; }

 private:
  friend std::variant<Process, struct ProcessError> validate_process(const TermFactory&, TermId);
  explicit Process(TermId id) : id_(id) {}
  TermId id_;
};

enum class ProcessErrorKind : std::uint8_t { NotClosed, UnguardedRecursion };

struct ProcessError {
  ProcessErrorKind kind;
  NameId var;  // offending variable
};

std::variant<Process, ProcessError> validate_process(const TermFactory& f, TermId t);

}  // namespace tacs
