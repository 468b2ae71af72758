#include "tacs/term.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace tacs {

Action complement(Action a) {
  switch (a.kind) {
    case ActKind::Name:
      return Action::out(a.name);
    case ActKind::CoName:
      return Action::in(a.name);
    case ActKind::Tau:
      throw TauComplement();
  }
  throw TauComplement();
}

Relabelling Relabelling::from_pairs(std::vector<std::pair<NameId, NameId>> pairs) {
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  Relabelling f;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (i + 1 < pairs.size() && pairs[i].first == pairs[i + 1].first)
      throw InvalidName("relabelling maps one name to two targets");
    if (pairs[i].first != pairs[i].second) f.entries_.push_back(pairs[i]);
  }
  return f;
}

NameId Relabelling::apply(NameId n) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), n,
                             [](const auto& e, NameId v) { return e.first < v; });
  return (it != entries_.end() && it->first == n) ? it->second : n;
}

Action Relabelling::apply(Action a) const {
  if (a.is_tau()) return a;
  return {a.kind, apply(a.name)};
}

// ── Factory ─────────────────────────────────────────────────────────────────

namespace {

// Sorted-set union on small vectors.
std::vector<NameId> set_union(const std::vector<NameId>& a, const std::vector<NameId>& b) {
  std::vector<NameId> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<NameId> set_erase(std::vector<NameId> s, NameId x) {
  s.erase(std::remove(s.begin(), s.end(), x), s.end());
  return s;
}

bool set_contains(const std::vector<NameId>& s, NameId x) {
  return std::binary_search(s.begin(), s.end(), x);
}

constexpr std::array<std::string_view, 4> kReserved = {"tau", "sigma", "s", "rec"};

bool valid_name(std::string_view text) {
  if (text.empty()) return false;
  if (text[0] < 'a' || text[0] > 'z') return false;
  for (char c : text.substr(1))
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return std::find(kReserved.begin(), kReserved.end(), text) == kReserved.end();
}

}  // namespace

std::size_t TermFactory::NodeKeyHash::operator()(const NodeKey& k) const {
  std::size_t h = static_cast<std::size_t>(k.kind);
  auto mix = [&h](std::size_t v) { h = h * 0x9e3779b97f4a7c15ull + v + 0x632be59bd9b4e019ull; };
  mix(static_cast<std::size_t>(k.action.kind));
  mix(k.action.name);
  mix(k.var);
  mix(k.child0);
  mix(k.child1);
  for (NameId n : k.restrict_set) mix(n);
  for (const auto& [a, b] : k.relabel_entries) {
    mix(a);
    mix(b);
  }
  return h;
}

TermFactory::TermFactory() = default;

NameId TermFactory::name_id(std::string_view text) {
  if (!valid_name(text)) throw InvalidName("invalid name: '" + std::string(text) + "'");
  auto it = name_index_.find(std::string(text));
  if (it != name_index_.end()) return it->second;
  NameId id = static_cast<NameId>(names_.size());
  names_.emplace_back(text);
  name_index_.emplace(names_.back(), id);
  return id;
}

TermId TermFactory::intern(NodeKey key, TermNode node) {
  auto it = node_index_.find(key);
  if (it != node_index_.end()) return it->second;
  TermId id = static_cast<TermId>(nodes_.size());
  nodes_.push_back(std::move(node));
  node_index_.emplace(std::move(key), id);
  return id;
}

TermId TermFactory::nil() {
  if (nil_id_ != kNoTerm) return nil_id_;
  TermNode n{};
  n.kind = TermKind::Nil;
  nil_id_ = intern({TermKind::Nil, {}, 0, kNoTerm, kNoTerm, {}, {}}, std::move(n));
  return nil_id_;
}

TermId TermFactory::var(NameId x) {
  TermNode n{};
  n.kind = TermKind::Var;
  n.var = x;
  n.free_vars = {x};
  n.unguarded_vars = {x};
  return intern({TermKind::Var, {}, x, kNoTerm, kNoTerm, {}, {}}, std::move(n));
}

TermId TermFactory::act(Action a, TermId p) {
  const TermNode& c = nodes_[p];
  TermNode n{};
  n.kind = TermKind::ActPrefix;
  n.action = a;
  n.child0 = p;
  n.free_vars = c.free_vars;
  // An action prefix guards everything below it.
  n.unguarded_vars = {};
  n.size = c.size + 1;
  n.has_invalid_rec = c.has_invalid_rec;
  return intern({TermKind::ActPrefix, a, 0, p, kNoTerm, {}, {}}, std::move(n));
}

TermId TermFactory::clock(TermId p) {
  const TermNode& c = nodes_[p];
  TermNode n{};
  n.kind = TermKind::ClockPrefix;
  n.child0 = p;
  n.free_vars = c.free_vars;
  n.unguarded_vars = c.unguarded_vars;  // the clock prefix does not guard
  n.size = c.size + 1;
  n.has_invalid_rec = c.has_invalid_rec;
  return intern({TermKind::ClockPrefix, {}, 0, p, kNoTerm, {}, {}}, std::move(n));
}

TermId TermFactory::sum(TermId l, TermId r) {
  const TermNode& a = nodes_[l];
  const TermNode& b = nodes_[r];
  TermNode n{};
  n.kind = TermKind::Sum;
  n.child0 = l;
  n.child1 = r;
  n.free_vars = set_union(a.free_vars, b.free_vars);
  n.unguarded_vars = set_union(a.unguarded_vars, b.unguarded_vars);
  n.size = a.size + b.size + 1;
  n.has_invalid_rec = a.has_invalid_rec || b.has_invalid_rec;
  return intern({TermKind::Sum, {}, 0, l, r, {}, {}}, std::move(n));
}

TermId TermFactory::par(TermId l, TermId r) {
  const TermNode& a = nodes_[l];
  const TermNode& b = nodes_[r];
  TermNode n{};
  n.kind = TermKind::Par;
  n.child0 = l;
  n.child1 = r;
  n.free_vars = set_union(a.free_vars, b.free_vars);
  n.unguarded_vars = set_union(a.unguarded_vars, b.unguarded_vars);
  n.size = a.size + b.size + 1;
  n.has_invalid_rec = a.has_invalid_rec || b.has_invalid_rec;
  return intern({TermKind::Par, {}, 0, l, r, {}, {}}, std::move(n));
}

TermId TermFactory::restrict(TermId p, std::vector<NameId> names) {
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  const TermNode& c = nodes_[p];
  TermNode n{};
  n.kind = TermKind::Restrict;
  n.child0 = p;
  n.restrict_set = names;
  n.free_vars = c.free_vars;
  n.unguarded_vars = c.unguarded_vars;
  n.size = c.size + 1;
  n.has_invalid_rec = c.has_invalid_rec;
  return intern({TermKind::Restrict, {}, 0, p, kNoTerm, std::move(names), {}}, std::move(n));
}

TermId TermFactory::relabel(TermId p, Relabelling f) {
  const TermNode& c = nodes_[p];
  TermNode n{};
  n.kind = TermKind::Relabel;
  n.child0 = p;
  n.relabelling = f;
  n.free_vars = c.free_vars;
  n.unguarded_vars = c.unguarded_vars;
  n.size = c.size + 1;
  n.has_invalid_rec = c.has_invalid_rec;
  return intern({TermKind::Relabel, {}, 0, p, kNoTerm, {}, f.entries()}, std::move(n));
}

TermId TermFactory::rec(NameId x, TermId body) {
  const TermNode& c = nodes_[body];
  TermNode n{};
  n.kind = TermKind::Rec;
  n.var = x;
  n.child0 = body;
  n.free_vars = set_erase(c.free_vars, x);
  n.unguarded_vars = set_erase(c.unguarded_vars, x);
  n.size = c.size + 1;
  n.has_invalid_rec = c.has_invalid_rec || set_contains(c.unguarded_vars, x);
  return intern({TermKind::Rec, {}, x, body, kNoTerm, {}, {}}, std::move(n));
}

bool TermFactory::is_guarded(NameId x, TermId t) const {
  return !set_contains(nodes_[t].unguarded_vars, x);
}

TermId TermFactory::substitute(TermId t, NameId x, TermId r) {
  if (!is_closed(r)) throw SubstituteOpenTerm();
  if (!set_contains(nodes_[t].free_vars, x)) return t;
  SubstKey key{t, x, r};
  auto it = subst_memo_.find(key);
  if (it != subst_memo_.end()) return it->second;

  const TermNode n = nodes_[t];  // copy: nodes_ may reallocate below
  TermId out = kNoTerm;
  switch (n.kind) {
    case TermKind::Nil:
      out = t;
      break;
    case TermKind::Var:
      out = (n.var == x) ? r : t;
      break;
    case TermKind::ActPrefix:
      out = act(n.action, substitute(n.child0, x, r));
      break;
    case TermKind::ClockPrefix:
      out = clock(substitute(n.child0, x, r));
      break;
    case TermKind::Sum:
      out = sum(substitute(n.child0, x, r), substitute(n.child1, x, r));
      break;
    case TermKind::Par:
      out = par(substitute(n.child0, x, r), substitute(n.child1, x, r));
      break;
    case TermKind::Restrict:
      out = restrict(substitute(n.child0, x, r), n.restrict_set);
      break;
    case TermKind::Relabel:
      out = relabel(substitute(n.child0, x, r), n.relabelling);
      break;
    case TermKind::Rec:
      // x is free in t, so it is not the bound variable here.
      out = rec(n.var, substitute(n.child0, x, r));
      break;
  }
  subst_memo_.emplace(key, out);
  return out;
}

std::variant<Process, ProcessError> validate_process(const TermFactory& f, TermId t) {
  const TermNode& n = f.node(t);
  if (n.has_invalid_rec) {
    // Find the first offending binder, leftmost-innermost.
    TermId cur = t;
    for (;;) {
      const TermNode& m = f.node(cur);
      TermId next = kNoTerm;
      if (m.child0 != kNoTerm && f.node(m.child0).has_invalid_rec)
        next = m.child0;
      else if (m.child1 != kNoTerm && f.node(m.child1).has_invalid_rec)
        next = m.child1;
      if (next == kNoTerm) {
        // cur itself is the offending rec
        return ProcessError{ProcessErrorKind::UnguardedRecursion, m.var};
      }
      cur = next;
    }
  }
  if (!n.free_vars.empty()) return ProcessError{ProcessErrorKind::NotClosed, n.free_vars.front()};
  return Process(t);
}

}  // namespace tacs
