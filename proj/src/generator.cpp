#include "tacs/generator.hpp"

#include <random>
#include <string>
#include <vector>

namespace tacs {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

struct Gen {
  TermFactory& f;
  std::mt19937_64 rng;
  std::vector<NameId> names;
  NameId binder{0};
  bool has_binder{false};
  bool guarded{false};

  Gen(TermFactory& fac, const GeneratorConfig& cfg, std::uint64_t index)
      : f(fac), rng(splitmix64(cfg.seed ^ splitmix64(index))) {
    std::size_t n = cfg.alphabet == 0 ? 1 : cfg.alphabet;
    for (std::size_t i = 0; i < n; ++i) {
      // a, b, ..., then a1, b1, ... for larger alphabets
      std::string text(1, static_cast<char>('a' + i % 23));
      if (i >= 23) text += std::to_string(i / 23);
      names.push_back(f.name_id(text));
    }
  }

  // rng() % n keeps picks identical across standard libraries; the slight
  // modulo bias is irrelevant here.
  std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng() % n); }

  Action action() {
    std::size_t roll = pick(names.size() * 2 + 1);
    if (roll == names.size() * 2) return Action::tau();
    NameId n = names[roll / 2];
    return roll % 2 == 0 ? Action::in(n) : Action::out(n);
  }

  TermId leaf() {
    if (has_binder && guarded && pick(2) == 0) return f.var(binder);
    return f.nil();
  }

  TermId gen(std::size_t budget) {
    if (budget <= 1) return leaf();
    struct Choice {
      int what;
      std::size_t weight;
    };
    // weights tuned so roughly two thirds of budget-10 terms carry a clock
    // prefix somewhere
    std::vector<Choice> table = {{0, 30}, {1, 18}, {4, 6}, {5, 5}, {6, 6}};
    if (budget >= 3) {
      table.push_back({2, 13});
      table.push_back({3, 13});
    }
    if (!has_binder) table.push_back({7, 9});
    std::size_t total = 0;
    for (const auto& c : table) total += c.weight;
    std::size_t roll = pick(total);
    int what = 0;
    for (const auto& c : table) {
      if (roll < c.weight) {
        what = c.what;
        break;
      }
      roll -= c.weight;
    }
    switch (what) {
      case 0: {
        bool was = guarded;
        guarded = true;
        TermId body = gen(budget - 1);
        guarded = was;
        return f.act(action(), body);
      }
      case 1:
        return f.clock(gen(budget - 1));
      case 2:
      case 3: {
        std::size_t left = 1 + pick(budget - 2);
        TermId l = gen(left);
        TermId r = gen(budget - 1 - left);
        return what == 2 ? f.sum(l, r) : f.par(l, r);
      }
      case 4: {
        std::vector<NameId> set;
        for (NameId n : names)
          if (pick(3) == 0) set.push_back(n);
        if (set.empty()) set.push_back(names[pick(names.size())]);
        return f.restrict(gen(budget - 1), std::move(set));
      }
      case 5: {
        std::vector<std::pair<NameId, NameId>> map;
        for (NameId n : names)
          if (pick(3) == 0) map.push_back({n, names[pick(names.size())]});
        return f.relabel(gen(budget - 1), Relabelling::from_pairs(std::move(map)));
      }
      case 7: {
        NameId x = f.name_id("x");
        binder = x;
        has_binder = true;
        guarded = false;
        TermId body = gen(budget - 1);
        has_binder = false;
        guarded = false;
        return f.rec(x, body);
      }
      default:
        return leaf();
    }
  }
};

}  // namespace

TermId generate_process(TermFactory& f, const GeneratorConfig& cfg, std::uint64_t index) {
  Gen g(f, cfg, index);
  return g.gen(cfg.budget == 0 ? 1 : cfg.budget);
}

TermId generate_open_term(TermFactory& f, const GeneratorConfig& cfg, std::uint64_t index,
                          NameId free_var) {
  Gen g(f, cfg, splitmix64(index) ^ 0x517cc1b727220a95ull);
  g.binder = free_var;
  g.has_binder = true;  // occurrences of free_var stay guarded; rec never fires
  return g.gen(cfg.budget == 0 ? 1 : cfg.budget);
}

TermId insert_clock_prefixes(TermFactory& f, TermId t, std::uint64_t seed) {
  std::mt19937_64 rng(splitmix64(seed));
  // Recursion via explicit lambda: pad each subterm first, then maybe wrap.
  auto walk = [&](auto&& self, TermId u) -> TermId {
    const TermNode n = f.node(u);  // copy: the node table may grow below
    TermId out = u;
    switch (n.kind) {
      case TermKind::Nil:
      case TermKind::Var:
        out = u;
        break;
      case TermKind::ActPrefix:
        out = f.act(n.action, self(self, n.child0));
        break;
      case TermKind::ClockPrefix:
        out = f.clock(self(self, n.child0));
        break;
      case TermKind::Sum:
        out = f.sum(self(self, n.child0), self(self, n.child1));
        break;
      case TermKind::Par:
        out = f.par(self(self, n.child0), self(self, n.child1));
        break;
      case TermKind::Restrict:
        out = f.restrict(self(self, n.child0), n.restrict_set);
        break;
      case TermKind::Relabel:
        out = f.relabel(self(self, n.child0), n.relabelling);
        break;
      case TermKind::Rec:
        out = f.rec(n.var, self(self, n.child0));
        break;
    }
    if (rng() % 4 == 0) out = f.clock(out);
    return out;
  };
  return walk(walk, t);
}

bool contains_clock_prefix(const TermFactory& f, TermId t) {
  const TermNode& n = f.node(t);
  switch (n.kind) {
    case TermKind::Nil:
    case TermKind::Var:
      return false;
    case TermKind::ClockPrefix:
      return true;
    case TermKind::Sum:
    case TermKind::Par:
      return contains_clock_prefix(f, n.child0) || contains_clock_prefix(f, n.child1);
    default:
      return contains_clock_prefix(f, n.child0);
  }
}

}  // namespace tacs
