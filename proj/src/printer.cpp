#include <algorithm>

#include "tacs/syntax.hpp"

namespace tacs {

namespace {

// Binding strength: sum 0, par 1, prefixes and rec 2, postfix 3, atoms 4.
int precedence(const TermNode& n) {
  switch (n.kind) {
    case TermKind::Sum: return 0;
    case TermKind::Par: return 1;
    case TermKind::ActPrefix:
    case TermKind::ClockPrefix:
    case TermKind::Rec: return 2;
    case TermKind::Restrict:
    case TermKind::Relabel: return 3;
    case TermKind::Nil:
    case TermKind::Var: return 4;
  }
  return 4;
}

void print_rec(const TermFactory& f, TermId t, int min_prec, std::string& out) {
  const TermNode& n = f.node(t);
  bool parens = precedence(n) < min_prec;
  if (parens) out += '(';
  switch (n.kind) {
    case TermKind::Nil:
      out += '0';
      break;
    case TermKind::Var:
      out += f.name(n.var);
      break;
    case TermKind::ActPrefix:
      out += print(f, n.action);
      out += '.';
      print_rec(f, n.child0, 2, out);
      break;
    case TermKind::ClockPrefix:
      out += "s.";
      print_rec(f, n.child0, 2, out);
      break;
    case TermKind::Rec:
      out += "rec ";
      out += f.name(n.var);
      out += ". ";
      print_rec(f, n.child0, 2, out);
      break;
    case TermKind::Sum:
      print_rec(f, n.child0, 0, out);
      out += " + ";
      print_rec(f, n.child1, 1, out);
      break;
    case TermKind::Par:
      print_rec(f, n.child0, 1, out);
      out += " | ";
      print_rec(f, n.child1, 2, out);
      break;
    case TermKind::Restrict: {
      print_rec(f, n.child0, 3, out);
      out += " \\ {";
      std::vector<std::string> names;
      names.reserve(n.restrict_set.size());
      for (NameId a : n.restrict_set) names.push_back(f.name(a));
      std::sort(names.begin(), names.end());
      for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) out += ',';
        out += names[i];
      }
      out += '}';
      break;
    }
    case TermKind::Relabel: {
      print_rec(f, n.child0, 3, out);
      out += '[';
      std::vector<std::pair<std::string, std::string>> entries;  // (source, target)
      for (const auto& [from, to] : n.relabelling.entries())
        entries.emplace_back(f.name(from), f.name(to));
      std::sort(entries.begin(), entries.end());
      for (std::size_t i = 0; i < entries.size(); ++i) {
        if (i) out += ", ";
        out += entries[i].second;
        out += '/';
        out += entries[i].first;
      }
      out += ']';
      break;
    }
  }
  if (parens) out += ')';
}

}  // namespace

std::string print(const TermFactory& f, Action a) {
  switch (a.kind) {
    case ActKind::Tau: return "tau";
    case ActKind::Name: return f.name(a.name);
    case ActKind::CoName: return "'" + f.name(a.name);
  }
  return "tau";
}

std::string print(const TermFactory& f, TermId t) {
  std::string out;
  print_rec(f, t, 0, out);
  return out;
}

}  // namespace tacs
