// Command line surface of the workbench.
//
// Exit codes: 0 when the requested property holds or every assertion passed,
// 1 when a check fails or a suite reports violations, 2 on usage errors and
// exploration limits.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tacs/errors.hpp"
#include "tacs/generator.hpp"
#include "tacs/preorder.hpp"
#include "tacs/registry.hpp"
#include "tacs/semantics.hpp"
#include "tacs/state_space.hpp"
#include "tacs/suites.hpp"
#include "tacs/syntactic_order.hpp"
#include "tacs/syntax.hpp"
#include "tacs/term.hpp"
#include "tacs/witness.hpp"

namespace {

using nlohmann::json;
using namespace tacs;

std::string read_source(const std::string& arg) {
  if (arg == "-") {
    std::ostringstream out;
    out << std::cin.rdbuf();
    return out.str();
  }
  std::ifstream in(arg);
  if (!in) throw TacsError("cannot open " + arg);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// Terms on the command line are literal text; a parse failure reports the
// offending span.
TermId parse_or_die(TermFactory& f, const std::string& text) {
  ParseResult r = parse(f, text);
  if (!r.term) {
    const ParseError& e = *r.error;
    throw TacsError(std::string(to_string(e.kind)) + " at " + std::to_string(e.span.begin) +
                    ".." + std::to_string(e.span.end) + ": " + e.message);
  }
  return *r.term;
}

Process process_or_die(TermFactory& f, TermId t) {
  auto v = validate_process(f, t);
  if (auto* err = std::get_if<ProcessError>(&v)) {
    std::string what = err->kind == ProcessErrorKind::NotClosed
                           ? "term is not closed (free variable " + f.name(err->var) + ")"
                           : "unguarded recursion on " + f.name(err->var);
    throw TacsError(what);
  }
  return std::get<Process>(v);
}

SemanticsType sem_of(int flag) {
  return flag == 2 ? SemanticsType::Type2 : SemanticsType::Type1;
}

json witness_json(const TermFactory& f, const WitnessRelation& w) {
  json entries = json::array();
  for (const auto& e : w.entries) {
    json row;
    row["p"] = print(f, e.p);
    row["q"] = print(f, e.q);
    if (w.kind.family == Family::Indexed) row["credit"] = e.credit;
    entries.push_back(std::move(row));
  }
  return json{{"kind", to_string(w.kind)}, {"entries", std::move(entries)}};
}

json refutation_json(const TermFactory& f, const Refutation& r) {
  json steps = json::array();
  for (const auto& s : r.steps) {
    json row;
    row["p"] = print(f, s.p);
    row["q"] = print(f, s.q);
    row["credit"] = s.credit;
    row["clause"] = s.clause;
    row["attacker"] = s.attacker_is_p ? "p" : "q";
    row["move"] = s.clock_move ? "clock" : "action";
    if (!s.clock_move) row["action"] = print(f, s.action);
    row["attacker_target"] = print(f, s.attacker_target);
    if (s.terminal) {
      row["terminal"] = true;
      row["reason"] = s.reason;
    } else {
      row["defender_target"] = print(f, s.defender_target);
      row["defender_credit"] = s.defender_credit;
      row["credit_move"] = s.credit_move;
    }
    steps.push_back(std::move(row));
  }
  return json{{"steps", std::move(steps)}};
}

int report_outcome(const SuiteReport& rep) {
  for (const auto& v : rep.violations)
    std::cout << "case " << v.case_index << " " << v.property << ": " << v.detail
              << "\n  replay: " << v.replay << "\n";
  std::cout << rep.name << ": " << rep.cases << " cases, " << rep.skipped << " skipped, "
            << rep.violations.size() << " violations, " << rep.wall_seconds << " s\n";
  return rep.passed() ? 0 : 1;
}

struct Options {
  std::string input;
  std::string term_a, term_b;
  int semantics{1};
  std::size_t limit{10000};
  std::string format{"json"};
  std::string relation{"naive"};
  std::optional<std::size_t> cap;
  int threads{1};
  std::string suite;
  std::string example;
  std::uint64_t seed{7};
  std::size_t cases{100};
  std::size_t budget{10};
  bool as_json{false};
};

int cmd_parse(const Options& o) {
  TermFactory f;
  std::string text = read_source(o.input);
  TermId t = parse_or_die(f, text);
  std::cout << (o.as_json ? to_json(f, t) : print(f, t)) << "\n";
  return 0;
}

int cmd_print(const Options& o) {
  TermFactory f;
  TermId t = from_json(f, read_source(o.input));
  std::cout << print(f, t) << "\n";
  return 0;
}

int cmd_urgent(const Options& o) {
  TermFactory f;
  Semantics sem(f);
  TermId t = parse_or_die(f, o.input);
  const auto& u = sem.urgent_set(t);
  std::string out = "{";
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (i) out += ", ";
    out += print(f, u[i]);
  }
  std::cout << out << "}\n";
  return 0;
}

int cmd_steps(const Options& o) {
  TermFactory f;
  Semantics sem(f);
  TermId t = parse_or_die(f, o.input);
  for (const auto& [a, u] : sem.action_successors(t))
    std::cout << print(f, a) << " -> " << print(f, u) << "\n";
  for (TermId u : sem.clock_successors(t, sem_of(o.semantics)))
    std::cout << "sigma -> " << print(f, u) << "\n";
  return 0;
}

int cmd_lts(const Options& o) {
  TermFactory f;
  Semantics sem(f);
  TermId t = parse_or_die(f, o.input);
  process_or_die(f, t);
  StateSpace s = explore(sem, t, o.limit);
  const auto& clock =
      o.semantics == 2 ? s.clock2_edges : s.clock1_edges;
  if (o.format == "dot") {
    std::cout << "digraph lts {\n  rankdir=LR;\n";
    for (StateIdx i = 0; i < s.size(); ++i)
      std::cout << "  n" << i << " [label=\"" << s.printed[i] << "\""
                << (i == s.root_index ? ", shape=doublecircle" : "") << "];\n";
    for (StateIdx i = 0; i < s.size(); ++i) {
      for (auto [l, j] : s.act_edges[i])
        std::cout << "  n" << i << " -> n" << j << " [label=\"" << s.label_text[l] << "\"];\n";
      for (StateIdx j : clock[i])
        std::cout << "  n" << i << " -> n" << j << " [label=\"sigma\", style=dashed];\n";
    }
    std::cout << "}\n";
    return 0;
  }
  json out;
  out["root"] = s.root_index;
  out["states"] = s.printed;
  out["labels"] = s.label_text;
  json acts = json::array(), clocks = json::array(), urgents = json::array();
  for (StateIdx i = 0; i < s.size(); ++i) {
    for (auto [l, j] : s.act_edges[i]) acts.push_back({i, l, j});
    for (StateIdx j : clock[i]) clocks.push_back({i, j});
    json u = json::array();
    for (LabelIdx l : s.urgent[i]) u.push_back(s.label_text[l]);
    urgents.push_back(std::move(u));
  }
  out["act_edges"] = std::move(acts);
  out["clock_edges"] = std::move(clocks);
  out["urgent"] = std::move(urgents);
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_faster_set(const Options& o) {
  TermFactory f;
  SyntacticOrder order(f);
  TermId t = parse_or_die(f, o.input);
  FasterSet set = order.faster_set(t);
  std::vector<std::string> lines;
  for (TermId m : set.members) lines.push_back(print(f, m));
  std::sort(lines.begin(), lines.end());
  for (const auto& line : lines) std::cout << line << "\n";
  return 0;
}

RelationKind kind_of(const Options& o) {
  SemanticsType s = sem_of(o.semantics);
  if (o.relation == "naive") return RelationKind::naive(s);
  if (o.relation == "delayed") return RelationKind::delayed(s);
  if (o.relation == "indexed") return RelationKind::indexed(s, o.cap);
  if (o.relation == "strong") return RelationKind::strong(s);
  if (o.relation == "combined") return RelationKind::combined();
  throw TacsError("unknown relation: " + o.relation);
}

int cmd_check(const Options& o) {
  TermFactory f;
  Semantics sem(f);
  TermId pt = parse_or_die(f, o.term_a);
  TermId qt = parse_or_die(f, o.term_b);
  CheckPolicy policy;
  policy.threads = o.threads;
  CheckVerdict v = check(sem, process_or_die(f, pt), process_or_die(f, qt), kind_of(o), o.limit,
                         policy);

  // Self audit: the certificate must survive the independent validator.
  StateSpace sp = explore(sem, pt, o.limit);
  StateSpace sq = explore(sem, qt, o.limit);
  std::string why;
  bool audited = v.holds ? validate_witness(*v.witness, sp, sq, &why)
                         : replay_refutation(*v.refutation, v.kind, sp, sq, &why);

  json out;
  out["relation"] = to_string(v.kind);
  out["p"] = print(f, pt);
  out["q"] = print(f, qt);
  out["holds"] = v.holds;
  out["audited"] = audited;
  out["stats"] = {{"p_states", v.stats.p_states}, {"q_states", v.stats.q_states},
                  {"pairs", v.stats.pairs},       {"configs", v.stats.configs},
                  {"rounds", v.stats.rounds},     {"credit_cap", v.stats.credit_cap}};
  if (v.holds)
    out["witness"] = witness_json(f, *v.witness);
  else
    out["refutation"] = refutation_json(f, *v.refutation);
  std::cout << out.dump(2) << "\n";
  if (!audited) {
    std::cerr << "internal error: certificate failed its audit: " << why << "\n";
    return 2;
  }
  return v.holds ? 0 : 1;
}

int cmd_verify(const Options& o) {
  SuiteConfig cfg;
  cfg.seed = o.seed;
  cfg.cases = o.cases;
  cfg.budget = o.budget;
  cfg.state_limit = o.limit;
  cfg.threads = o.threads;
  return report_outcome(run_suite(o.suite, cfg));
}

int cmd_reproduce(const Options& o) { return report_outcome(reproduce(o.example)); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"workbench for timed process terms and faster-than preorders"};
  app.require_subcommand(1);
  Options o;
  int rc = 0;
  auto set = [&](int (*fn)(const Options&)) {
    return [&o, &rc, fn]() { rc = fn(o); };
  };

  auto* parse_cmd = app.add_subcommand("parse", "parse a term from a file or - (stdin)");
  parse_cmd->add_option("input", o.input, "file path or -")->required();
  parse_cmd->add_flag("--json", o.as_json, "emit the JSON encoding instead of text");
  parse_cmd->callback(set(cmd_parse));

  auto* print_cmd = app.add_subcommand("print", "print a JSON-encoded term as text");
  print_cmd->add_option("input", o.input, "file path or -")->required();
  print_cmd->callback(set(cmd_print));

  auto* urgent_cmd = app.add_subcommand("urgent", "urgent action set of a term");
  urgent_cmd->add_option("term", o.input, "term text")->required();
  urgent_cmd->callback(set(cmd_urgent));

  auto* steps_cmd = app.add_subcommand("steps", "action and clock steps of a term");
  steps_cmd->add_option("--semantics", o.semantics, "1 or 2")->check(CLI::Range(1, 2));
  steps_cmd->add_option("term", o.input, "term text")->required();
  steps_cmd->callback(set(cmd_steps));

  auto* lts_cmd = app.add_subcommand("lts", "explore the reachable state graph");
  lts_cmd->add_option("--semantics", o.semantics, "1 or 2")->check(CLI::Range(1, 2));
  lts_cmd->add_option("--limit", o.limit, "state limit");
  lts_cmd->add_option("--format", o.format, "json or dot")
      ->check(CLI::IsMember({"json", "dot"}));
  lts_cmd->add_option("term", o.input, "process text")->required();
  lts_cmd->callback(set(cmd_lts));

  auto* faster_cmd = app.add_subcommand("faster-set", "terms faster under the syntactic order");
  faster_cmd->add_option("term", o.input, "term text")->required();
  faster_cmd->callback(set(cmd_faster_set));

  auto* check_cmd = app.add_subcommand("check", "decide a faster-than preorder");
  check_cmd->add_option("--relation", o.relation, "naive|delayed|indexed|strong|combined")
      ->check(CLI::IsMember({"naive", "delayed", "indexed", "strong", "combined"}));
  check_cmd->add_option("--semantics", o.semantics, "1 or 2")->check(CLI::Range(1, 2));
  check_cmd->add_option("--cap", [&o](const CLI::results_t& r) {
    o.cap = std::stoul(r[0]);
    return true;
  }, "credit cap (indexed; default automatic)");
  check_cmd->add_option("--limit", o.limit, "state limit per process");
  check_cmd->add_option("--threads", o.threads, "sweep threads (0 = all cores)");
  check_cmd->add_option("p", o.term_a, "candidate faster process")->required();
  check_cmd->add_option("q", o.term_b, "candidate slower process")->required();
  check_cmd->callback(set(cmd_check));

  auto* verify_cmd = app.add_subcommand("verify", "run a law verification suite");
  verify_cmd->add_option("--suite", o.suite, "suite name")->required();
  verify_cmd->add_option("--seed", o.seed, "corpus seed");
  verify_cmd->add_option("--cases", o.cases, "number of cases");
  verify_cmd->add_option("--budget", o.budget, "term size budget");
  verify_cmd->add_option("--limit", o.limit, "state limit per process")->default_val(2000);
  verify_cmd->add_option("--threads", o.threads, "cases in parallel (0 = all cores)");
  verify_cmd->callback(set(cmd_verify));

  auto* repro_cmd = app.add_subcommand("reproduce", "replay a registered worked example");
  repro_cmd->add_option("--example", o.example, "example id")->required();
  repro_cmd->callback(set(cmd_reproduce));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}
