#include <json.hpp>

#include "tacs/syntax.hpp"

namespace tacs {

namespace {

using nlohmann::json;

json action_to_json(const TermFactory& f, Action a) {
  switch (a.kind) {
    case ActKind::Name: return json{{"name", f.name(a.name)}};
    case ActKind::CoName: return json{{"coname", f.name(a.name)}};
    case ActKind::Tau: return json{{"tau", json::object()}};
  }
  return json{{"tau", json::object()}};
}

json term_to_json(const TermFactory& f, TermId t) {
  const TermNode& n = f.node(t);
  switch (n.kind) {
    case TermKind::Nil:
      return json{{"nil", json::object()}};
    case TermKind::Var:
      return json{{"var", {{"name", f.name(n.var)}}}};
    case TermKind::ActPrefix:
      return json{{"act", {{"action", action_to_json(f, n.action)},
                           {"next", term_to_json(f, n.child0)}}}};
    case TermKind::ClockPrefix:
      return json{{"clock", {{"next", term_to_json(f, n.child0)}}}};
    case TermKind::Sum:
      return json{{"sum", {{"left", term_to_json(f, n.child0)},
                           {"right", term_to_json(f, n.child1)}}}};
    case TermKind::Par:
      return json{{"par", {{"left", term_to_json(f, n.child0)},
                           {"right", term_to_json(f, n.child1)}}}};
    case TermKind::Restrict: {
      std::vector<std::string> names;
      for (NameId a : n.restrict_set) names.push_back(f.name(a));
      std::sort(names.begin(), names.end());
      return json{{"restrict", {{"names", names}, {"next", term_to_json(f, n.child0)}}}};
    }
    case TermKind::Relabel: {
      json map = json::object();
      for (const auto& [from, to] : n.relabelling.entries()) map[f.name(from)] = f.name(to);
      return json{{"relabel", {{"map", map}, {"next", term_to_json(f, n.child0)}}}};
    }
    case TermKind::Rec:
      return json{{"rec", {{"var", f.name(n.var)},
                           {"body", term_to_json(f, n.child0)}}}};
  }
  throw JsonFormatError("unreachable term kind");
}

[[noreturn]] void bad(const std::string& what) { throw JsonFormatError(what); }

NameId name_from(TermFactory& f, const json& j, const char* what) {
  if (!j.is_string()) bad(std::string(what) + " must be a string");
  try {
    return f.name_id(j.get<std::string>());
  } catch (const InvalidName& e) {
    bad(e.what());
  }
}

Action action_from(TermFactory& f, const json& j) {
  if (!j.is_object() || j.size() != 1) bad("an action is a single-key object");
  auto it = j.begin();
  const std::string& key = it.key();
  const json& value = it.value();
  if (key == "tau") {
    if (!value.is_object() || !value.empty()) bad("\"tau\" takes an empty object");
    return Action::tau();
  }
  if (key == "name") return Action::in(name_from(f, value, "action name"));
  if (key == "coname") return Action::out(name_from(f, value, "action name"));
  bad("unknown action kind \"" + key + "\"");
}

const json& field(const json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) bad(std::string("missing field \"") + name + "\"");
  return *it;
}

void expect_fields(const json& j, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) bad("expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed)
      if (it.key() == a) ok = true;
    if (!ok) bad("unexpected field \"" + it.key() + "\"");
  }
}

TermId term_from(TermFactory& f, const json& j) {
  if (!j.is_object() || j.size() != 1) bad("a term is a single-key object");
  auto jt = j.begin();
  const std::string& key = jt.key();
  const json& value = jt.value();
  if (key == "nil") {
    if (!value.is_object() || !value.empty()) bad("\"nil\" takes an empty object");
    return f.nil();
  }
  if (key == "var") {
    expect_fields(value, {"name"});
    return f.var(name_from(f, field(value, "name"), "variable"));
  }
  if (key == "act") {
    expect_fields(value, {"action", "next"});
    Action a = action_from(f, field(value, "action"));
    return f.act(a, term_from(f, field(value, "next")));
  }
  if (key == "clock") {
    expect_fields(value, {"next"});
    return f.clock(term_from(f, field(value, "next")));
  }
  if (key == "sum" || key == "par") {
    expect_fields(value, {"left", "right"});
    TermId l = term_from(f, field(value, "left"));
    TermId r = term_from(f, field(value, "right"));
    return key == "sum" ? f.sum(l, r) : f.par(l, r);
  }
  if (key == "restrict") {
    expect_fields(value, {"names", "next"});
    const json& names = field(value, "names");
    if (!names.is_array()) bad("\"names\" must be an array");
    std::vector<NameId> ids;
    for (const json& n : names) ids.push_back(name_from(f, n, "restricted name"));
    return f.restrict(term_from(f, field(value, "next")), std::move(ids));
  }
  if (key == "relabel") {
    expect_fields(value, {"map", "next"});
    const json& map = field(value, "map");
    if (!map.is_object()) bad("\"map\" must be an object");
    std::vector<std::pair<NameId, NameId>> pairs;
    for (auto it = map.begin(); it != map.end(); ++it)
      pairs.emplace_back(name_from(f, json(it.key()), "relabelling source"),
                         name_from(f, it.value(), "relabelling target"));
    try {
      return f.relabel(term_from(f, field(value, "next")), Relabelling::from_pairs(pairs));
    } catch (const InvalidName& e) {
      bad(e.what());
    }
  }
  if (key == "rec") {
    expect_fields(value, {"var", "body"});
    NameId x = name_from(f, field(value, "var"), "recursion variable");
    TermId body = term_from(f, field(value, "body"));
    if (!f.is_guarded(x, body))
      bad("variable \"" + f.name(x) + "\" is unguarded in the recursion body");
    return f.rec(x, body);
  }
  bad("unknown term kind \"" + key + "\"");
}

}  // namespace

std::string to_json(const TermFactory& f, TermId t) {
  return term_to_json(f, t).dump();
}

TermId from_json(TermFactory& f, std::string_view text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw JsonFormatError("malformed JSON document");
  return term_from(f, j);
}

}  // namespace tacs
