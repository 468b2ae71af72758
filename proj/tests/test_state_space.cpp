#include <doctest.h>

#include <algorithm>
#include <utility>
#include <vector>

#include "helpers.hpp"
#include "tacs/errors.hpp"
#include "tacs/generator.hpp"
#include "tacs/state_space.hpp"

using namespace tacs;
using tacs::test::proc;
using tacs::test::t;

TEST_CASE("explore freezes the reachable graph in printed order") {
  TermFactory f;
  Semantics sem(f);
  StateSpace s = explore(sem, proc(f, "s.a.0"), 100);

  // reachable under actions and both clock relations: s.a.0, a.0 and 0
  REQUIRE(s.size() == 3);
  CHECK(s.printed == std::vector<std::string>{"0", "a.0", "s.a.0"});
  CHECK(s.root_index == 2);
  CHECK(s.index_of(s.root) == 2);
  CHECK(s.states[2] == t(f, "s.a.0"));

  REQUIRE(s.label_actions.size() == 1);
  CHECK(s.label_text == std::vector<std::string>{"a"});

  // a.0 and s.a.0 both step to 0 on a (the clock prefix is transparent)
  using Edge = std::pair<LabelIdx, StateIdx>;
  CHECK(s.act_edges[0].empty());
  CHECK(s.act_edges[1] == std::vector<Edge>{{0, 0}});
  CHECK(s.act_edges[2] == std::vector<Edge>{{0, 0}});

  CHECK(s.clock1_edges[0] == std::vector<StateIdx>{0});
  CHECK(s.clock1_edges[1] == std::vector<StateIdx>{1});
  CHECK(s.clock1_edges[2] == std::vector<StateIdx>{1});
  CHECK(s.clock2_edges[2] == std::vector<StateIdx>{1});

  CHECK(s.urgent[0].empty());
  CHECK(s.urgent[1] == std::vector<LabelIdx>{0});
  CHECK(s.urgent[2].empty());
}

TEST_CASE("recursion loops close instead of unfolding forever") {
  TermFactory f;
  Semantics sem(f);
  StateSpace s = explore(sem, proc(f, "rec x. a.x"), 100);

  // the tick goes through the one-step unfolding, so there are two states
  REQUIRE(s.size() == 2);
  CHECK(s.printed == std::vector<std::string>{"a.rec x. a.x", "rec x. a.x"});
  CHECK(s.root_index == 1);
  using Edge = std::pair<LabelIdx, StateIdx>;
  CHECK(s.act_edges[0] == std::vector<Edge>{{0, 1}});
  CHECK(s.act_edges[1] == std::vector<Edge>{{0, 1}});
  CHECK(s.clock1_edges[0] == std::vector<StateIdx>{0});
  CHECK(s.clock1_edges[1] == std::vector<StateIdx>{0});
}

TEST_CASE("explore enforces the state limit") {
  TermFactory f;
  Semantics sem(f);
  // parallel expansion of the recursion grows without bound
  CHECK_THROWS_AS(explore(sem, proc(f, "rec x. (a.x | b.x)"), 50), StateLimitExceeded);
  // the same process stops fine under a generous limit on a bounded prefix
  CHECK_THROWS_AS(explore(sem, proc(f, "rec x. (a.x | b.x)"), 2000), StateLimitExceeded);
  CHECK(explore(sem, proc(f, "rec x. a.b.x"), 4).size() <= 4);
}

TEST_CASE("state numbering is reproducible across factories") {
  GeneratorConfig cfg{41, 9, 3};
  for (std::uint64_t i = 0; i < 50; ++i) {
    TermFactory f1, f2;
    Semantics s1(f1), s2(f2);
    TermId p1 = generate_process(f1, cfg, i);
    TermId p2 = generate_process(f2, cfg, i);

    StateSpace a, b;
    try {
      a = explore(s1, p1, 500);
      b = explore(s2, p2, 500);
    } catch (const StateLimitExceeded&) {
      continue;
    }
    CAPTURE(i);
    REQUIRE(a.printed == b.printed);
    REQUIRE(a.root_index == b.root_index);
    REQUIRE(a.label_text == b.label_text);
    REQUIRE(a.act_edges == b.act_edges);
    REQUIRE(a.clock1_edges == b.clock1_edges);
    REQUIRE(a.clock2_edges == b.clock2_edges);
    REQUIRE(a.urgent == b.urgent);
  }
}

TEST_CASE("per-type reachability can differ") {
  TermFactory f;
  Semantics sem(f);
  // type 2 lets the components desynchronise, type 1 keeps them in lockstep
  TermId p = t(f, "s.s.s.a.0 | s.s.a.0");
  std::size_t r1 = reachable_state_count(sem, p, SemanticsType::Type1, 1000);
  std::size_t r2 = reachable_state_count(sem, p, SemanticsType::Type2, 1000);
  CHECK(r1 < r2);

  // both are bounded by the full exploration, which follows both relations
  StateSpace s = explore(sem, p, 1000);
  CHECK(r1 <= s.size());
  CHECK(r2 <= s.size());

  CHECK(reachable_state_count(sem, t(f, "s.a.0"), SemanticsType::Type1, 1000) == 3);
  CHECK_THROWS_AS(reachable_state_count(sem, t(f, "rec x. (a.x | b.x)"), SemanticsType::Type1, 40),
                  StateLimitExceeded);
}

TEST_CASE("product walk pairs the roots and moves jointly") {
  TermFactory f;
  Semantics sem(f);
  StateSpace p = explore(sem, proc(f, "s.a.0"), 100);
  StateSpace q = explore(sem, proc(f, "a.0"), 100);

  // p: 0="0" 1="a.0" 2="s.a.0";  q: 0="0" 1="a.0"
  REQUIRE(q.printed == std::vector<std::string>{"0", "a.0"});
  auto pairs = product_reachable_pairs(p, q);
  using P = std::pair<StateIdx, StateIdx>;
  CHECK(pairs == std::vector<P>{{0, 0}, {1, 1}, {2, 1}});
  CHECK(std::is_sorted(pairs.begin(), pairs.end()));

  // asymmetric: actions must match on both sides, so nothing ever fires
  StateSpace r = explore(sem, proc(f, "b.0"), 100);
  auto stuck = product_reachable_pairs(p, r);
  CHECK(std::binary_search(stuck.begin(), stuck.end(), P{p.root_index, r.root_index}));
  for (auto [i, j] : stuck) CHECK(r.printed[j] != "0");
}
