#include <string>
#include <vector>

#include "doctest.h"
#include "support/oracles.hpp"
#include "vigil/arena.hpp"
#include "vigil/dba.hpp"
#include "vigil/product.hpp"

using namespace vigil;

namespace {

// s0 (sys, {}) <-> e0 (env, {p}): the system can force visiting p forever.
Arena alternating() {
  Arena a;
  a.add_ap("p");
  a.turn_pred = a.add_pred("t", false);
  const StateId s0 = a.add_state("s0", Player::system);
  const StateId e0 = a.add_state("e0", Player::environment);
  a.states[e0].label = {0};
  const ActionId go = a.add_action("go", Player::system);
  const ActionId back = a.add_action("back", Player::environment);
  a.add_trans(s0, go, e0);
  a.add_trans(e0, back, s0);
  a.init = s0;
  return a;
}

// s0 branches: a0 reaches the p-loop, a1 reaches a p-free loop. The
// environment never gets a say.
Arena branching() {
  Arena a;
  a.add_ap("p");
  a.turn_pred = a.add_pred("t", false);
  const StateId s0 = a.add_state("s0", Player::system);
  const StateId good = a.add_state("good", Player::system);
  const StateId bad = a.add_state("bad", Player::system);
  a.states[good].label = {0};
  const ActionId a0 = a.add_action("a0", Player::system);
  const ActionId a1 = a.add_action("a1", Player::system);
  a.add_trans(s0, a0, good);
  a.add_trans(s0, a1, bad);
  a.add_trans(good, a0, good);
  a.add_trans(bad, a0, bad);
  a.init = s0;
  return a;
}

// The environment chooses whether p is ever produced again.
Arena env_controlled() {
  Arena a;
  a.add_ap("p");
  a.turn_pred = a.add_pred("t", false);
  const StateId s0 = a.add_state("s0", Player::system);
  const StateId e0 = a.add_state("e0", Player::environment);
  const StateId sp = a.add_state("sp", Player::system);
  a.states[sp].label = {0};
  const ActionId go = a.add_action("go", Player::system);
  const ActionId yes = a.add_action("yes", Player::environment);
  const ActionId no = a.add_action("no", Player::environment);
  a.add_trans(s0, go, e0);
  a.add_trans(e0, yes, sp);
  a.add_trans(e0, no, s0);
  a.add_trans(sp, go, e0);
  a.init = s0;
  return a;
}

ProductGame make(const Arena& a, const std::string& spec) {
  const Dba d = compile_pattern(parse_spec(spec), a.ap);
  return build_product(a, d);
}

}  // namespace

TEST_CASE("product materializes the reachable square") {
  ProductGame g = make(alternating(), "GF p");
  // (s0,w1) and (e0,acc): e0 always arrives with p just consumed.
  CHECK(g.num_q() == 2);
  CHECK(g.q0 == 0);
  CHECK(g.initial_class == std::vector<QId>{0});
  CHECK(g.q_name(0) == "s0/w1");
  bool saw_acc = false;
  for (QId q = 0; q < static_cast<QId>(g.num_q()); ++q)
    if (g.accepting[static_cast<std::size_t>(q)]) saw_acc = true;
  CHECK(saw_acc);

  SolveResult w = solve_buchi(g);
  for (QId q = 0; q < static_cast<QId>(g.num_q()); ++q) CHECK(w.win1[q] == 1);
  CHECK(w.max_rank >= 0);
  CHECK(testing::oracle_win1(g) == w.win1);
}

TEST_CASE("system branch picks the accepting loop") {
  ProductGame g = make(branching(), "GF p");
  SolveResult w = solve_buchi(g);
  CHECK(w.win1[g.q0] == 1);
  // The p-free loop never wins.
  bool some_losing = false;
  for (QId q = 0; q < static_cast<QId>(g.num_q()); ++q) {
    if (!w.win1[q]) {
      some_losing = true;
      CHECK(w.rank[q] == -1);
      CHECK(allow_actions(g, w, q).empty());
    } else if (g.owner[static_cast<std::size_t>(q)] == Player::system) {
      CHECK_FALSE(allow_actions(g, w, q).empty());
      CHECK(w.ws[q] != kNone);
      const QId nxt = successor(g, q, w.ws[q]);
      REQUIRE(nxt != kNone);
      CHECK(w.win1[nxt] == 1);
      if (w.rank[q] > 0) CHECK(w.rank[nxt] == w.rank[q] - 1);
    }
  }
  CHECK(some_losing);
  CHECK(testing::oracle_win1(g) == w.win1);
  CHECK_FALSE(testing::ws_graph_has_accepting_free_cycle(g, w));
}

TEST_CASE("environment can starve the recurrence") {
  ProductGame g = make(env_controlled(), "GF p");
  SolveResult w = solve_buchi(g);
  for (QId q = 0; q < static_cast<QId>(g.num_q()); ++q) CHECK(w.win1[q] == 0);
  CHECK(w.max_rank == -1);
  CHECK(testing::oracle_win1(g) == w.win1);
}

TEST_CASE("safety violations poison the product") {
  Arena a = branching();
  // Relabel: the bad loop now carries a forbidden proposition.
  a.ap.push_back("z");
  a.states[2].label = {1};
  ProductGame g = make(a, "GF p & G !z");
  SolveResult w = solve_buchi(g);
  CHECK(w.win1[g.q0] == 1);
  // Everything reachable via a1 is lost.
  const QId via_bad = successor(g, g.q0, 1);
  REQUIRE(via_bad != kNone);
  CHECK(w.win1[via_bad] == 0);
  CHECK(testing::oracle_win1(g) == w.win1);
}

TEST_CASE("observation-equivalent starts are materialized together") {
  Arena a;
  a.add_ap("p");
  a.add_pred("hid", true);
  a.turn_pred = a.add_pred("t", false);
  const StateId s0 = a.add_state("s0", Player::system);
  const StateId s1 = a.add_state("s1", Player::system);
  a.states[s1].valuation[0] = 1;  // differs only in the hidden predicate
  a.states[s1].label = {0};
  const ActionId act = a.add_action("a", Player::system);
  a.add_trans(s0, act, s0);
  a.add_trans(s1, act, s1);
  a.init = s0;
  ProductGame g = make(a, "GF p");
  CHECK(g.initial_class.size() == 2);
  CHECK(sorted_contains(g.initial_class, g.q0));
  CHECK(g.num_q() >= 2);

  SUBCASE("a visible difference keeps the start alone") {
    a.pred_hidden[0] = 0;
    for (auto& st : a.states) st.observable[0] = 1;
    ProductGame h = make(a, "GF p");
    CHECK(h.initial_class == std::vector<QId>{h.q0});
  }
}
