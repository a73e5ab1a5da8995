#include <set>

#include "doctest.h"
#include "vigil/arena.hpp"
#include "vigil/product.hpp"
#include "vigil/sensing.hpp"
#include "vigil/strategy.hpp"

using namespace vigil;

namespace {

// Directly filled ladder: qF is the accepting hub, q1 and q2 can descend or
// shuffle sideways, q3 is a losing sink, e0 belongs to the environment.
ProductGame ladder() {
  ProductGame g;
  Arena& a = g.arena;
  a.add_ap("p");
  a.turn_pred = a.add_pred("t", false);
  for (const char* n : {"qF", "q1", "q2", "q3"}) a.add_state(n, Player::system);
  a.add_state("e0", Player::environment);
  a.add_action("a0", Player::system);
  a.add_action("a1", Player::system);
  a.add_action("a2", Player::system);
  g.dba.state_names = {"h"};
  g.dba.accepting = {0};
  g.dba.init = 0;
  for (StateId s = 0; s < 5; ++s) g.qs.push_back({s, 0});
  g.owner = {Player::system, Player::system, Player::system, Player::system,
             Player::environment};
  g.accepting = {1, 0, 0, 0, 0};
  g.trans = {
      {{0, 0}},                  // qF: restart
      {{0, 0}, {1, 2}, {2, 3}},  // q1: descend, shuffle, blunder
      {{0, 1}, {1, 0}},          // q2: shuffle, descend
      {{2, 3}},                  // q3: stuck
      {{0, 0}},                  // e0
  };
  g.q0 = 1;
  g.initial_class = {1, 2};
  return g;
}

// Four winning states with pairwise disjoint moves; only the two hidden bits
// tell them apart.
ProductGame bits_game() {
  Arena a;
  a.add_ap("p");
  a.add_pred("h0", true);
  a.add_pred("h1", true);
  a.turn_pred = a.add_pred("t", false);
  for (int i = 0; i < 4; ++i) {
    const StateId s = a.add_state("s" + std::to_string(i), Player::system);
    a.states[s].valuation[0] = i & 1;
    a.states[s].valuation[1] = (i >> 1) & 1;
    a.states[s].label = {0};
  }
  for (int i = 0; i < 4; ++i) {
    const ActionId mv = a.add_action("mv" + std::to_string(i), Player::system);
    a.add_trans(static_cast<StateId>(i), mv, static_cast<StateId>(i));
  }
  a.init = 0;
  a.sensors.push_back({"low", true, {}, {Formula::var(0)}});
  a.sensors.push_back({"high", true, {}, {Formula::var(1)}});
  validate(a);
  return build_product(a, compile_pattern(parse_spec("GF p"), a.ap));
}

}  // namespace

TEST_CASE("the solver picks descending moves and winning restarts") {
  ProductGame g = ladder();
  SolveResult w = solve_buchi(g);
  CHECK(w.win1 == std::vector<std::uint8_t>{1, 1, 1, 0, 1});
  CHECK(w.rank == std::vector<std::int32_t>{0, 1, 1, -1, 1});
  CHECK(w.ws[0] == 0);
  CHECK(w.ws[1] == 0);  // a1 keeps the rank; a0 descends
  CHECK(w.ws[2] == 1);  // a0 keeps the rank; a1 descends
  CHECK(w.max_rank == 1);
}

TEST_CASE("progress proposes the winning moves of every hypothesis") {
  ProductGame g = ladder();
  SolveResult w = solve_buchi(g);

  auto prog = progress_set(g, w, {1, 2});
  REQUIRE(prog.has_value());
  CHECK(*prog == std::vector<ActionId>{0, 1});
  CHECK(allow_set(g, w, {1, 2}) == std::vector<ActionId>{0, 1});
  auto fp = f_progress(g, w, {1, 2});
  REQUIRE(fp.has_value());
  CHECK(fp->support == std::vector<ActionId>{0, 1});

  CHECK_FALSE(progress_set(g, w, {1, 3}).has_value());  // a losing hypothesis
  CHECK_FALSE(progress_set(g, w, {1, 4}).has_value());  // an environment hypothesis
  CHECK_FALSE(f_progress(g, w, {1, 3}).has_value());

  // qF only allows its restart, so q2's proposal is unsafe for it.
  auto mixed = progress_set(g, w, {0, 2});
  REQUIRE(mixed.has_value());
  CHECK(*mixed == std::vector<ActionId>{0, 1});
  CHECK(allow_set(g, w, {0, 2}) == std::vector<ActionId>{0});
  CHECK_FALSE(f_progress(g, w, {0, 2}).has_value());
}

TEST_CASE("sampling is uniform over the support and seed-deterministic") {
  ActionDistribution d{{2, 5}};
  std::mt19937_64 rng(9);
  std::set<ActionId> seen;
  for (int i = 0; i < 200; ++i) {
    const ActionId a = sample(d, rng);
    CHECK((a == 2 || a == 5));
    seen.insert(a);
  }
  CHECK(seen.size() == 2);

  std::mt19937_64 r1(42), r2(42);
  for (int i = 0; i < 50; ++i) CHECK(sample(d, r1) == sample(d, r2));
}

TEST_CASE("decide plays, senses or gives up") {
  ProductGame g = ladder();
  SolveResult w = solve_buchi(g);
  StrategyCache cache;

  Decision phys = decide(g, w, {}, cache, {1, 2});
  CHECK(phys.kind == Decision::Kind::physical);
  CHECK(phys.dist.support == std::vector<ActionId>{0, 1});
  CHECK(cache.size() == 0);  // no sensing consulted

  Decision dead = decide(g, w, {}, cache, {1, 3});
  CHECK(dead.kind == Decision::Kind::dead_end);
  CHECK(cache.size() == 1);  // the failure is memoized too
  Decision again = decide(g, w, {}, cache, {1, 3});
  CHECK(again.kind == Decision::Kind::dead_end);
  CHECK(cache.hits() == 1);
}

TEST_CASE("decide works through the revision tree and the cache") {
  ProductGame g = bits_game();
  SolveResult w = solve_buchi(g);
  REQUIRE(g.num_q() == 4);
  for (QId q = 0; q < 4; ++q) REQUIRE(w.win1[q] == 1);
  const std::vector<SensingAction> sensors = lift_sensors(g);
  StrategyCache cache;

  Decision d0 = decide(g, w, sensors, cache, {0, 1, 2, 3});
  CHECK(d0.kind == Decision::Kind::sense);
  CHECK(d0.sensor == 0);
  CHECK(d0.formula == 0);
  CHECK(d0.sensing_rank == 2);
  CHECK(cache.size() == 5);  // every non-progress belief of the tree

  auto [yes, no] = knows(g, sensors[static_cast<std::size_t>(d0.sensor)],
                         static_cast<std::size_t>(d0.formula), {0, 1, 2, 3});
  CHECK(yes == Belief{1, 3});
  CHECK(no == Belief{0, 2});

  Decision d1 = decide(g, w, sensors, cache, yes);
  CHECK(d1.kind == Decision::Kind::sense);
  CHECK(d1.sensor == 1);
  CHECK(d1.sensing_rank == 1);
  CHECK(cache.hits() == 1);

  Decision d2 = decide(g, w, sensors, cache, {3});
  CHECK(d2.kind == Decision::Kind::physical);
  CHECK(d2.dist.support == std::vector<ActionId>{3});
}
