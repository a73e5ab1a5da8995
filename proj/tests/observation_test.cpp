#include <random>
#include <vector>

#include "doctest.h"
#include "support/generators.hpp"
#include "vigil/arena.hpp"
#include "vigil/errors.hpp"
#include "vigil/observation.hpp"
#include "vigil/product.hpp"

using namespace vigil;

namespace {

// Two indistinguishable starts whose hidden bit decides whether the reward
// proposition is ever produced. pos is visible, h is not.
ProductGame twin_tracks() {
  Arena a;
  a.add_ap("p");
  a.add_pred("pos", false);
  a.add_pred("h", true);
  a.turn_pred = a.add_pred("t", false);
  const StateId s0 = a.add_state("s0", Player::system);
  const StateId s0b = a.add_state("s0b", Player::system);
  const StateId ea = a.add_state("ea", Player::environment);
  const StateId eb = a.add_state("eb", Player::environment);
  const StateId s1 = a.add_state("s1", Player::system);
  const StateId s2 = a.add_state("s2", Player::system);
  a.states[s0b].valuation[1] = 1;
  a.states[ea].valuation[0] = 1;
  a.states[eb].valuation[0] = 1;
  a.states[eb].valuation[1] = 1;
  a.states[s1].valuation[0] = 1;
  a.states[s2].valuation[0] = 1;
  a.states[s2].valuation[1] = 1;
  a.states[s1].label = {0};
  const ActionId go = a.add_action("go", Player::system);
  const ActionId m = a.add_action("m", Player::environment);
  const ActionId k = a.add_action("k", Player::system);
  const ActionId alt = a.add_action("alt", Player::system);
  a.add_trans(s0, go, ea);
  a.add_trans(s0, alt, ea);
  a.add_trans(s0b, go, eb);
  a.add_trans(ea, m, s1);
  a.add_trans(eb, m, s2);
  a.add_trans(s1, k, ea);
  a.add_trans(s2, k, eb);
  a.init = s0;
  validate(a);
  const Dba d = compile_pattern(parse_spec("GF p"), a.ap);
  return build_product(a, d);
}

}  // namespace

TEST_CASE("belief updates follow the post-image filtered by observation") {
  ProductGame g = twin_tracks();
  ObservationModel om = build_observation_model(g);
  // ids follow materialization order: the two starts, then BFS.
  REQUIRE(g.num_q() == 6);
  CHECK(g.initial_class == Belief{0, 1});
  CHECK(obs_of(om, 0) == obs_of(om, 1));
  CHECK(obs_of(om, 2) == obs_of(om, 3));  // ea/eb differ only in h
  CHECK(obs_of(om, 4) == obs_of(om, 5));  // ap labels never observable
  CHECK(obs_of(om, 0) != obs_of(om, 2));

  Belief b = initial_belief(g);
  b = update_system(g, om, b, 0, obs_of(om, 2));  // go
  CHECK(b == Belief{2, 3});
  b = update_env(g, om, b, obs_of(om, 4));
  CHECK(b == Belief{4, 5});
  b = update_system(g, om, b, 2, obs_of(om, 2));  // k
  CHECK(b == Belief{2, 3});

  SUBCASE("an action enabled under only one hypothesis refutes the other") {
    Belief c = update_system(g, om, initial_belief(g), 3, obs_of(om, 2));  // alt
    CHECK(c == Belief{2});
  }
  SUBCASE("an impossible observation is a contradiction") {
    CHECK_THROWS_AS(update_system(g, om, initial_belief(g), 0, obs_of(om, 4)),
                    contradiction_error);
    CHECK_THROWS_AS(update_env(g, om, Belief{2, 3}, obs_of(om, 0)), contradiction_error);
  }
}

TEST_CASE("ap labels and automaton components stay invisible") {
  ProductGame g = twin_tracks();
  ObservationModel om = build_observation_model(g);
  // q4 = (s1, acc) carries p, q5 = (s2, w1) does not; one class regardless.
  CHECK(g.accepting[4] != g.accepting[5]);
  CHECK(obs_of(om, 4) == obs_of(om, 5));
}

TEST_CASE("iterated updates equal the path-enumeration definition") {
  std::mt19937_64 rng(77);
  for (int inst = 0; inst < 30; ++inst) {
    testing::PoGame pg = testing::random_po_game(rng);
    const ProductGame& g = pg.game;
    const ObservationModel om = build_observation_model(g);

    // DFS over concrete plays of bounded length, carrying the incremental
    // belief next to each prefix.
    struct Frame {
      PlayPrefix prefix;
      Belief belief;
    };
    std::vector<Frame> stack;
    stack.push_back({{{g.q0}, {}}, initial_belief(g)});
    int checked = 0;
    while (!stack.empty() && checked < 400) {
      Frame f = std::move(stack.back());
      stack.pop_back();
      const QId q = f.prefix.states.back();
      CHECK(sorted_contains(f.belief, q));  // the truth is never ruled out
      CHECK(f.belief == alpha_oracle(g, om, f.prefix));
      ++checked;
      if (f.prefix.acts.size() >= 4) continue;
      for (const auto& [act, q2] : g.trans[static_cast<std::size_t>(q)]) {
        Frame nf = f;
        nf.prefix.states.push_back(q2);
        nf.prefix.acts.push_back(act);
        nf.belief = g.owner[static_cast<std::size_t>(q)] == Player::system
                        ? update_system(g, om, f.belief, act, obs_of(om, q2))
                        : update_env(g, om, f.belief, obs_of(om, q2));
        stack.push_back(std::move(nf));
      }
    }
    CHECK(checked > 0);
  }
}
