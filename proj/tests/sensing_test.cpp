#include <cmath>
#include <map>

#include "doctest.h"
#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "vigil/arena.hpp"
#include "vigil/errors.hpp"
#include "vigil/sensing.hpp"
#include "vigil/strategy.hpp"

using namespace vigil;

namespace {

// Four states indistinguishable except through two hidden bits; state i
// carries h0 = i & 1, h1 = i >> 1.
ProductGame four_corners() {
  Arena a;
  a.add_ap("p");
  a.add_pred("h0", true);
  a.add_pred("h1", true);
  a.turn_pred = a.add_pred("t", false);
  for (int i = 0; i < 4; ++i) {
    const StateId s = a.add_state("s" + std::to_string(i), Player::system);
    a.states[s].valuation[0] = i & 1;
    a.states[s].valuation[1] = (i >> 1) & 1;
  }
  const ActionId mv = a.add_action("mv", Player::system);
  for (StateId s = 0; s < 4; ++s) a.add_trans(s, mv, s);
  a.init = 0;
  a.sensors.push_back({"low", true, {}, {Formula::var(0)}});
  a.sensors.push_back({"gated", false, {0, 1}, {Formula::var(1)}});
  validate(a);
  return build_product(a, compile_pattern(parse_spec("GF p"), a.ap));
}

bool singleton(const Belief& b) { return b.size() == 1; }

}  // namespace

TEST_CASE("declared sensors lift to the product") {
  ProductGame g = four_corners();
  REQUIRE(g.num_q() == 4);
  CHECK(g.initial_class == Belief{0, 1, 2, 3});
  std::vector<SensingAction> sensors = lift_sensors(g);
  REQUIRE(sensors.size() == 2);
  CHECK(sensors[0].name == "low");
  CHECK(sensors[0].enabled_q.empty());  // global
  CHECK(sensors[1].enabled_q == std::vector<std::uint8_t>{1, 1, 0, 0});
  CHECK(enabled_at(sensors, {0, 1}) == std::vector<SensorId>{0, 1});
  CHECK(enabled_at(sensors, {0, 2}) == std::vector<SensorId>{0});

  auto [yes, no] = knows(g, sensors[0], 0, {0, 1, 2, 3});
  CHECK(yes == Belief{1, 3});
  CHECK(no == Belief{0, 2});
  CHECK_THROWS_AS(knows(g, sensors[1], 0, {0, 2}), run_error);
}

TEST_CASE("revision tree shares equal sub-beliefs and ranks by min-max") {
  ProductGame g = four_corners();
  const std::vector<SensingAction> sensors = {
      {0, "low", {}, {Formula::var(0)}},
      {1, "high", {}, {Formula::var(1)}},
  };
  BrTree t = build_brtree(g, sensors, {0, 1, 2, 3}, singleton);
  // {0123}, two pair splits each way, four singletons: 9 distinct beliefs.
  CHECK(t.nodes.size() == 9);
  REQUIRE(solve_sensing(t));
  CHECK(t.nodes[0].rank == 2);
  CHECK(t.nodes[0].kind == BrNode::Kind::internal);
  CHECK(t.nodes[0].action == 0);
  CHECK(t.nodes[0].formula == 0);
  CHECK(t.nodes[t.node({1, 3})].rank == 1);
  CHECK(t.nodes[t.node({0, 1})].rank == 1);
  CHECK(t.nodes[t.node({2})].rank == 0);
  CHECK(t.nodes[t.node({2})].kind == BrNode::Kind::progress);

  std::map<Belief, std::int32_t> memo;
  CHECK(testing::oracle_sensing_rank(g, sensors, {0, 1, 2, 3}, singleton, memo) == 2);
}

TEST_CASE("ties break on the lowest sensor, then the lowest formula") {
  ProductGame g = four_corners();
  SUBCASE("sensor order decides between equally good queries") {
    const std::vector<SensingAction> sensors = {
        {0, "high_first", {}, {Formula::var(1)}},
        {1, "low_second", {}, {Formula::var(0)}},
    };
    BrTree t = build_brtree(g, sensors, {0, 1, 2, 3}, singleton);
    REQUIRE(solve_sensing(t));
    CHECK(t.nodes[0].rank == 2);
    CHECK(t.nodes[0].action == 0);
  }
  SUBCASE("an unrefining formula yields to a later one") {
    const std::vector<SensingAction> sensors = {
        {0, "both", {}, {Formula::var(1), Formula::var(0)}},
    };
    // h1 is constant on {0, 1}; only the second formula splits.
    BrTree t = build_brtree(g, sensors, {0, 1}, singleton);
    REQUIRE(solve_sensing(t));
    CHECK(t.nodes[0].rank == 1);
    CHECK(t.nodes[0].action == 0);
    CHECK(t.nodes[0].formula == 1);
  }
}

TEST_CASE("a belief no sensor refines is unrefinable") {
  ProductGame g = four_corners();
  const std::vector<SensingAction> sensors = {{0, "high", {}, {Formula::var(1)}}};
  BrTree t = build_brtree(g, sensors, {0, 1}, singleton);
  CHECK(t.nodes[0].kind == BrNode::Kind::unrefinable);
  CHECK_FALSE(solve_sensing(t));
  CHECK(t.nodes[0].rank == -1);

  std::map<Belief, std::int32_t> memo;
  CHECK(testing::oracle_sensing_rank(g, sensors, {0, 1}, singleton, memo) == -1);
}

TEST_CASE("a defined root needs no queries") {
  ProductGame g = four_corners();
  BrTree t = build_brtree(g, {}, {2}, singleton);
  CHECK(t.nodes.size() == 1);
  CHECK(t.nodes[0].kind == BrNode::Kind::progress);
  CHECK(solve_sensing(t));
  CHECK(t.nodes[0].rank == 0);
}

TEST_CASE("threshold families need exactly ceil(log2 n) queries") {
  for (int n : {2, 3, 5, 8}) {
    testing::ThresholdInstance ti = testing::threshold_instance(n);
    const Belief root = initial_belief(ti.game);
    REQUIRE(root.size() == static_cast<std::size_t>(n));
    const auto defined = [&](const Belief& b) {
      return f_progress(ti.game, ti.win, b).has_value();
    };
    BrTree t = build_brtree(ti.game, ti.sensors, root, defined);
    REQUIRE(solve_sensing(t));
    const auto expect = static_cast<std::int32_t>(std::ceil(std::log2(n)));
    CHECK(t.nodes[0].rank == expect);

    std::map<Belief, std::int32_t> memo;
    CHECK(testing::oracle_sensing_rank(ti.game, ti.sensors, root, defined, memo) == expect);
  }
}

TEST_CASE("the strategy cache is idempotent and counts hits") {
  StrategyCache cache;
  CHECK(cache.size() == 0);
  CHECK_FALSE(cache.lookup({1, 2}).has_value());
  CHECK(cache.hits() == 0);
  cache.insert({1, 2}, {true, 3, 0, 1});
  cache.insert({1, 2}, {true, 9, 5, 5});  // ignored: first write wins
  CHECK(cache.size() == 1);
  const auto e = cache.lookup({1, 2});
  REQUIRE(e.has_value());
  CHECK(e->rank == 3);
  CHECK(e->action == 0);
  CHECK(cache.hits() == 1);
}
