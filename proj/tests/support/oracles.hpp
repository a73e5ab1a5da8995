#pragma once

// Independent reference implementations used to validate the library:
// deliberately brute-force, sharing no code with the algorithms under test.

#include <functional>
#include <map>
#include <vector>

#include "vigil/dba.hpp"
#include "vigil/observation.hpp"
#include "vigil/product.hpp"
#include "vigil/sensing.hpp"

namespace vigil::testing {

// Direct semantics of the specification fragment on the ultimately periodic
// word prefix . cycle^w. Safety is checked positionwise; an ordered
// recurrence holds iff every milestone recurs in the cycle. No automaton.
bool lasso_satisfies(const SpecPattern& p, const std::vector<std::string>& ap,
                     const std::vector<Letter>& prefix, const std::vector<Letter>& cycle);

// Winning region by enumeration of all memoryless system strategies. For
// each strategy the losing set is {states that can reach an accepting-free
// lasso}; a state wins if some strategy defeats every environment response.
std::vector<std::uint8_t> oracle_win1(const ProductGame& g);

// Worst-case minimal number of queries to reach a defined belief, by
// top-down recursion over all (sensor, formula) splits. -1 = impossible.
std::int32_t oracle_sensing_rank(const ProductGame& g,
                                 const std::vector<SensingAction>& sensors, const Belief& b,
                                 const std::function<bool(const Belief&)>& defined,
                                 std::map<Belief, std::int32_t>& memo);

// True iff the winning-strategy-restricted graph (system states keep only
// their ws edge, environment states keep everything, both clipped to the
// winning region) has a cycle avoiding accepting states.
bool ws_graph_has_accepting_free_cycle(const ProductGame& g, const SolveResult& w);

}  // namespace vigil::testing
