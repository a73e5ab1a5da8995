#pragma once

// Belief-level strategy: play the winning moves shared by all hypotheses
// when that is safe, otherwise sense until it becomes safe.

#include <optional>
#include <random>
#include <vector>

#include "vigil/product.hpp"
#include "vigil/sensing.hpp"

namespace vigil {

// Uniform distribution over a nonempty, sorted, duplicate-free support.
struct ActionDistribution {
  std::vector<ActionId> support;
};

ActionId sample(const ActionDistribution& d, std::mt19937_64& rng);

// Winning moves proposed across the belief: { ws(q) : q in B }. Defined only
// when every hypothesis is a winning system state.
std::optional<std::vector<ActionId>> progress_set(const ProductGame& g, const SolveResult& w,
                                                  const Belief& b);

// Actions that keep every hypothesis inside the winning region.
std::vector<ActionId> allow_set(const ProductGame& g, const SolveResult& w, const Belief& b);

// Uniform over the progress set when each proposed move is safe for every
// hypothesis; undefined otherwise.
std::optional<ActionDistribution> f_progress(const ProductGame& g, const SolveResult& w,
                                             const Belief& b);

struct Decision {
  enum class Kind : std::uint8_t { physical, sense, dead_end };
  Kind kind = Kind::dead_end;
  ActionDistribution dist;            // physical
  SensorId sensor = kNone;            // sense
  std::int32_t formula = kNone;       // sense
  std::int32_t sensing_rank = kNone;  // sense: queries to reach a defined belief
};

// Physical when f_progress is defined; otherwise the best first query of a
// belief revision tree rooted at b (solved once, memoized in cache); dead
// end when no query sequence reaches a defined belief.
Decision decide(const ProductGame& g, const SolveResult& w,
                const std::vector<SensingAction>& sensors, StrategyCache& cache,
                const Belief& b);

}  // namespace vigil
