#pragma once

// Sensing actions, the belief revision tree, and its attractor-based
// min-max solve. Sensing has no physical effect: a query partitions the
// current belief by the sensed formula's truth value.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <shared_mutex>
#include <vector>

#include "vigil/observation.hpp"
#include "vigil/product.hpp"

namespace vigil {

struct SensingAction {
  SensorId id = kNone;
  std::string name;
  std::vector<std::uint8_t> enabled_q;  // per product state; empty = everywhere
  std::vector<Formula> senses;          // over predicates

  bool enabled_at(QId q) const {
    return enabled_q.empty() || enabled_q[static_cast<std::size_t>(q)] != 0;
  }
};

// Product-level view of the arena's sensor declarations; ids follow
// declaration order.
std::vector<SensingAction> lift_sensors(const ProductGame& g);

// Partition of B into (formula holds, formula fails). Querying requires the
// action enabled at every hypothesis.
std::pair<Belief, Belief> knows(const ProductGame& g, const SensingAction& a,
                                std::size_t formula_idx, const Belief& b);

// Sensors applicable at a belief: enabled at every hypothesis.
std::vector<SensorId> enabled_at(const std::vector<SensingAction>& sensors, const Belief& b);

struct BrSplit {
  SensorId sensor = kNone;
  std::int32_t formula = kNone;
  std::int32_t child_true = kNone;   // node indices
  std::int32_t child_false = kNone;
};

struct BrNode {
  enum class Kind : std::uint8_t { progress, internal, unrefinable };
  Belief belief;
  Kind kind = Kind::unrefinable;
  std::vector<BrSplit> splits;  // every proper (sensor, formula) split
  // Filled by solve_sensing. rank -1 = cannot be driven into Reach.
  std::int32_t rank = -1;
  SensorId action = kNone;
  std::int32_t formula = kNone;
};

// One node per distinct belief: equal sub-beliefs under different splits
// share their subtree (the min-max value depends only on the belief).
struct BrTree {
  std::vector<BrNode> nodes;  // node 0 = root
  std::map<Belief, std::int32_t> index;
  std::size_t node(const Belief& b) const { return static_cast<std::size_t>(index.at(b)); }
};

// Expand every proper split reachable from root. progress_defined marks the
// Reach leaves; children are strictly smaller beliefs, so expansion is
// finite. Throws if the shared node count exceeds a sanity cap.
BrTree build_brtree(const ProductGame& g, const std::vector<SensingAction>& sensors,
                    const Belief& root,
                    const std::function<bool(const Belief&)>& progress_defined,
                    std::size_t max_nodes = 1 << 20);

// Attractor toward the Reach leaves: rank(B) = min over splits of
// 1 + max(child ranks); ties break on lowest sensor id, then lowest formula
// index. Returns whether the root is solvable.
bool solve_sensing(BrTree& t);

// Memoized sensing decisions, keyed by canonical belief. Concurrent reads,
// exclusive inserts; duplicate inserts are ignored.
struct StrategyEntry {
  bool solvable = false;
  std::int32_t rank = -1;
  SensorId action = kNone;
  std::int32_t formula = kNone;
};

class StrategyCache {
public:
  std::optional<StrategyEntry> lookup(const Belief& b) const;
  void insert(const Belief& b, const StrategyEntry& e);
  std::uint64_t hits() const { return hits_; }
  std::size_t size() const;

private:
  mutable std::shared_mutex mu_;
  std::map<Belief, StrategyEntry> map_;
  mutable std::uint64_t hits_ = 0;
};

}  // namespace vigil
