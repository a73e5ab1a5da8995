#include "vigil/sensing.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <stdexcept>

#include "vigil/errors.hpp"

namespace vigil {

std::vector<SensingAction> lift_sensors(const ProductGame& g) {
  std::vector<SensingAction> out;
  out.reserve(g.arena.sensors.size());
  const std::size_t nq = g.num_q();
  for (std::size_t i = 0; i < g.arena.sensors.size(); ++i) {
    const SensorDecl& d = g.arena.sensors[i];
    SensingAction a;
    a.id = static_cast<SensorId>(i);
    a.name = d.name;
    a.senses = d.senses;
    if (!d.global) {
      // at-list names M states; a product state inherits its M component's
      // availability.
      a.enabled_q.assign(nq, 0);
      for (std::size_t q = 0; q < nq; ++q) {
        if (sorted_contains(d.at, g.qs[q].s)) a.enabled_q[q] = 1;
      }
    }
    out.push_back(std::move(a));
  }
  return out;
}

std::pair<Belief, Belief> knows(const ProductGame& g, const SensingAction& a,
                                std::size_t formula_idx, const Belief& b) {
  const Formula& f = a.senses.at(formula_idx);
  Belief yes, no;
  for (QId q : b) {
    if (!a.enabled_at(q)) {
      throw run_error("sensor '" + a.name + "' not available at " + g.q_name(q));
    }
    if (f.eval(g.valuation(q))) {
      yes.push_back(q);
    } else {
      no.push_back(q);
    }
  }
  return {std::move(yes), std::move(no)};
}

std::vector<SensorId> enabled_at(const std::vector<SensingAction>& sensors, const Belief& b) {
  std::vector<SensorId> out;
  for (const SensingAction& a : sensors) {
    bool ok = true;
    for (QId q : b) {
      if (!a.enabled_at(q)) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(a.id);
  }
  return out;
}

BrTree build_brtree(const ProductGame& g, const std::vector<SensingAction>& sensors,
                    const Belief& root,
                    const std::function<bool(const Belief&)>& progress_defined,
                    std::size_t max_nodes) {
  BrTree t;
  std::deque<std::int32_t> work;

  auto intern = [&](const Belief& b) -> std::int32_t {
    auto it = t.index.find(b);
    if (it != t.index.end()) return it->second;
    if (t.nodes.size() >= max_nodes) {
      throw run_error("belief revision tree exceeds " + std::to_string(max_nodes) + " nodes");
    }
    std::int32_t id = static_cast<std::int32_t>(t.nodes.size());
    BrNode n;
    n.belief = b;
    t.nodes.push_back(std::move(n));
    t.index.emplace(b, id);
    work.push_back(id);
    return id;
  };

  intern(root);
  while (!work.empty()) {
    std::int32_t id = work.front();
    work.pop_front();
    // Expansion can grow t.nodes, so re-index instead of holding a reference.
    if (progress_defined(t.nodes[static_cast<std::size_t>(id)].belief)) {
      t.nodes[static_cast<std::size_t>(id)].kind = BrNode::Kind::progress;
      continue;
    }
    Belief b = t.nodes[static_cast<std::size_t>(id)].belief;
    std::vector<BrSplit> splits;
    for (SensorId sid : enabled_at(sensors, b)) {
      const SensingAction& a = sensors[static_cast<std::size_t>(sid)];
      for (std::size_t fi = 0; fi < a.senses.size(); ++fi) {
        auto [yes, no] = knows(g, a, fi, b);
        if (yes.empty() || no.empty()) continue;  // no refinement
        BrSplit s;
        s.sensor = sid;
        s.formula = static_cast<std::int32_t>(fi);
        s.child_true = intern(yes);
        s.child_false = intern(no);
        splits.push_back(s);
      }
    }
    BrNode& n = t.nodes[static_cast<std::size_t>(id)];
    n.splits = std::move(splits);
    n.kind = n.splits.empty() ? BrNode::Kind::unrefinable : BrNode::Kind::internal;
  }
  return t;
}

bool solve_sensing(BrTree& t) {
  // Children are strictly smaller beliefs, so processing by increasing
  // belief size sees every child before its parents.
  std::vector<std::size_t> order(t.nodes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return t.nodes[a].belief.size() < t.nodes[b].belief.size();
  });

  for (std::size_t i : order) {
    BrNode& n = t.nodes[i];
    if (n.kind == BrNode::Kind::progress) {
      n.rank = 0;
      continue;
    }
    // Splits were generated in ascending (sensor, formula) order, so the
    // first strict improvement realizes the tie-break.
    for (const BrSplit& s : n.splits) {
      std::int32_t ry = t.nodes[static_cast<std::size_t>(s.child_true)].rank;
      std::int32_t rn = t.nodes[static_cast<std::size_t>(s.child_false)].rank;
      if (ry < 0 || rn < 0) continue;
      std::int32_t r = 1 + std::max(ry, rn);
      if (n.rank < 0 || r < n.rank) {
        n.rank = r;
        n.action = s.sensor;
        n.formula = s.formula;
      }
    }
  }
  return t.nodes[0].rank >= 0;
}

std::optional<StrategyEntry> StrategyCache::lookup(const Belief& b) const {
  std::shared_lock lk(mu_);
  auto it = map_.find(b);
  if (it == map_.end()) return std::nullopt;
  ++hits_;
  return it->second;
}

void StrategyCache::insert(const Belief& b, const StrategyEntry& e) {
  std::unique_lock lk(mu_);
  map_.emplace(b, e);
}

std::size_t StrategyCache::size() const {
  std::shared_lock lk(mu_);
  return map_.size();
}

}  // namespace vigil
