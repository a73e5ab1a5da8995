#include "vigil/strategy.hpp"

#include <algorithm>

namespace vigil {

ActionId sample(const ActionDistribution& d, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, d.support.size() - 1);
  return d.support[pick(rng)];
}

std::optional<std::vector<ActionId>> progress_set(const ProductGame& g, const SolveResult& w,
                                                  const Belief& b) {
  std::vector<ActionId> out;
  for (QId q : b) {
    const std::size_t i = static_cast<std::size_t>(q);
    if (g.owner[i] != Player::system || !w.win1[i]) return std::nullopt;
    out.push_back(w.ws[i]);
  }
  sort_unique(out);
  return out;
}

std::vector<ActionId> allow_set(const ProductGame& g, const SolveResult& w, const Belief& b) {
  std::vector<ActionId> out = allow_actions(g, w, b.front());
  for (std::size_t i = 1; i < b.size() && !out.empty(); ++i) {
    out = sorted_intersect(out, allow_actions(g, w, b[i]));
  }
  return out;
}

std::optional<ActionDistribution> f_progress(const ProductGame& g, const SolveResult& w,
                                             const Belief& b) {
  auto prog = progress_set(g, w, b);
  if (!prog) return std::nullopt;
  std::vector<ActionId> allow = allow_set(g, w, b);
  for (ActionId a : *prog) {
    if (!sorted_contains(allow, a)) return std::nullopt;
  }
  return ActionDistribution{std::move(*prog)};
}

Decision decide(const ProductGame& g, const SolveResult& w,
                const std::vector<SensingAction>& sensors, StrategyCache& cache,
                const Belief& b) {
  Decision d;
  if (auto fp = f_progress(g, w, b)) {
    d.kind = Decision::Kind::physical;
    d.dist = std::move(*fp);
    return d;
  }

  StrategyEntry e;
  if (auto hit = cache.lookup(b)) {
    e = *hit;
  } else {
    auto defined = [&](const Belief& bb) { return f_progress(g, w, bb).has_value(); };
    BrTree t = build_brtree(g, sensors, b, defined);
    solve_sensing(t);
    for (const BrNode& n : t.nodes) {
      if (n.kind == BrNode::Kind::progress) continue;
      StrategyEntry ne;
      ne.solvable = n.rank >= 0;
      ne.rank = n.rank;
      ne.action = n.action;
      ne.formula = n.formula;
      cache.insert(n.belief, ne);
    }
    const BrNode& root = t.nodes[0];
    e.solvable = root.rank >= 0;
    e.rank = root.rank;
    e.action = root.action;
    e.formula = root.formula;
  }

  if (!e.solvable) return d;  // dead_end
  d.kind = Decision::Kind::sense;
  d.sensor = e.action;
  d.formula = e.formula;
  d.sensing_rank = e.rank;
  return d;
}

}  // namespace vigil
