#pragma once

// Product of an arena with a deterministic Buchi automaton, and the
// fixpoint solver for the resulting two-player Buchi game.

#include <string>
#include <vector>

#include "vigil/arena.hpp"
#include "vigil/dba.hpp"
#include "vigil/ids.hpp"

namespace vigil {

struct ProductState {
  StateId s = kNone;      // arena component
  AutStateId h = kNone;   // automaton component
};

// Self-contained game graph. Tests may fill the tables directly; arena/dba
// copies are only consulted for names, valuations and labels.
struct ProductGame {
  Arena arena;
  Dba dba;
  std::vector<ProductState> qs;
  std::vector<Player> owner;
  std::vector<std::vector<std::pair<ActionId, QId>>> trans;  // sorted by action
  std::vector<std::uint8_t> accepting;                       // F membership
  QId q0 = kNone;
  // All materialized initial hypotheses (observation-equivalent starts),
  // sorted; contains q0. Materialization runs BFS from this whole set.
  std::vector<QId> initial_class;

  std::size_t num_q() const { return qs.size(); }
  const std::vector<std::uint8_t>& valuation(QId q) const {
    return arena.states[static_cast<std::size_t>(qs[static_cast<std::size_t>(q)].s)].valuation;
  }
  std::string q_name(QId q) const;
};

// Forward reachability from the initial candidate set. The automaton reads
// the label of each arrived state; the initial automaton state already
// consumed the initial arena label.
ProductGame build_product(const Arena& a, const Dba& d);

// Successor under a deterministic move; kNone when act is not enabled.
QId successor(const ProductGame& g, QId q, ActionId act);

struct SolveResult {
  std::vector<std::uint8_t> win1;   // per product state
  std::vector<std::int32_t> rank;   // attractor layer toward the core; -1 outside win1
  std::vector<ActionId> ws;         // deterministic move per winning system state
  std::int32_t max_rank = -1;
};

// Classical Buchi fixpoint: shrink the accepting core to states that can
// force a revisit (>= 1 step), then take the player-1 attractor. rank is the
// attractor layer; ws picks the lowest-id action that descends (rank > 0) or
// any winning restart (rank 0).
SolveResult solve_buchi(const ProductGame& g);

// Enabled system actions whose successor stays inside win1. Empty exactly
// when q itself is losing.
std::vector<ActionId> allow_actions(const ProductGame& g, const SolveResult& sr, QId q);

// One JSON document per solved game: totals plus per-winning-state entries.
std::string solve_result_to_json(const ProductGame& g, const SolveResult& sr);

}  // namespace vigil
