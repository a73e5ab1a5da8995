#pragma once

// Patrol-under-uncertainty benchmark: a robot on a rectangular grid must
// visit target cells in order forever while a hidden wandering adversary
// must never be stepped on. Smell queries report whether the adversary is
// within one cell of a queried location.

#include <string>
#include <utility>
#include <vector>

#include "vigil/arena.hpp"

namespace vigil {

using Cell = std::pair<int, int>;  // (x, y), origin bottom-left

struct WumpusConfig {
  int width = 7;
  int height = 7;
  // Cells the adversary can never occupy; everything else is its region.
  // The defaults form a ring with straight two-cell hops between safe
  // cells. Each hop then has three parallel crossing cells, which no
  // single adversary can all threaten at once, and cutting one hop never
  // disconnects a ring, so the patrol survives any camping strategy.
  // Corner refuges are a trap: their one narrow mouth can be covered
  // forever by a two-cell oscillation next to it.
  std::vector<Cell> safe = {{1, 2}, {3, 2}, {5, 2}, {5, 4}, {3, 4}, {1, 4}};
  // Patrol targets, visited cyclically in order. Must be safe cells: a
  // target inside the region could be camped forever.
  std::vector<Cell> targets = {{1, 2}, {5, 2}, {3, 4}};
  Cell robot0 = {1, 2};
  Cell wumpus0 = {6, 6};
  // Smell queries cover cells within this Chebyshev distance of the robot;
  // smell_anywhere lifts the restriction entirely. Radius 0 is useless
  // under full initial uncertainty: no landing next to the robot can ever
  // be certified clear, so the executor refuses to move. Radius 2 lets the
  // robot clear the far side of a landing before committing to it.
  int smell_radius = 2;
  bool smell_anywhere = false;
  // true: the adversary's start is known; false: it starts anywhere in the
  // region as far as the robot can tell.
  bool known_wumpus = false;
};

int chebyshev(Cell a, Cell b);

struct WumpusModel {
  Model model;       // arena with sensors + compiled objective automaton
  std::string spec;  // the objective in the specification fragment syntax
};

// Robot moves: 8 compass directions, disabled off-grid. Adversary moves: 4
// compass directions, disabled where they leave its region, so it can never
// hold a cell. Throws model_error on inconsistent geometry.
WumpusModel build_wumpus(const WumpusConfig& cfg);

}  // namespace vigil
