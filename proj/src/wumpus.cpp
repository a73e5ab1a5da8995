#include "vigil/wumpus.hpp"

#include <algorithm>
#include <map>

#include "vigil/errors.hpp"

namespace vigil {

int chebyshev(Cell a, Cell b) {
  return std::max(std::abs(a.first - b.first), std::abs(a.second - b.second));
}

namespace {

const Cell kRobotDirs[8] = {{0, 1},  {0, -1}, {1, 0},  {-1, 0},
                            {1, 1},  {-1, 1}, {1, -1}, {-1, -1}};
const char* kRobotNames[8] = {"N", "S", "E", "W", "NE", "NW", "SE", "SW"};
const Cell kWumpusDirs[4] = {{0, 1}, {0, -1}, {1, 0}, {-1, 0}};
const char* kWumpusNames[4] = {"wn", "ws", "we", "ww"};

std::string num(int v) { return std::to_string(v); }

std::string cell_suffix(Cell c) { return num(c.first) + "_" + num(c.second); }

std::string state_name(Cell r, Cell w, Player turn) {
  return "r" + cell_suffix(r) + "_w" + cell_suffix(w) +
         (turn == Player::system ? "_s" : "_e");
}

}  // namespace

WumpusModel build_wumpus(const WumpusConfig& cfg) {
  const int w = cfg.width, h = cfg.height;
  if (w < 1 || h < 1) throw model_error("grid must be at least 1x1");
  auto in_grid = [&](Cell c) {
    return c.first >= 0 && c.first < w && c.second >= 0 && c.second < h;
  };
  auto is_safe = [&](Cell c) {
    return std::find(cfg.safe.begin(), cfg.safe.end(), c) != cfg.safe.end();
  };

  if (!in_grid(cfg.robot0)) throw model_error("robot start is off the grid");
  for (Cell c : cfg.safe)
    if (!in_grid(c)) throw model_error("safe cell (" + cell_suffix(c) + ") is off the grid");
  if (cfg.targets.empty()) throw model_error("at least one target is required");
  for (Cell c : cfg.targets)
    if (!is_safe(c)) throw model_error("target (" + cell_suffix(c) + ") must be a safe cell");

  // Region cells in row-major order; the adversary lives here.
  std::vector<Cell> region;
  for (int x = 0; x < w; ++x)
    for (int y = 0; y < h; ++y)
      if (!is_safe({x, y})) region.push_back({x, y});
  if (region.empty()) throw model_error("every cell is safe; nothing to avoid");
  if (!in_grid(cfg.wumpus0) || is_safe(cfg.wumpus0))
    throw model_error("adversary start must lie in its region");

  WumpusModel out;
  Arena& a = out.model.arena;

  std::vector<PropId> target_prop(cfg.targets.size());
  for (std::size_t i = 0; i < cfg.targets.size(); ++i)
    target_prop[i] = a.add_ap("R" + num(i + 1));
  const PropId col_prop = a.add_ap("col");

  std::vector<std::vector<PredId>> robot_pred(static_cast<std::size_t>(w));
  for (int x = 0; x < w; ++x) {
    robot_pred[static_cast<std::size_t>(x)].resize(static_cast<std::size_t>(h));
    for (int y = 0; y < h; ++y)
      robot_pred[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] =
          a.add_pred("r" + cell_suffix({x, y}), false);
  }
  std::map<Cell, PredId> wumpus_pred;
  for (Cell c : region) wumpus_pred[c] = a.add_pred("w" + cell_suffix(c), true);
  a.turn_pred = a.add_pred("t", false);

  for (int d = 0; d < 8; ++d) a.add_action(kRobotNames[d], Player::system);
  for (int d = 0; d < 4; ++d) a.add_action(kWumpusNames[d], Player::environment);

  // States in (robot, region index, turn) order.
  auto region_index = [&](Cell c) {
    return static_cast<std::size_t>(
        std::find(region.begin(), region.end(), c) - region.begin());
  };
  auto sid = [&](Cell r, std::size_t wi, Player turn) -> StateId {
    std::size_t robot_slot =
        static_cast<std::size_t>(r.first) * static_cast<std::size_t>(h) +
        static_cast<std::size_t>(r.second);
    return static_cast<StateId>((robot_slot * region.size() + wi) * 2 +
                                (turn == Player::system ? 0 : 1));
  };
  for (int x = 0; x < w; ++x) {
    for (int y = 0; y < h; ++y) {
      for (std::size_t wi = 0; wi < region.size(); ++wi) {
        for (Player turn : {Player::system, Player::environment}) {
          const Cell r{x, y};
          StateId s = a.add_state(state_name(r, region[wi], turn), turn);
          ArenaState& st = a.states[static_cast<std::size_t>(s)];
          st.valuation[static_cast<std::size_t>(
              robot_pred[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)])] = 1;
          st.valuation[static_cast<std::size_t>(wumpus_pred[region[wi]])] = 1;
          for (std::size_t i = 0; i < cfg.targets.size(); ++i)
            if (r == cfg.targets[i]) st.label.push_back(target_prop[i]);
          if (r == region[wi]) st.label.push_back(col_prop);
          sort_unique(st.label);
        }
      }
    }
  }

  a.init = sid(cfg.robot0, region_index(cfg.wumpus0), Player::system);
  a.belief_singleton = cfg.known_wumpus;

  for (int x = 0; x < w; ++x) {
    for (int y = 0; y < h; ++y) {
      for (std::size_t wi = 0; wi < region.size(); ++wi) {
        const Cell r{x, y};
        for (int d = 0; d < 8; ++d) {
          Cell nr{x + kRobotDirs[d].first, y + kRobotDirs[d].second};
          if (!in_grid(nr)) continue;
          a.add_trans(sid(r, wi, Player::system), static_cast<ActionId>(d),
                      sid(nr, wi, Player::environment));
        }
        for (int d = 0; d < 4; ++d) {
          Cell nw{region[wi].first + kWumpusDirs[d].first,
                  region[wi].second + kWumpusDirs[d].second};
          // Moves leaving the region are unavailable rather than clipped to
          // a stay: a parked adversary next to a safe cell would cover a
          // whole crossing corridor with no phase gaps, which makes every
          // patrol objective unrealizable. Kept on the move, it always
          // leaves one crossing cell open at some phase.
          if (!in_grid(nw) || is_safe(nw)) continue;
          a.add_trans(sid(r, wi, Player::environment), static_cast<ActionId>(8 + d),
                      sid(r, region_index(nw), Player::system));
        }
      }
    }
  }

  // One smell sensor per cell with any region neighborhood; available where
  // the robot is close enough to query it.
  for (int x = 0; x < w; ++x) {
    for (int y = 0; y < h; ++y) {
      const Cell c{x, y};
      std::vector<Formula> near;
      for (Cell rc : region)
        if (chebyshev(c, rc) <= 1) near.push_back(Formula::var(wumpus_pred[rc]));
      if (near.empty()) continue;
      SensorDecl sd;
      sd.name = "smell_" + cell_suffix(c);
      sd.senses.push_back(Formula::disj(std::move(near)));
      if (!cfg.smell_anywhere) {
        sd.global = false;
        for (int rx = 0; rx < w; ++rx) {
          for (int ry = 0; ry < h; ++ry) {
            if (chebyshev({rx, ry}, c) > cfg.smell_radius) continue;
            for (std::size_t wi = 0; wi < region.size(); ++wi)
              sd.at.push_back(sid({rx, ry}, wi, Player::system));
          }
        }
        std::sort(sd.at.begin(), sd.at.end());
      }
      a.sensors.push_back(std::move(sd));
    }
  }

  std::string spec = "GF seq(";
  for (std::size_t i = 0; i < cfg.targets.size(); ++i) {
    if (i) spec += ",";
    spec += "R" + num(i + 1);
  }
  spec += ") & G !col";
  out.spec = spec;
  out.model.dba = compile_pattern(parse_spec(spec), a.ap);

  validate(a);
  validate_dba(*out.model.dba);
  return out;
}

}  // namespace vigil
