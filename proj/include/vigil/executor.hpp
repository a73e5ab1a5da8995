#pragma once

// Closed-loop execution: the belief-level strategy plays against a
// configurable environment. Ground truth lives only inside run(); the
// strategy sees nothing but the belief and the observation stream.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "vigil/observation.hpp"
#include "vigil/sensing.hpp"
#include "vigil/strategy.hpp"

namespace vigil {

enum class EventKind : std::uint8_t { move, sense, env };

struct TraceEvent {
  std::int64_t step = 0;
  EventKind kind = EventKind::move;
  std::string actor;                // action or sensor name; empty for env
  std::int32_t formula = kNone;     // sense
  std::int8_t result = -1;          // sense: 1 holds / 0 fails
  ObsId obs = kNone;                // move/env: class observed on arrival
  std::size_t belief_size = 0;      // after the event
  std::vector<std::string> belief;  // hypothesis names, when requested
  std::int64_t latency_us = -1;     // decision time, when requested
  bool accepting = false;           // move/env: arrival state accepting
};

enum class EnvPolicyKind : std::uint8_t { uniform_random, stationary, scripted };

struct EnvPolicy {
  EnvPolicyKind kind = EnvPolicyKind::uniform_random;
  std::vector<ActionId> script;  // consumed cyclically
};

struct RunConfig {
  std::int64_t max_steps = 100;  // every move, query and env response counts
  std::uint64_t seed = 0;
  EnvPolicy env;
  std::int64_t sensing_budget = -1;  // per system turn; -1 = uncapped
  bool trace_belief = false;
  bool measure_latency = false;  // adds a wall-clock column, breaks byte2byte
  std::vector<PropId> count_props;  // count arrivals whose true label holds these
};

struct RunStats {
  std::int64_t steps = 0;
  std::int64_t moves = 0;
  std::int64_t senses = 0;
  std::int64_t env_moves = 0;
  std::int64_t f_visits = 0;  // arrivals at accepting states
  std::size_t max_belief = 0;
  std::uint64_t cache_hits = 0;
  double mean_decision_us = 0.0;
  bool dead_end = false;   // strategy ran out of safe moves and useful queries
  bool left_win1 = false;  // ground truth ever escaped the winning region
  std::vector<std::int64_t> prop_visits;  // parallel to RunConfig::count_props
};

struct RunResult {
  std::vector<TraceEvent> trace;
  RunStats stats;
};

// Plays cfg.max_steps events from the game's initial state. Throws
// model_error when the initial state is losing, run_error on an exhausted
// sensing budget or a stuck/invalid environment, contradiction_error when
// tracking refutes every hypothesis. A strategy dead end stops the run
// early with stats.dead_end set.
RunResult run(const ProductGame& g, const SolveResult& w, const ObservationModel& om,
              const std::vector<SensingAction>& sensors, StrategyCache& cache,
              const RunConfig& cfg);

// One key=value line per event. Byte-identical for identical inputs and
// seed unless latency was measured.
std::string format_trace(const std::vector<TraceEvent>& trace);

std::string stats_to_json(const RunStats& s);

}  // namespace vigil
