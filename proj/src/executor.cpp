#include "vigil/executor.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "vigil/errors.hpp"

namespace vigil {

namespace {

// Enabled environment actions at q, in canonical (sorted) order.
std::vector<std::pair<ActionId, QId>> env_moves_at(const ProductGame& g, QId q) {
  return g.trans[static_cast<std::size_t>(q)];
}

ActionId pick_env(const ProductGame& g, QId truth, const EnvPolicy& policy,
                  std::size_t& script_pos, std::mt19937_64& rng) {
  const auto& moves = env_moves_at(g, truth);
  if (moves.empty()) {
    throw run_error("environment is stuck at " + g.q_name(truth));
  }
  switch (policy.kind) {
    case EnvPolicyKind::uniform_random: {
      std::uniform_int_distribution<std::size_t> pick(0, moves.size() - 1);
      return moves[pick(rng)].first;
    }
    case EnvPolicyKind::stationary: {
      for (const auto& [a, dst] : moves) {
        if (dst == truth) return a;
      }
      return moves.front().first;
    }
    case EnvPolicyKind::scripted: {
      if (policy.script.empty()) throw run_error("scripted environment has no actions");
      ActionId a = policy.script[script_pos % policy.script.size()];
      ++script_pos;
      if (successor(g, truth, a) == kNone) {
        throw run_error("scripted action '" +
                        g.arena.actions[static_cast<std::size_t>(a)].name +
                        "' not enabled at " + g.q_name(truth));
      }
      return a;
    }
  }
  throw std::logic_error("unreachable env policy");
}

void check_sound(const ProductGame& g, const Belief& b, QId truth) {
  if (!sorted_contains(b, truth)) {
    throw std::logic_error("tracking soundness violated: truth " + g.q_name(truth) +
                           " fell out of the belief");
  }
}

void fill_belief_names(const ProductGame& g, const Belief& b, TraceEvent& ev) {
  ev.belief.reserve(b.size());
  for (QId q : b) ev.belief.push_back(g.q_name(q));
}

}  // namespace

RunResult run(const ProductGame& g, const SolveResult& w, const ObservationModel& om,
              const std::vector<SensingAction>& sensors, StrategyCache& cache,
              const RunConfig& cfg) {
  if (!w.win1[static_cast<std::size_t>(g.q0)]) {
    throw model_error("initial state " + g.q_name(g.q0) + " is losing; refusing to execute");
  }

  RunResult out;
  QId truth = g.q0;  // never escapes this function
  Belief belief = initial_belief(g);
  check_sound(g, belief, truth);

  std::mt19937_64 rng(cfg.seed);
  std::size_t script_pos = 0;
  std::int64_t senses_this_turn = 0;
  std::int64_t decisions = 0;
  double decision_us_total = 0.0;
  const std::uint64_t hits_before = cache.hits();

  RunStats& st = out.stats;
  st.max_belief = belief.size();
  st.prop_visits.assign(cfg.count_props.size(), 0);
  auto note_arrival = [&](QId q) {
    if (!w.win1[static_cast<std::size_t>(q)]) st.left_win1 = true;
    const auto& label = g.arena.states[static_cast<std::size_t>(g.qs[static_cast<std::size_t>(q)].s)].label;
    for (std::size_t i = 0; i < cfg.count_props.size(); ++i) {
      if (sorted_contains(label, cfg.count_props[i])) ++st.prop_visits[i];
    }
  };

  using clock = std::chrono::steady_clock;
  while (st.steps < cfg.max_steps) {
    TraceEvent ev;
    ev.step = st.steps;
    if (g.owner[static_cast<std::size_t>(truth)] == Player::system) {
      const auto t0 = clock::now();
      Decision d = decide(g, w, sensors, cache, belief);
      ActionId chosen = kNone;
      if (d.kind == Decision::Kind::physical) chosen = sample(d.dist, rng);
      const double us =
          std::chrono::duration<double, std::micro>(clock::now() - t0).count();
      decision_us_total += us;
      ++decisions;

      if (d.kind == Decision::Kind::dead_end) {
        st.dead_end = true;
        break;
      }
      if (d.kind == Decision::Kind::sense) {
        ++senses_this_turn;
        if (cfg.sensing_budget >= 0 && senses_this_turn > cfg.sensing_budget) {
          throw run_error("sensing budget of " + std::to_string(cfg.sensing_budget) +
                          " queries exceeded in one turn");
        }
        const SensingAction& a = sensors[static_cast<std::size_t>(d.sensor)];
        auto [yes, no] = knows(g, a, static_cast<std::size_t>(d.formula), belief);
        const bool holds = a.senses[static_cast<std::size_t>(d.formula)].eval(g.valuation(truth));
        belief = holds ? std::move(yes) : std::move(no);
        check_sound(g, belief, truth);

        ev.kind = EventKind::sense;
        ev.actor = a.name;
        ev.formula = d.formula;
        ev.result = holds ? 1 : 0;
        ++st.senses;
      } else {
        QId next = successor(g, truth, chosen);
        if (next == kNone) {
          throw std::logic_error("progress action not enabled at the true state");
        }
        truth = next;
        belief = update_system(g, om, belief, chosen, obs_of(om, truth));
        check_sound(g, belief, truth);
        note_arrival(truth);
        senses_this_turn = 0;

        ev.kind = EventKind::move;
        ev.actor = g.arena.actions[static_cast<std::size_t>(chosen)].name;
        ev.obs = obs_of(om, truth);
        ev.accepting = g.accepting[static_cast<std::size_t>(truth)] != 0;
        ++st.moves;
        if (ev.accepting) ++st.f_visits;
      }
      if (cfg.measure_latency) ev.latency_us = static_cast<std::int64_t>(us);
    } else {
      ActionId a = pick_env(g, truth, cfg.env, script_pos, rng);
      truth = successor(g, truth, a);
      belief = update_env(g, om, belief, obs_of(om, truth));
      check_sound(g, belief, truth);
      note_arrival(truth);

      ev.kind = EventKind::env;
      ev.obs = obs_of(om, truth);
      ev.accepting = g.accepting[static_cast<std::size_t>(truth)] != 0;
      ++st.env_moves;
      if (ev.accepting) ++st.f_visits;
    }

    ev.belief_size = belief.size();
    st.max_belief = std::max(st.max_belief, belief.size());
    if (cfg.trace_belief) fill_belief_names(g, belief, ev);
    out.trace.push_back(std::move(ev));
    ++st.steps;
  }

  st.cache_hits = cache.hits() - hits_before;
  if (decisions > 0) st.mean_decision_us = decision_us_total / static_cast<double>(decisions);
  return out;
}

std::string format_trace(const std::vector<TraceEvent>& trace) {
  std::ostringstream os;
  for (const TraceEvent& ev : trace) {
    os << "step=" << ev.step;
    switch (ev.kind) {
      case EventKind::move:
        os << " kind=move act=" << ev.actor << " obs=" << ev.obs
           << " acc=" << (ev.accepting ? 1 : 0);
        break;
      case EventKind::sense:
        os << " kind=sense sensor=" << ev.actor << " formula=" << ev.formula
           << " result=" << static_cast<int>(ev.result);
        break;
      case EventKind::env:
        os << " kind=env obs=" << ev.obs << " acc=" << (ev.accepting ? 1 : 0);
        break;
    }
    os << " belief=" << ev.belief_size;
    if (!ev.belief.empty()) {
      os << " hyps=";
      for (std::size_t i = 0; i < ev.belief.size(); ++i) {
        if (i) os << ',';
        os << ev.belief[i];
      }
    }
    if (ev.latency_us >= 0) os << " lat_us=" << ev.latency_us;
    os << '\n';
  }
  return os.str();
}

std::string stats_to_json(const RunStats& s) {
  nlohmann::json j;
  j["steps"] = s.steps;
  j["moves"] = s.moves;
  j["senses"] = s.senses;
  j["env_moves"] = s.env_moves;
  j["f_visits"] = s.f_visits;
  j["max_belief"] = s.max_belief;
  j["cache_hits"] = s.cache_hits;
  j["mean_decision_us"] = s.mean_decision_us;
  j["dead_end"] = s.dead_end;
  j["left_win1"] = s.left_win1;
  if (!s.prop_visits.empty()) j["prop_visits"] = s.prop_visits;
  return j.dump(2);
}

}  // namespace vigil
