// Command-line front end: solve a model, simulate runs, sweep seeds,
// generate and benchmark the patrol gridworld, export belief revision trees.
//
// Exit codes: 0 success, 1 usage, 2 model/spec error, 3 runtime failure
// (dead end, contradiction, stuck environment, exhausted budget).

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vigil/errors.hpp"
#include "vigil/executor.hpp"
#include "vigil/wumpus.hpp"

namespace {

using namespace vigil;
using steady = std::chrono::steady_clock;

double us_since(steady::time_point t0) {
  return std::chrono::duration<double, std::micro>(steady::now() - t0).count();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw model_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw model_error("cannot write '" + path + "'");
  out << text;
}

struct Pipeline {
  Model model;
  ProductGame game;
  SolveResult win;
  ObservationModel om;
  std::vector<SensingAction> sensors;
  double parse_us = 0, build_us = 0, solve_us = 0;
};

Pipeline load(const std::string& model_path, const std::string& spec_text) {
  Pipeline p;
  auto t0 = steady::now();
  p.model = parse_model(slurp(model_path));
  if (!spec_text.empty()) {
    p.model.dba = compile_pattern(parse_spec(spec_text), p.model.arena.ap);
  }
  if (!p.model.dba) {
    throw model_error("no objective: pass a spec argument or embed a dba section");
  }
  p.parse_us = us_since(t0);

  t0 = steady::now();
  p.game = build_product(p.model.arena, *p.model.dba);
  p.build_us = us_since(t0);

  t0 = steady::now();
  p.win = solve_buchi(p.game);
  p.solve_us = us_since(t0);

  p.om = build_observation_model(p.game);
  p.sensors = lift_sensors(p.game);
  return p;
}

std::size_t win1_count(const SolveResult& w) {
  return static_cast<std::size_t>(std::count(w.win1.begin(), w.win1.end(), 1));
}

EnvPolicy parse_env(const Arena& a, const std::string& text) {
  EnvPolicy e;
  if (text == "random") {
    e.kind = EnvPolicyKind::uniform_random;
    return e;
  }
  if (text == "stationary") {
    e.kind = EnvPolicyKind::stationary;
    return e;
  }
  if (text.rfind("scripted:", 0) == 0) {
    e.kind = EnvPolicyKind::scripted;
    std::istringstream in(slurp(text.substr(9)));
    std::string name;
    while (in >> name) {
      auto id = a.action_id(name);
      if (!id) throw model_error("scripted action '" + name + "' is not declared");
      if (a.actions[static_cast<std::size_t>(*id)].owner != Player::environment) {
        throw model_error("scripted action '" + name + "' is not an environment action");
      }
      e.script.push_back(*id);
    }
    if (e.script.empty()) throw model_error("script file contains no actions");
    return e;
  }
  throw CLI::ValidationError("--env", "expected random|stationary|scripted:<file>");
}

void print_seed_line(std::ostream& os, std::uint64_t seed, const RunStats& st) {
  os << "seed=" << seed << " steps=" << st.steps << " moves=" << st.moves
     << " senses=" << st.senses << " env_moves=" << st.env_moves
     << " f_visits=" << st.f_visits << " max_belief=" << st.max_belief
     << " dead_end=" << (st.dead_end ? 1 : 0) << " left_win1=" << (st.left_win1 ? 1 : 0)
     << " mean_decision_us=" << st.mean_decision_us << "\n";
}

int cmd_solve(const std::string& model_path, const std::string& spec,
              const std::string& export_path) {
  Pipeline p = load(model_path, spec);
  std::cout << "states=" << p.game.num_q() << "\n"
            << "win1=" << win1_count(p.win) << "\n"
            << "max_rank=" << p.win.max_rank << "\n"
            << "parse_us=" << p.parse_us << "\n"
            << "build_us=" << p.build_us << "\n"
            << "solve_us=" << p.solve_us << "\n";
  if (!export_path.empty()) spit(export_path, solve_result_to_json(p.game, p.win));
  return 0;
}

int cmd_simulate(const std::string& model_path, const std::string& spec, std::int64_t steps,
                 std::uint64_t seed, const std::string& env_text, const std::string& trace_path,
                 bool belief_full, bool latency, std::int64_t budget) {
  Pipeline p = load(model_path, spec);
  StrategyCache cache;
  RunConfig cfg;
  cfg.max_steps = steps;
  cfg.seed = seed;
  cfg.env = parse_env(p.model.arena, env_text);
  cfg.sensing_budget = budget;
  cfg.trace_belief = belief_full;
  cfg.measure_latency = latency;
  RunResult r = run(p.game, p.win, p.om, p.sensors, cache, cfg);
  if (!trace_path.empty()) spit(trace_path, format_trace(r.trace));
  std::cout << stats_to_json(r.stats) << "\n";
  if (r.stats.dead_end) {
    std::cerr << "run error: strategy dead end after " << r.stats.steps << " steps\n";
    return 3;
  }
  return 0;
}

int cmd_sweep(const std::string& model_path, const std::string& spec, std::int64_t steps,
              std::int64_t seeds, const std::string& env_text) {
  Pipeline p = load(model_path, spec);
  StrategyCache cache;
  double f_sum = 0, sense_sum = 0, dec_sum = 0;
  std::int64_t f_min = -1, dead = 0;
  std::size_t belief_max = 0;
  for (std::int64_t s = 0; s < seeds; ++s) {
    RunConfig cfg;
    cfg.max_steps = steps;
    cfg.seed = static_cast<std::uint64_t>(s);
    cfg.env = parse_env(p.model.arena, env_text);
    RunResult r = run(p.game, p.win, p.om, p.sensors, cache, cfg);
    print_seed_line(std::cout, cfg.seed, r.stats);
    f_sum += static_cast<double>(r.stats.f_visits);
    sense_sum += static_cast<double>(r.stats.senses);
    dec_sum += r.stats.mean_decision_us;
    if (f_min < 0 || r.stats.f_visits < f_min) f_min = r.stats.f_visits;
    belief_max = std::max(belief_max, r.stats.max_belief);
    dead += r.stats.dead_end ? 1 : 0;
  }
  const double k = static_cast<double>(seeds);
  std::cout << "seeds=" << seeds << " mean_f_visits=" << (f_sum / k)
            << " min_f_visits=" << f_min << " mean_senses=" << (sense_sum / k)
            << " max_belief=" << belief_max << " dead_ends=" << dead
            << " mean_decision_us=" << (dec_sum / k) << " cache_size=" << cache.size()
            << "\n";
  return dead > 0 ? 3 : 0;
}

int cmd_bench(std::int64_t steps, std::int64_t seeds, int width, int height, int smell_radius,
              bool smell_anywhere, bool known_wumpus, const std::string& export_model) {
  WumpusConfig wc;
  wc.width = width;
  wc.height = height;
  wc.smell_radius = smell_radius;
  wc.smell_anywhere = smell_anywhere;
  wc.known_wumpus = known_wumpus;

  auto t0 = steady::now();
  WumpusModel wm = build_wumpus(wc);
  const double gen_us = us_since(t0);
  if (!export_model.empty()) spit(export_model, serialize_model(wm.model));

  const Arena& a = wm.model.arena;
  const std::size_t region = static_cast<std::size_t>(wc.width) *
                                 static_cast<std::size_t>(wc.height) -
                             wc.safe.size();
  std::cout << "spec=" << wm.spec << "\n";
  std::cout << "instance width=" << wc.width << " height=" << wc.height
            << " region=" << region << " arena_states=" << a.num_states()
            << " sensors=" << a.sensors.size() << " gen_us=" << gen_us << "\n";

  t0 = steady::now();
  ProductGame g = build_product(a, *wm.model.dba);
  const double build_us = us_since(t0);
  t0 = steady::now();
  SolveResult w = solve_buchi(g);
  const double solve_us = us_since(t0);
  ObservationModel om = build_observation_model(g);
  std::vector<SensingAction> sensors = lift_sensors(g);
  std::cout << "product states=" << g.num_q() << " win1=" << win1_count(w)
            << " max_rank=" << w.max_rank << " build_us=" << build_us
            << " solve_us=" << solve_us << "\n";

  RunConfig base;
  base.max_steps = steps;
  base.count_props.push_back(*a.ap_id("col"));

  StrategyCache cache;
  double f_sum = 0, sense_sum = 0, dec_sum = 0;
  std::int64_t f_min = -1, dead = 0, collisions = 0;
  std::size_t belief_max = 0;
  for (std::int64_t s = 0; s < seeds; ++s) {
    RunConfig cfg = base;
    cfg.seed = static_cast<std::uint64_t>(s);
    RunResult r = run(g, w, om, sensors, cache, cfg);
    std::cout << "seed=" << s << " f_visits=" << r.stats.f_visits
              << " senses=" << r.stats.senses << " max_belief=" << r.stats.max_belief
              << " collisions=" << r.stats.prop_visits[0]
              << " dead_end=" << (r.stats.dead_end ? 1 : 0)
              << " mean_decision_us=" << r.stats.mean_decision_us << "\n";
    f_sum += static_cast<double>(r.stats.f_visits);
    sense_sum += static_cast<double>(r.stats.senses);
    dec_sum += r.stats.mean_decision_us;
    if (f_min < 0 || r.stats.f_visits < f_min) f_min = r.stats.f_visits;
    belief_max = std::max(belief_max, r.stats.max_belief);
    dead += r.stats.dead_end ? 1 : 0;
    collisions += r.stats.prop_visits[0];
  }
  const double k = static_cast<double>(seeds);
  std::cout << "seeds=" << seeds << " steps=" << steps << " mean_f_visits=" << (f_sum / k)
            << " min_f_visits=" << f_min << " mean_senses=" << (sense_sum / k)
            << " max_belief=" << belief_max << " collisions=" << collisions
            << " dead_ends=" << dead << " mean_decision_us=" << (dec_sum / k)
            << " cache_size=" << cache.size() << "\n";
  return dead > 0 ? 3 : 0;
}

int cmd_export_brt(const std::string& model_path, const std::string& spec,
                   const std::string& belief_path, const std::string& out_path) {
  Pipeline p = load(model_path, spec);

  Belief b;
  {
    std::istringstream in(slurp(belief_path));
    std::vector<std::string> toks;
    std::string tok;
    while (in >> tok) toks.push_back(tok);
    if (toks.empty()) throw model_error("belief file is empty");
    if (toks.size() == 1 && toks[0] == "initial") {
      b = initial_belief(p.game);
    } else {
      std::map<std::string, QId> by_name;
      for (std::size_t q = 0; q < p.game.num_q(); ++q) {
        by_name[p.game.q_name(static_cast<QId>(q))] = static_cast<QId>(q);
      }
      for (const std::string& t : toks) {
        auto it = by_name.find(t);
        if (it == by_name.end()) throw model_error("unknown product state '" + t + "'");
        b.push_back(it->second);
      }
      sort_unique(b);
    }
  }

  auto defined = [&](const Belief& bb) { return f_progress(p.game, p.win, bb).has_value(); };
  BrTree t = build_brtree(p.game, p.sensors, b, defined);
  const bool ok = solve_sensing(t);

  std::ostringstream doc;
  doc << "root=0 nodes=" << t.nodes.size() << " solvable=" << (ok ? 1 : 0) << "\n";
  const char* kind_name[] = {"progress", "internal", "unrefinable"};
  for (std::size_t i = 0; i < t.nodes.size(); ++i) {
    const BrNode& n = t.nodes[i];
    doc << "node " << i << " size=" << n.belief.size()
        << " kind=" << kind_name[static_cast<int>(n.kind)] << " rank=" << n.rank;
    if (n.kind == BrNode::Kind::internal && n.rank >= 0) {
      doc << " pick=" << p.sensors[static_cast<std::size_t>(n.action)].name << "[" << n.formula
          << "]";
    }
    doc << "\n belief";
    for (QId q : n.belief) doc << " " << p.game.q_name(q);
    doc << "\n";
    for (const BrSplit& s : n.splits) {
      doc << " split " << p.sensors[static_cast<std::size_t>(s.sensor)].name << "[" << s.formula
          << "] true=" << s.child_true << " false=" << s.child_false << "\n";
    }
  }
  if (out_path.empty()) {
    std::cout << doc.str();
  } else {
    spit(out_path, doc.str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reactive planning with sensing for recurrence objectives"};
  app.require_subcommand(1);

  std::string model_path, spec, export_path, trace_path, env_text = "random";
  std::string belief_path, out_path, export_model;
  std::int64_t steps = 1000, seeds = 20, budget = -1;
  std::uint64_t seed = 0;
  int width = 7, height = 7, smell_radius = 2;
  bool belief_full = false, latency = false, smell_anywhere = false, known_wumpus = false;

  CLI::App* solve = app.add_subcommand("solve", "Solve a model against an objective");
  solve->add_option("model", model_path, "model document")->required();
  solve->add_option("spec", spec, "objective (overrides an embedded dba section)");
  solve->add_option("--export", export_path, "write the solve result as JSON");

  CLI::App* sim = app.add_subcommand("simulate", "Run the composite strategy online");
  sim->add_option("model", model_path, "model document")->required();
  sim->add_option("spec", spec, "objective (overrides an embedded dba section)");
  sim->add_option("--steps", steps, "events to play")->capture_default_str();
  sim->add_option("--seed", seed, "rng seed")->capture_default_str();
  sim->add_option("--env", env_text, "random|stationary|scripted:<file>")
      ->capture_default_str();
  sim->add_option("--trace", trace_path, "write the event trace to this path");
  sim->add_option("--sensing-budget", budget, "max queries per turn, -1 = uncapped")
      ->capture_default_str();
  sim->add_flag("--belief-full", belief_full, "include belief contents in the trace");
  sim->add_flag("--latency", latency, "include decision latency in the trace");

  CLI::App* sweep = app.add_subcommand("sweep", "Aggregate simulate over consecutive seeds");
  sweep->add_option("model", model_path, "model document")->required();
  sweep->add_option("spec", spec, "objective (overrides an embedded dba section)");
  sweep->add_option("--steps", steps, "events per run")->capture_default_str();
  sweep->add_option("--seeds", seeds, "number of runs, seeded 0..K-1")->capture_default_str();
  sweep->add_option("--env", env_text, "random|stationary|scripted:<file>")
      ->capture_default_str();

  CLI::App* bench = app.add_subcommand("bench-wumpus", "Generate and benchmark the patrol grid");
  bench->add_option("--steps", steps, "events per run")->capture_default_str();
  bench->add_option("--seeds", seeds, "number of runs, seeded 0..K-1")->capture_default_str();
  bench->add_option("--width", width, "grid width")->capture_default_str();
  bench->add_option("--height", height, "grid height")->capture_default_str();
  bench->add_option("--smell-radius", smell_radius, "smell query reach")->capture_default_str();
  bench->add_flag("--smell-anywhere", smell_anywhere, "allow smell queries at any cell");
  bench->add_flag("--known-wumpus", known_wumpus, "start with a singleton belief");
  bench->add_option("--export-model", export_model, "write the generated model document");

  CLI::App* brt = app.add_subcommand("export-brt", "Dump the belief revision tree of a belief");
  brt->add_option("model", model_path, "model document")->required();
  brt->add_option("spec", spec, "objective (overrides an embedded dba section)");
  brt->add_option("--belief", belief_path, "file with 'initial' or product state names")
      ->required();
  brt->add_option("--out", out_path, "write the tree here instead of stdout");

  int rc = 0;
  solve->callback([&] { rc = cmd_solve(model_path, spec, export_path); });
  sim->callback([&] {
    rc = cmd_simulate(model_path, spec, steps, seed, env_text, trace_path, belief_full, latency,
                      budget);
  });
  sweep->callback([&] { rc = cmd_sweep(model_path, spec, steps, seeds, env_text); });
  bench->callback([&] {
    rc = cmd_bench(steps, seeds, width, height, smell_radius, smell_anywhere, known_wumpus,
                   export_model);
  });
  brt->callback([&] { rc = cmd_export_brt(model_path, spec, belief_path, out_path); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const parse_error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const model_error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const run_error& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const contradiction_error& e) {
    std::cerr << e.what() << "\n";
    return 3;
  }
  return rc;
}
