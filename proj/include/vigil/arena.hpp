#pragma once

// Labeled transition systems with two players, per-state predicate
// valuations and observability masks, plus the model document format.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vigil/dba.hpp"
#include "vigil/formula.hpp"
#include "vigil/ids.hpp"

namespace vigil {

struct ArenaAction {
  std::string name;
  Player owner = Player::system;
};

struct ArenaState {
  std::string name;
  Player owner = Player::system;
  std::vector<PropId> label;              // sorted
  std::vector<std::uint8_t> valuation;    // one value per predicate
  std::vector<std::uint8_t> observable;   // one flag per predicate
};

// Declared sensing capability. Enablement is stated over arena states and
// lifted to product states by the sensing module.
struct SensorDecl {
  std::string name;
  bool global = true;                 // enabled everywhere when true
  std::vector<StateId> at;            // sorted; meaningful when !global
  std::vector<Formula> senses;        // propositional formulas over predicates
};

struct Arena {
  std::vector<std::string> ap;
  std::vector<std::string> preds;         // includes the turn predicate
  PredId turn_pred = kNone;               // observable everywhere, true iff owner=system
  std::vector<std::uint8_t> pred_hidden;  // global default per predicate
  std::vector<ArenaAction> actions;
  std::vector<ArenaState> states;
  // Per state, sorted by action id. Determinism: at most one entry per action.
  std::vector<std::vector<std::pair<ActionId, StateId>>> trans;
  StateId init = kNone;
  bool belief_singleton = false;          // belief0 singleton|class (default class)
  std::vector<SensorDecl> sensors;

  std::int32_t num_states() const { return static_cast<std::int32_t>(states.size()); }

  // Builder helpers; ids are assigned in call order.
  PropId add_ap(const std::string& name);
  PredId add_pred(const std::string& name, bool hidden);
  ActionId add_action(const std::string& name, Player owner);
  StateId add_state(const std::string& name, Player owner);
  void add_trans(StateId src, ActionId a, StateId dst);

  std::optional<StateId> state_id(const std::string& name) const;
  std::optional<ActionId> action_id(const std::string& name) const;
  std::optional<PredId> pred_id(const std::string& name) const;
  std::optional<PropId> ap_id(const std::string& name) const;
};

// Enabled actions at s, ascending. Always a subset of the owner's actions.
std::vector<ActionId> enabled(const Arena& a, StateId s);

// Successor under a deterministic transition; kNone when not enabled.
StateId successor(const Arena& a, StateId s, ActionId act);

// Semantic validation: unique init, owner consistency, determinism by
// construction, no dead ends, turn predicate discipline, sensor targets.
void validate(const Arena& a);

// A parsed model document: the arena plus an optional embedded automaton.
struct Model {
  Arena arena;
  std::optional<Dba> dba;
};

// Model document grammar (UTF-8, line oriented, '#' starts a comment):
//   ap <name>...
//   pred <name> [hidden]
//   state <name> sys|env { <prop>... } [<pred>=0|1]... [show <pred>|hide <pred>]...
//   init <name>
//   belief0 class|singleton
//   trans <src> <action>@sys|env <dst>
//   sensor <name> [at <state>...] : <formula> [; <formula>]...
//   dba state <name> [accept]
//   dba init <name>
//   dba trans <src> <dst> : <formula>|else
// The turn predicate t is implicit and may not be declared or assigned.
Model parse_model(const std::string& text);

// Canonical form: sorted declarations, true-valued predicate assignments
// only, observability overrides only where they differ from the global
// default. parse(serialize(m)) reproduces serialize(m) byte for byte.
std::string serialize_model(const Model& m);

}  // namespace vigil
