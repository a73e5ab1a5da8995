#pragma once

// Observation equivalence over product states and belief tracking. Two
// states are equivalent when they agree on which predicates are observable
// and on the values of those predicates; the automaton component is never
// observable. Beliefs are canonical sorted QId sets.

#include <vector>

#include "vigil/ids.hpp"
#include "vigil/product.hpp"

namespace vigil {

using Belief = std::vector<QId>;  // sorted, duplicate-free, nonempty

struct ObservationModel {
  std::vector<ObsId> class_of;            // per product state
  std::vector<std::vector<QId>> classes;  // sorted members per class
};

ObservationModel build_observation_model(const ProductGame& g);

inline ObsId obs_of(const ObservationModel& om, QId q) {
  return om.class_of.at(static_cast<std::size_t>(q));
}

// What the system tracks before anything happened: the declared initial
// hypotheses (the whole initial class, or {q0} for belief0 singleton).
Belief initial_belief(const ProductGame& g);

// Post-image of B under the system's own action a, filtered by the observed
// class o. Hypotheses where a is not enabled are refuted by the action
// having happened. Empty result = tracking contradiction.
Belief update_system(const ProductGame& g, const ObservationModel& om, const Belief& b,
                     ActionId a, ObsId o);

// Post-image of B under every enabled environment action (the move itself
// is invisible), filtered by the observed class o.
Belief update_env(const ProductGame& g, const ObservationModel& om, const Belief& b, ObsId o);

// A concrete finite play prefix: states[0..n], acts[0..n-1].
struct PlayPrefix {
  std::vector<QId> states;
  std::vector<ActionId> acts;
};

// Definitional belief: enumerate every prefix from an initial hypothesis
// whose observation sequence matches (same classes; same system actions;
// environment actions all look alike) and collect the end states.
// Exponential; test oracle only.
Belief alpha_oracle(const ProductGame& g, const ObservationModel& om, const PlayPrefix& p);

}  // namespace vigil
