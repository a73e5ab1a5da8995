#include "vigil/observation.hpp"

#include <map>
#include <string>

#include "vigil/errors.hpp"

namespace vigil {

ObservationModel build_observation_model(const ProductGame& g) {
  ObservationModel om;
  om.class_of.assign(g.num_q(), kNone);
  // Key: observability mask plus masked values of the arena component.
  std::map<std::vector<std::uint8_t>, ObsId> seen;
  for (std::size_t q = 0; q < g.num_q(); ++q) {
    const ArenaState& st =
        g.arena.states[static_cast<std::size_t>(g.qs[q].s)];
    std::vector<std::uint8_t> key;
    key.reserve(st.observable.size() * 2);
    for (std::size_t p = 0; p < st.observable.size(); ++p) {
      key.push_back(st.observable[p]);
      key.push_back(st.observable[p] ? st.valuation[p] : 0);
    }
    const auto [it, fresh] = seen.emplace(std::move(key), static_cast<ObsId>(om.classes.size()));
    if (fresh) om.classes.emplace_back();
    om.class_of[q] = it->second;
    om.classes[static_cast<std::size_t>(it->second)].push_back(static_cast<QId>(q));
  }
  return om;  // members are pushed in ascending q, so classes stay sorted
}

Belief initial_belief(const ProductGame& g) { return g.initial_class; }

Belief update_system(const ProductGame& g, const ObservationModel& om, const Belief& b,
                     ActionId a, ObsId o) {
  Belief out;
  for (QId q : b) {
    const QId q2 = successor(g, q, a);
    if (q2 != kNone && obs_of(om, q2) == o) out.push_back(q2);
  }
  sort_unique(out);
  if (out.empty())
    throw contradiction_error("system action " +
                              g.arena.actions[static_cast<std::size_t>(a)].name +
                              " admits no hypothesis under the observation");
  return out;
}

Belief update_env(const ProductGame& g, const ObservationModel& om, const Belief& b, ObsId o) {
  Belief out;
  for (QId q : b)
    for (const auto& [act, q2] : g.trans[static_cast<std::size_t>(q)]) {
      (void)act;
      if (obs_of(om, q2) == o) out.push_back(q2);
    }
  sort_unique(out);
  if (out.empty())
    throw contradiction_error("environment move admits no hypothesis under the observation");
  return out;
}

Belief alpha_oracle(const ProductGame& g, const ObservationModel& om, const PlayPrefix& p) {
  if (p.states.empty() || p.states.size() != p.acts.size() + 1)
    throw std::logic_error("alpha_oracle: malformed prefix");
  // Level 0: any initial hypothesis that looks like the prefix start.
  std::vector<std::vector<QId>> paths;
  for (QId q : initial_belief(g))
    if (obs_of(om, q) == obs_of(om, p.states[0])) paths.push_back({q});
  for (std::size_t i = 0; i < p.acts.size(); ++i) {
    const bool sys_turn =
        g.owner[static_cast<std::size_t>(p.states[i])] == Player::system;
    const ObsId o = obs_of(om, p.states[i + 1]);
    std::vector<std::vector<QId>> next;
    for (const auto& path : paths) {
      const QId q = path.back();
      for (const auto& [act, q2] : g.trans[static_cast<std::size_t>(q)]) {
        // The system's own actions are observable; environment actions are
        // all rendered the same, so any env move may explain the step.
        if (sys_turn && act != p.acts[i]) continue;
        if (obs_of(om, q2) != o) continue;
        auto np = path;
        np.push_back(q2);
        next.push_back(std::move(np));
      }
    }
    paths.swap(next);
  }
  Belief out;
  for (const auto& path : paths) out.push_back(path.back());
  sort_unique(out);
  return out;
}

}  // namespace vigil
