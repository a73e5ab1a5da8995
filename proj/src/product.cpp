#include "vigil/product.hpp"

#include <algorithm>
#include <deque>

#include "json.hpp"
#include "vigil/errors.hpp"

namespace vigil {

std::string ProductGame::q_name(QId q) const {
  const ProductState& ps = qs.at(static_cast<std::size_t>(q));
  return arena.states[static_cast<std::size_t>(ps.s)].name + "/" +
         dba.state_names[static_cast<std::size_t>(ps.h)];
}

namespace {

bool obs_equivalent(const ArenaState& x, const ArenaState& y) {
  if (x.observable != y.observable) return false;
  for (std::size_t p = 0; p < x.observable.size(); ++p)
    if (x.observable[p] && x.valuation[p] != y.valuation[p]) return false;
  return true;
}

}  // namespace

ProductGame build_product(const Arena& a, const Dba& d) {
  if (a.ap != d.ap)
    throw model_error("arena and automaton disagree on the proposition universe");

  ProductGame g;
  g.arena = a;
  g.dba = d;

  std::vector<Letter> letters;
  letters.reserve(a.states.size());
  for (const ArenaState& st : a.states) letters.push_back(make_letter(st.label, a.ap.size()));

  const auto nh = static_cast<std::size_t>(d.num_states());
  std::vector<QId> index(a.states.size() * nh, kNone);
  const auto key = [&](StateId s, AutStateId h) {
    return static_cast<std::size_t>(s) * nh + static_cast<std::size_t>(h);
  };
  std::deque<QId> queue;
  const auto intern = [&](StateId s, AutStateId h) -> QId {
    QId& slot = index[key(s, h)];
    if (slot == kNone) {
      slot = static_cast<QId>(g.qs.size());
      g.qs.push_back({s, h});
      g.owner.push_back(a.states[static_cast<std::size_t>(s)].owner);
      g.accepting.push_back(d.accepting[static_cast<std::size_t>(h)]);
      g.trans.emplace_back();
      queue.push_back(slot);
    }
    return slot;
  };

  // Initial hypotheses: every state the initial observation admits, paired
  // with the automaton state reached on that state's label.
  const ArenaState& s0 = a.states[static_cast<std::size_t>(a.init)];
  std::vector<StateId> starts;
  if (a.belief_singleton) {
    starts.push_back(a.init);
  } else {
    for (StateId s = 0; s < a.num_states(); ++s)
      if (obs_equivalent(a.states[static_cast<std::size_t>(s)], s0)) starts.push_back(s);
  }
  for (StateId s : starts) {
    const AutStateId h = dba_step(d, d.init, letters[static_cast<std::size_t>(s)]);
    const QId q = intern(s, h);
    g.initial_class.push_back(q);
    if (s == a.init) g.q0 = q;
  }
  sort_unique(g.initial_class);

  while (!queue.empty()) {
    const QId q = queue.front();
    queue.pop_front();
    const ProductState ps = g.qs[static_cast<std::size_t>(q)];
    for (const auto& [act, s2] : a.trans[static_cast<std::size_t>(ps.s)]) {
      const AutStateId h2 = dba_step(d, ps.h, letters[static_cast<std::size_t>(s2)]);
      // intern may reallocate g.trans; take the row reference afterwards.
      const QId q2 = intern(s2, h2);
      g.trans[static_cast<std::size_t>(q)].push_back({act, q2});
    }
  }
  return g;
}

QId successor(const ProductGame& g, QId q, ActionId act) {
  const auto& row = g.trans.at(static_cast<std::size_t>(q));
  const auto it = std::lower_bound(row.begin(), row.end(), std::make_pair(act, QId{0}),
                                   [](const auto& x, const auto& y) { return x.first < y.first; });
  if (it == row.end() || it->first != act) return kNone;
  return it->second;
}

namespace {

struct Reverse {
  std::vector<std::vector<QId>> preds;  // unique predecessor lists
  std::vector<std::int32_t> outdeg;
};

Reverse reverse_graph(const ProductGame& g) {
  Reverse r;
  r.preds.resize(g.num_q());
  r.outdeg.resize(g.num_q());
  for (std::size_t q = 0; q < g.num_q(); ++q) {
    r.outdeg[q] = static_cast<std::int32_t>(g.trans[q].size());
    for (const auto& [act, q2] : g.trans[q]) {
      (void)act;
      r.preds[static_cast<std::size_t>(q2)].push_back(static_cast<QId>(q));
    }
  }
  for (auto& v : r.preds) sort_unique(v);
  return r;
}

struct Attractor {
  std::vector<std::uint8_t> in;
  std::vector<std::int32_t> layer;  // BFS round of joining; targets are 0
};

// Player-1 attractor: system states join when any successor is in, env
// states when all are. Counter trick gives O(edges); joining order follows
// layers, so layer(env q) = max successor layer + 1.
Attractor attract1(const ProductGame& g, const Reverse& r, const std::vector<std::uint8_t>& target) {
  Attractor a;
  a.in.assign(g.num_q(), 0);
  a.layer.assign(g.num_q(), -1);
  std::vector<std::int32_t> remaining = r.outdeg;
  std::deque<QId> queue;
  for (std::size_t q = 0; q < g.num_q(); ++q)
    if (target[q]) {
      a.in[q] = 1;
      a.layer[q] = 0;
      queue.push_back(static_cast<QId>(q));
    }
  while (!queue.empty()) {
    const QId q2 = queue.front();
    queue.pop_front();
    for (QId q : r.preds[static_cast<std::size_t>(q2)]) {
      const auto qi = static_cast<std::size_t>(q);
      if (a.in[qi]) continue;
      bool join = false;
      if (g.owner[qi] == Player::system) {
        join = true;
      } else {
        // A multi-edge to q2 decrements once per edge.
        std::int32_t hits = 0;
        for (const auto& [act, dst] : g.trans[qi]) {
          (void)act;
          if (dst == q2) ++hits;
        }
        remaining[qi] -= hits;
        join = remaining[qi] == 0;
      }
      if (join) {
        a.in[qi] = 1;
        a.layer[qi] = a.layer[static_cast<std::size_t>(q2)] + 1;
        queue.push_back(q);
      }
    }
  }
  return a;
}

bool pre1_member(const ProductGame& g, QId q, const std::vector<std::uint8_t>& set) {
  const auto qi = static_cast<std::size_t>(q);
  if (g.owner[qi] == Player::system) {
    for (const auto& [act, dst] : g.trans[qi]) {
      (void)act;
      if (set[static_cast<std::size_t>(dst)]) return true;
    }
    return false;
  }
  for (const auto& [act, dst] : g.trans[qi]) {
    (void)act;
    if (!set[static_cast<std::size_t>(dst)]) return false;
  }
  return true;
}

}  // namespace

SolveResult solve_buchi(const ProductGame& g) {
  const std::size_t n = g.num_q();
  const Reverse rev = reverse_graph(g);

  // Core shrinking: X holds the accepting states that can still force a
  // revisit of X in at least one step. Pre1(Attr1(X)) is exactly "one
  // controlled step into the attractor, then attract".
  std::vector<std::uint8_t> core = g.accepting;
  Attractor attr = attract1(g, rev, core);
  while (true) {
    std::vector<std::uint8_t> next(n, 0);
    bool changed = false;
    for (std::size_t q = 0; q < n; ++q) {
      if (!core[q]) continue;
      if (pre1_member(g, static_cast<QId>(q), attr.in)) next[q] = 1;
      else changed = true;
    }
    if (!changed) break;
    core.swap(next);
    attr = attract1(g, rev, core);
  }

  SolveResult sr;
  sr.win1 = attr.in;
  sr.rank = attr.layer;
  sr.ws.assign(n, kNone);
  for (std::size_t q = 0; q < n; ++q) {
    if (!sr.win1[q]) {
      sr.rank[q] = -1;
      continue;
    }
    sr.max_rank = std::max(sr.max_rank, sr.rank[q]);
    if (g.owner[q] != Player::system) continue;
    // Lowest-id action that descends one layer; at the core, lowest-id
    // action that stays winning (restarting the descent).
    for (const auto& [act, dst] : g.trans[q]) {
      const auto di = static_cast<std::size_t>(dst);
      if (!sr.win1[di]) continue;
      if (sr.rank[q] == 0 || sr.rank[di] < sr.rank[q]) {
        sr.ws[q] = act;
        break;
      }
    }
    if (sr.ws[q] == kNone)
      throw std::logic_error("winning system state lacks a strategy move");
  }
  return sr;
}

std::vector<ActionId> allow_actions(const ProductGame& g, const SolveResult& sr, QId q) {
  const auto qi = static_cast<std::size_t>(q);
  if (g.owner[qi] != Player::system)
    throw std::logic_error("allow_actions queried on an environment state");
  std::vector<ActionId> out;
  for (const auto& [act, dst] : g.trans[qi])
    if (sr.win1[static_cast<std::size_t>(dst)]) out.push_back(act);
  return out;
}

std::string solve_result_to_json(const ProductGame& g, const SolveResult& sr) {
  nlohmann::json doc;
  doc["states"] = g.num_q();
  std::size_t nwin = 0;
  for (auto v : sr.win1) nwin += v;
  doc["win1"] = nwin;
  doc["max_rank"] = sr.max_rank;
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t q = 0; q < g.num_q(); ++q) {
    if (!sr.win1[q]) continue;
    nlohmann::json row;
    row["state"] = g.q_name(static_cast<QId>(q));
    row["owner"] = g.owner[q] == Player::system ? "sys" : "env";
    row["rank"] = sr.rank[q];
    if (sr.ws[q] != kNone)
      row["ws"] = g.arena.actions[static_cast<std::size_t>(sr.ws[q])].name;
    rows.push_back(std::move(row));
  }
  doc["winning"] = std::move(rows);
  return doc.dump(2);
}

}  // namespace vigil
