#include "vigil/arena.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "vigil/errors.hpp"

namespace vigil {

PropId Arena::add_ap(const std::string& name) {
  ap.push_back(name);
  return static_cast<PropId>(ap.size()) - 1;
}

PredId Arena::add_pred(const std::string& name, bool hidden) {
  preds.push_back(name);
  pred_hidden.push_back(hidden ? 1 : 0);
  return static_cast<PredId>(preds.size()) - 1;
}

ActionId Arena::add_action(const std::string& name, Player owner) {
  actions.push_back({name, owner});
  return static_cast<ActionId>(actions.size()) - 1;
}

StateId Arena::add_state(const std::string& name, Player owner) {
  ArenaState st;
  st.name = name;
  st.owner = owner;
  st.valuation.assign(preds.size(), 0);
  st.observable.assign(preds.size(), 0);
  for (std::size_t p = 0; p < preds.size(); ++p) st.observable[p] = pred_hidden[p] ? 0 : 1;
  if (turn_pred != kNone) {
    st.observable[static_cast<std::size_t>(turn_pred)] = 1;
    st.valuation[static_cast<std::size_t>(turn_pred)] = owner == Player::system ? 1 : 0;
  }
  states.push_back(std::move(st));
  trans.emplace_back();
  return static_cast<StateId>(states.size()) - 1;
}

void Arena::add_trans(StateId src, ActionId a, StateId dst) {
  auto& row = trans.at(static_cast<std::size_t>(src));
  const auto it = std::lower_bound(row.begin(), row.end(), std::make_pair(a, StateId{0}),
                                   [](const auto& x, const auto& y) { return x.first < y.first; });
  if (it != row.end() && it->first == a)
    throw model_error("nondeterministic transition from state " + states[src].name +
                      " on action " + actions[a].name);
  row.insert(it, {a, dst});
}

std::optional<StateId> Arena::state_id(const std::string& name) const {
  for (std::size_t i = 0; i < states.size(); ++i)
    if (states[i].name == name) return static_cast<StateId>(i);
  return std::nullopt;
}

std::optional<ActionId> Arena::action_id(const std::string& name) const {
  for (std::size_t i = 0; i < actions.size(); ++i)
    if (actions[i].name == name) return static_cast<ActionId>(i);
  return std::nullopt;
}

std::optional<PredId> Arena::pred_id(const std::string& name) const {
  for (std::size_t i = 0; i < preds.size(); ++i)
    if (preds[i] == name) return static_cast<PredId>(i);
  return std::nullopt;
}

std::optional<PropId> Arena::ap_id(const std::string& name) const {
  for (std::size_t i = 0; i < ap.size(); ++i)
    if (ap[i] == name) return static_cast<PropId>(i);
  return std::nullopt;
}

std::vector<ActionId> enabled(const Arena& a, StateId s) {
  std::vector<ActionId> out;
  for (const auto& [act, dst] : a.trans.at(static_cast<std::size_t>(s))) {
    (void)dst;
    out.push_back(act);
  }
  return out;
}

StateId successor(const Arena& a, StateId s, ActionId act) {
  const auto& row = a.trans.at(static_cast<std::size_t>(s));
  const auto it = std::lower_bound(row.begin(), row.end(), std::make_pair(act, StateId{0}),
                                   [](const auto& x, const auto& y) { return x.first < y.first; });
  if (it == row.end() || it->first != act) return kNone;
  return it->second;
}

namespace {

bool valid_ident(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

}  // namespace

void validate(const Arena& a) {
  const std::size_t np = a.preds.size();
  if (a.turn_pred == kNone || static_cast<std::size_t>(a.turn_pred) >= np)
    throw model_error("missing turn predicate");
  {
    std::map<std::string, int> seen;
    for (const auto& n : a.preds)
      if (++seen[n] > 1) throw model_error("duplicate predicate '" + n + "'");
    for (const auto& n : a.ap) {
      if (!valid_ident(n)) throw model_error("bad proposition name '" + n + "'");
      if (++seen["ap:" + n] > 1) throw model_error("duplicate proposition '" + n + "'");
    }
    seen.clear();
    for (const auto& st : a.states) {
      if (!valid_ident(st.name)) throw model_error("bad state name '" + st.name + "'");
      if (++seen[st.name] > 1) throw model_error("duplicate state '" + st.name + "'");
    }
    seen.clear();
    for (const auto& act : a.actions) {
      if (!valid_ident(act.name)) throw model_error("bad action name '" + act.name + "'");
      if (++seen[act.name] > 1) throw model_error("duplicate action '" + act.name + "'");
    }
  }
  if (a.init == kNone || static_cast<std::size_t>(a.init) >= a.states.size())
    throw model_error("missing or dangling initial state");
  if (a.trans.size() != a.states.size()) throw model_error("transition table size mismatch");

  for (std::size_t s = 0; s < a.states.size(); ++s) {
    const ArenaState& st = a.states[s];
    if (st.valuation.size() != np || st.observable.size() != np)
      throw model_error("state " + st.name + " has a malformed valuation");
    if (!st.observable[static_cast<std::size_t>(a.turn_pred)])
      throw model_error("turn predicate hidden at state " + st.name);
    const bool tv = st.valuation[static_cast<std::size_t>(a.turn_pred)] != 0;
    if (tv != (st.owner == Player::system))
      throw model_error("turn predicate inconsistent with owner at state " + st.name);
    for (PropId p : st.label)
      if (p < 0 || static_cast<std::size_t>(p) >= a.ap.size())
        throw model_error("state " + st.name + " labeled with unknown proposition");
    if (!std::is_sorted(st.label.begin(), st.label.end()))
      throw model_error("state " + st.name + " label not canonical");

    const auto& row = a.trans[s];
    if (row.empty()) throw model_error("state " + st.name + " is a dead end");
    for (std::size_t i = 0; i < row.size(); ++i) {
      const auto [act, dst] = row[i];
      if (act < 0 || static_cast<std::size_t>(act) >= a.actions.size())
        throw model_error("transition from " + st.name + " uses unknown action");
      if (dst < 0 || static_cast<std::size_t>(dst) >= a.states.size())
        throw model_error("dangling transition target from " + st.name);
      if (i > 0 && row[i - 1].first >= act)
        throw model_error("transition row for " + st.name + " not canonical");
      if (a.actions[static_cast<std::size_t>(act)].owner != st.owner)
        throw model_error("action " + a.actions[static_cast<std::size_t>(act)].name +
                          " owner mismatch at state " + st.name);
    }
  }
  {
    std::map<std::string, int> seen;
    for (const SensorDecl& sd : a.sensors) {
      if (!valid_ident(sd.name)) throw model_error("bad sensor name '" + sd.name + "'");
      if (++seen[sd.name] > 1) throw model_error("duplicate sensor '" + sd.name + "'");
      if (sd.senses.empty()) throw model_error("sensor " + sd.name + " senses nothing");
      if (!sd.global) {
        if (sd.at.empty()) throw model_error("sensor " + sd.name + " enabled nowhere");
        for (StateId s : sd.at)
          if (s < 0 || static_cast<std::size_t>(s) >= a.states.size())
            throw model_error("sensor " + sd.name + " enabled at unknown state");
      }
      for (const Formula& f : sd.senses)
        for (std::int32_t v : f.vars())
          if (v < 0 || static_cast<std::size_t>(v) >= np)
            throw model_error("sensor " + sd.name + " reads unknown predicate");
    }
  }
}

// ---------------------------------------------------------------------------
// Document parsing.

namespace {

struct Tok {
  std::string text;
  int col;  // 1-based
};

struct Line {
  int no;                // 1-based
  std::vector<Tok> toks; // tokens left of any ':'
  std::string tail;      // raw text right of the first ':'
  int tail_col = 0;
  bool has_tail = false;
};

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream in(text);
  std::string raw;
  int no = 0;
  while (std::getline(in, raw)) {
    ++no;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    Line line{no, {}, "", 0, false};
    std::size_t i = 0;
    while (i < raw.size()) {
      const char c = raw[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
        continue;
      }
      if (c == ':') {
        line.has_tail = true;
        line.tail = raw.substr(i + 1);
        line.tail_col = static_cast<int>(i) + 2;
        break;
      }
      if (c == '{' || c == '}') {
        line.toks.push_back({std::string(1, c), static_cast<int>(i) + 1});
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j])) &&
             raw[j] != '{' && raw[j] != '}' && raw[j] != ':')
        ++j;
      line.toks.push_back({raw.substr(i, j - i), static_cast<int>(i) + 1});
      i = j;
    }
    if (!line.toks.empty() || line.has_tail) lines.push_back(std::move(line));
  }
  return lines;
}

[[noreturn]] void fail(const Line& l, const Tok& t, const std::string& msg) {
  throw parse_error(msg + " ('" + t.text + "')", l.no, t.col);
}

[[noreturn]] void fail(const Line& l, const std::string& msg) {
  throw parse_error(msg, l.no, l.toks.empty() ? 1 : l.toks[0].col);
}

Player parse_owner(const Line& l, const Tok& t) {
  if (t.text == "sys") return Player::system;
  if (t.text == "env") return Player::environment;
  fail(l, t, "expected sys or env");
}

bool parse_bool(const Line& l, const Tok& t, const std::string& v) {
  if (v == "1" || v == "true") return true;
  if (v == "0" || v == "false") return false;
  fail(l, t, "expected 0, 1, true or false");
}

}  // namespace

Model parse_model(const std::string& text) {
  const std::vector<Line> lines = tokenize(text);
  Model m;
  Arena& a = m.arena;

  // Pass 1: name tables, so lines may reference entities in any order.
  std::map<std::string, PredId> pred_ids;
  std::map<std::string, StateId> state_ids;
  std::map<std::string, AutStateId> dba_state_ids;
  bool any_dba = false;
  for (const Line& l : lines) {
    const std::string& head = l.toks[0].text;
    if (head == "ap") {
      if (l.toks.size() < 2) fail(l, "ap line lists no names");
      for (std::size_t i = 1; i < l.toks.size(); ++i) {
        if (!valid_ident(l.toks[i].text)) fail(l, l.toks[i], "bad proposition name");
        if (a.ap_id(l.toks[i].text)) fail(l, l.toks[i], "duplicate proposition");
        a.add_ap(l.toks[i].text);
      }
    } else if (head == "pred") {
      if (l.toks.size() < 2 || l.toks.size() > 3) fail(l, "expected: pred <name> [hidden]");
      const std::string& name = l.toks[1].text;
      if (!valid_ident(name)) fail(l, l.toks[1], "bad predicate name");
      if (name == "t") fail(l, l.toks[1], "the turn predicate t is implicit");
      if (pred_ids.count(name)) fail(l, l.toks[1], "duplicate predicate");
      bool hidden = false;
      if (l.toks.size() == 3) {
        if (l.toks[2].text != "hidden") fail(l, l.toks[2], "expected 'hidden'");
        hidden = true;
      }
      pred_ids.emplace(name, a.add_pred(name, hidden));
    } else if (head == "state") {
      if (l.toks.size() < 2) fail(l, "state line missing name");
      const std::string& name = l.toks[1].text;
      if (!valid_ident(name)) fail(l, l.toks[1], "bad state name");
      if (state_ids.count(name)) fail(l, l.toks[1], "duplicate state");
      state_ids.emplace(name, static_cast<StateId>(state_ids.size()));
    } else if (head == "dba") {
      any_dba = true;
      if (l.toks.size() >= 3 && l.toks[1].text == "state") {
        const std::string& name = l.toks[2].text;
        if (!valid_ident(name)) fail(l, l.toks[2], "bad automaton state name");
        if (dba_state_ids.count(name)) fail(l, l.toks[2], "duplicate automaton state");
        dba_state_ids.emplace(name, static_cast<AutStateId>(dba_state_ids.size()));
      }
    } else if (head == "init" || head == "trans" || head == "sensor" || head == "belief0") {
      // handled in pass 2
    } else {
      fail(l, l.toks[0], "unknown directive");
    }
  }

  // The implicit turn predicate follows all declared ones.
  a.turn_pred = a.add_pred("t", false);

  // Pass 2: bodies.
  std::map<std::string, ActionId> action_ids;
  std::vector<std::uint8_t> state_defined(state_ids.size(), 0);
  bool init_seen = false;
  Dba dba;
  dba.ap = a.ap;
  dba.state_names.resize(dba_state_ids.size());
  dba.edges.resize(dba_state_ids.size());
  dba.accepting.assign(dba_state_ids.size(), 0);
  for (const auto& [name, id] : dba_state_ids) dba.state_names[static_cast<std::size_t>(id)] = name;
  bool dba_init_seen = false;

  const auto lookup_state = [&](const Line& l, const Tok& t) -> StateId {
    const auto it = state_ids.find(t.text);
    if (it == state_ids.end()) fail(l, t, "undeclared state");
    return it->second;
  };
  const auto resolve_pred = [&](const std::string& name) -> PredId {
    const auto it = pred_ids.find(name);
    if (it == pred_ids.end()) throw model_error("undeclared predicate '" + name + "'");
    return it->second;
  };
  const auto resolve_ap = [&](const std::string& name) -> PropId {
    if (const auto id = a.ap_id(name)) return *id;
    throw model_error("undeclared proposition '" + name + "'");
  };

  // States must exist before pass-2 lines touch them.
  a.states.resize(state_ids.size());
  a.trans.resize(state_ids.size());
  for (const auto& [name, id] : state_ids) a.states[static_cast<std::size_t>(id)].name = name;

  for (const Line& l : lines) {
    const std::string& head = l.toks[0].text;
    if (head == "state") {
      if (l.toks.size() < 3) fail(l, "expected: state <name> sys|env { ... }");
      const StateId sid = lookup_state(l, l.toks[1]);
      if (state_defined[static_cast<std::size_t>(sid)]) fail(l, l.toks[1], "duplicate state");
      state_defined[static_cast<std::size_t>(sid)] = 1;
      ArenaState& st = a.states[static_cast<std::size_t>(sid)];
      st.owner = parse_owner(l, l.toks[2]);
      st.valuation.assign(a.preds.size(), 0);
      st.observable.assign(a.preds.size(), 0);
      for (std::size_t p = 0; p < a.preds.size(); ++p)
        st.observable[p] = a.pred_hidden[p] ? 0 : 1;
      st.observable[static_cast<std::size_t>(a.turn_pred)] = 1;
      st.valuation[static_cast<std::size_t>(a.turn_pred)] =
          st.owner == Player::system ? 1 : 0;

      std::size_t i = 3;
      if (i >= l.toks.size() || l.toks[i].text != "{") fail(l, "expected '{'");
      ++i;
      while (i < l.toks.size() && l.toks[i].text != "}") {
        try {
          st.label.push_back(resolve_ap(l.toks[i].text));
        } catch (const model_error& e) {
          fail(l, l.toks[i], e.what());
        }
        ++i;
      }
      if (i >= l.toks.size()) fail(l, "expected '}'");
      sort_unique(st.label);
      ++i;
      while (i < l.toks.size()) {
        const Tok& t = l.toks[i];
        if (t.text == "show" || t.text == "hide") {
          if (i + 1 >= l.toks.size()) fail(l, t, "expected predicate name");
          const Tok& pt = l.toks[i + 1];
          if (pt.text == "t") fail(l, pt, "the turn predicate is always observable");
          PredId p;
          try {
            p = resolve_pred(pt.text);
          } catch (const model_error& e) {
            fail(l, pt, e.what());
          }
          st.observable[static_cast<std::size_t>(p)] = t.text == "show" ? 1 : 0;
          i += 2;
          continue;
        }
        const auto eq = t.text.find('=');
        if (eq == std::string::npos) fail(l, t, "expected <pred>=<val>, show or hide");
        const std::string name = t.text.substr(0, eq);
        if (name == "t") fail(l, t, "the turn predicate may not be assigned");
        PredId p;
        try {
          p = resolve_pred(name);
        } catch (const model_error& e) {
          fail(l, t, e.what());
        }
        st.valuation[static_cast<std::size_t>(p)] =
            parse_bool(l, t, t.text.substr(eq + 1)) ? 1 : 0;
        ++i;
      }
    } else if (head == "init") {
      if (l.toks.size() != 2) fail(l, "expected: init <state>");
      if (init_seen) fail(l, "duplicate init line");
      init_seen = true;
      a.init = lookup_state(l, l.toks[1]);
    } else if (head == "belief0") {
      if (l.toks.size() != 2) fail(l, "expected: belief0 class|singleton");
      if (l.toks[1].text == "singleton") a.belief_singleton = true;
      else if (l.toks[1].text == "class") a.belief_singleton = false;
      else fail(l, l.toks[1], "expected class or singleton");
    } else if (head == "trans") {
      if (l.toks.size() != 4) fail(l, "expected: trans <src> <action>@sys|env <dst>");
      const StateId src = lookup_state(l, l.toks[1]);
      const StateId dst = lookup_state(l, l.toks[3]);
      const Tok& at = l.toks[2];
      const auto sep = at.text.find('@');
      if (sep == std::string::npos) fail(l, at, "expected <action>@sys|env");
      const std::string act_name = at.text.substr(0, sep);
      if (!valid_ident(act_name)) fail(l, at, "bad action name");
      const Player owner = parse_owner(l, Tok{at.text.substr(sep + 1), at.col});
      ActionId act;
      if (const auto it = action_ids.find(act_name); it != action_ids.end()) {
        act = it->second;
        if (a.actions[static_cast<std::size_t>(act)].owner != owner)
          fail(l, at, "action already declared with the other owner");
      } else {
        act = a.add_action(act_name, owner);
        action_ids.emplace(act_name, act);
      }
      try {
        a.add_trans(src, act, dst);
      } catch (const model_error& e) {
        fail(l, at, e.what());
      }
    } else if (head == "sensor") {
      if (!l.has_tail) fail(l, "sensor line needs ': <formula>'");
      if (l.toks.size() < 2) fail(l, "sensor line missing name");
      SensorDecl sd;
      sd.name = l.toks[1].text;
      if (!valid_ident(sd.name)) fail(l, l.toks[1], "bad sensor name");
      std::size_t i = 2;
      if (i < l.toks.size()) {
        if (l.toks[i].text != "at") fail(l, l.toks[i], "expected 'at' or ':'");
        ++i;
        sd.global = false;
        for (; i < l.toks.size(); ++i) sd.at.push_back(lookup_state(l, l.toks[i]));
        if (sd.at.empty()) fail(l, "empty 'at' list");
        sort_unique(sd.at);
      }
      std::istringstream parts(l.tail);
      std::string part;
      int col = l.tail_col;
      while (std::getline(parts, part, ';')) {
        sd.senses.push_back(parse_formula(
            part, [&](const std::string& n) { return resolve_pred(n); }, l.no, col - 1));
        col += static_cast<int>(part.size()) + 1;
      }
      if (sd.senses.empty()) fail(l, "sensor senses nothing");
      a.sensors.push_back(std::move(sd));
    } else if (head == "dba") {
      if (l.toks.size() < 2) fail(l, "incomplete dba line");
      const std::string& sub = l.toks[1].text;
      if (sub == "state") {
        if (l.toks.size() < 3 || l.toks.size() > 4) fail(l, "expected: dba state <name> [accept]");
        const AutStateId h = dba_state_ids.at(l.toks[2].text);
        if (l.toks.size() == 4) {
          if (l.toks[3].text != "accept") fail(l, l.toks[3], "expected 'accept'");
          dba.accepting[static_cast<std::size_t>(h)] = 1;
        }
      } else if (sub == "init") {
        if (l.toks.size() != 3) fail(l, "expected: dba init <name>");
        const auto it = dba_state_ids.find(l.toks[2].text);
        if (it == dba_state_ids.end()) fail(l, l.toks[2], "undeclared automaton state");
        if (dba_init_seen) fail(l, "duplicate dba init line");
        dba_init_seen = true;
        dba.init = it->second;
      } else if (sub == "trans") {
        if (l.toks.size() != 4 || !l.has_tail)
          fail(l, "expected: dba trans <src> <dst> : <formula>|else");
        const auto src = dba_state_ids.find(l.toks[2].text);
        const auto dst = dba_state_ids.find(l.toks[3].text);
        if (src == dba_state_ids.end()) fail(l, l.toks[2], "undeclared automaton state");
        if (dst == dba_state_ids.end()) fail(l, l.toks[3], "undeclared automaton state");
        DbaEdge e;
        e.target = dst->second;
        std::string tail = l.tail;
        const auto first = tail.find_first_not_of(" \t");
        const auto last = tail.find_last_not_of(" \t");
        const std::string trimmed =
            first == std::string::npos ? "" : tail.substr(first, last - first + 1);
        if (trimmed == "else") {
          e.is_else = true;
        } else {
          e.guard = parse_formula(
              tail, [&](const std::string& n) { return resolve_ap(n); }, l.no, l.tail_col - 1);
        }
        dba.edges[static_cast<std::size_t>(src->second)].push_back(std::move(e));
      } else {
        fail(l, l.toks[1], "expected dba state, dba init or dba trans");
      }
    }
  }

  for (std::size_t s = 0; s < state_defined.size(); ++s)
    if (!state_defined[s]) throw model_error("state " + a.states[s].name + " never defined");
  if (!init_seen) throw model_error("model declares no initial state");

  validate(a);
  if (any_dba) {
    if (!dba_init_seen) throw model_error("embedded automaton declares no initial state");
    validate_dba(dba);
    m.dba = std::move(dba);
  }
  return m;
}

// ---------------------------------------------------------------------------
// Canonical serialization.

std::string serialize_model(const Model& m) {
  const Arena& a = m.arena;
  std::ostringstream out;

  const auto sorted_names = [](std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    return v;
  };

  if (!a.ap.empty()) {
    out << "ap";
    for (const auto& n : sorted_names(a.ap)) out << ' ' << n;
    out << '\n';
  }
  {
    std::vector<std::pair<std::string, bool>> ps;
    for (std::size_t p = 0; p < a.preds.size(); ++p)
      if (static_cast<PredId>(p) != a.turn_pred)
        ps.emplace_back(a.preds[p], a.pred_hidden[p] != 0);
    std::sort(ps.begin(), ps.end());
    for (const auto& [n, hidden] : ps) out << "pred " << n << (hidden ? " hidden" : "") << '\n';
  }

  std::vector<StateId> state_order(a.states.size());
  for (std::size_t i = 0; i < state_order.size(); ++i) state_order[i] = static_cast<StateId>(i);
  std::sort(state_order.begin(), state_order.end(), [&](StateId x, StateId y) {
    return a.states[static_cast<std::size_t>(x)].name < a.states[static_cast<std::size_t>(y)].name;
  });

  // Predicates in name order for stable per-state emission.
  std::vector<PredId> pred_order;
  for (std::size_t p = 0; p < a.preds.size(); ++p)
    if (static_cast<PredId>(p) != a.turn_pred) pred_order.push_back(static_cast<PredId>(p));
  std::sort(pred_order.begin(), pred_order.end(),
            [&](PredId x, PredId y) { return a.preds[x] < a.preds[y]; });

  for (StateId sid : state_order) {
    const ArenaState& st = a.states[static_cast<std::size_t>(sid)];
    out << "state " << st.name << ' ' << (st.owner == Player::system ? "sys" : "env") << " {";
    std::vector<std::string> props;
    for (PropId p : st.label) props.push_back(a.ap[static_cast<std::size_t>(p)]);
    for (const auto& p : sorted_names(props)) out << ' ' << p;
    out << " }";
    for (PredId p : pred_order)
      if (st.valuation[static_cast<std::size_t>(p)]) out << ' ' << a.preds[p] << "=1";
    for (PredId p : pred_order) {
      const bool def = a.pred_hidden[static_cast<std::size_t>(p)] == 0;
      const bool obs = st.observable[static_cast<std::size_t>(p)] != 0;
      if (obs != def) out << (obs ? " show " : " hide ") << a.preds[p];
    }
    out << '\n';
  }

  out << "init " << a.states[static_cast<std::size_t>(a.init)].name << '\n';
  if (a.belief_singleton) out << "belief0 singleton\n";

  {
    std::vector<std::pair<std::pair<std::string, std::string>, std::string>> rows;
    for (std::size_t s = 0; s < a.states.size(); ++s)
      for (const auto& [act, dst] : a.trans[s]) {
        const ArenaAction& an = a.actions[static_cast<std::size_t>(act)];
        rows.push_back({{a.states[s].name, an.name},
                        an.name + "@" + (an.owner == Player::system ? "sys" : "env") + " " +
                            a.states[static_cast<std::size_t>(dst)].name});
      }
    std::sort(rows.begin(), rows.end());
    for (const auto& [key, rest] : rows) out << "trans " << key.first << ' ' << rest << '\n';
  }

  {
    std::vector<const SensorDecl*> order;
    for (const auto& sd : a.sensors) order.push_back(&sd);
    std::sort(order.begin(), order.end(),
              [](const SensorDecl* x, const SensorDecl* y) { return x->name < y->name; });
    const auto pred_name = [&](std::int32_t p) { return a.preds[static_cast<std::size_t>(p)]; };
    for (const SensorDecl* sd : order) {
      out << "sensor " << sd->name;
      if (!sd->global) {
        out << " at";
        std::vector<std::string> names;
        for (StateId s : sd->at) names.push_back(a.states[static_cast<std::size_t>(s)].name);
        for (const auto& n : sorted_names(names)) out << ' ' << n;
      }
      out << " :";
      for (std::size_t i = 0; i < sd->senses.size(); ++i)
        out << (i ? " ; " : " ") << sd->senses[i].to_string(pred_name);
      out << '\n';
    }
  }

  if (m.dba) {
    const Dba& d = *m.dba;
    const auto ap_name = [&](std::int32_t p) { return d.ap[static_cast<std::size_t>(p)]; };
    for (std::size_t h = 0; h < d.state_names.size(); ++h)
      out << "dba state " << d.state_names[h] << (d.accepting[h] ? " accept" : "") << '\n';
    out << "dba init " << d.state_names[static_cast<std::size_t>(d.init)] << '\n';
    for (std::size_t h = 0; h < d.edges.size(); ++h)
      for (const DbaEdge& e : d.edges[h])
        out << "dba trans " << d.state_names[h] << ' '
            << d.state_names[static_cast<std::size_t>(e.target)] << " : "
            << (e.is_else ? "else" : e.guard.to_string(ap_name)) << '\n';
  }
  return out.str();
}

}  // namespace vigil
