#include "vigil/dba.hpp"

#include <cctype>
#include <map>
#include <sstream>

#include "vigil/errors.hpp"

namespace vigil {

Letter make_letter(const std::vector<PropId>& props, std::size_t num_props) {
  Letter l(num_props, 0);
  for (PropId p : props) l.at(static_cast<std::size_t>(p)) = 1;
  return l;
}

namespace {

bool edge_matches(const std::vector<DbaEdge>& es, std::size_t i, const Letter& letter) {
  if (!es[i].is_else) return es[i].guard.eval(letter);
  for (std::size_t j = 0; j < es.size(); ++j)
    if (j != i && !es[j].is_else && es[j].guard.eval(letter)) return false;
  return true;
}

}  // namespace

AutStateId dba_step(const Dba& d, AutStateId h, const Letter& letter) {
  const auto& es = d.edges.at(static_cast<std::size_t>(h));
  for (std::size_t i = 0; i < es.size(); ++i)
    if (edge_matches(es, i, letter)) return es[i].target;
  throw std::logic_error("automaton state " + d.state_names[h] +
                         " has no edge for a letter: guard set incomplete");
}

bool accepts_lasso(const Dba& d, const std::vector<Letter>& prefix,
                   const std::vector<Letter>& cycle) {
  if (cycle.empty()) throw std::logic_error("accepts_lasso: empty cycle");
  AutStateId h = d.init;
  for (const Letter& l : prefix) h = dba_step(d, h, l);
  // (state, cycle position) pairs repeat within |H| * |cycle| steps; the
  // states entered on the loop segment are exactly Inf of the run.
  std::map<std::pair<AutStateId, std::size_t>, std::size_t> seen;
  std::vector<AutStateId> entered;
  std::size_t pos = 0;
  for (std::size_t t = 0;; ++t) {
    const auto key = std::make_pair(h, pos);
    const auto it = seen.find(key);
    if (it != seen.end()) {
      for (std::size_t j = it->second; j < t; ++j)
        if (d.accepting[static_cast<std::size_t>(entered[j])]) return true;
      return false;
    }
    seen.emplace(key, t);
    h = dba_step(d, h, cycle[pos]);
    entered.push_back(h);
    pos = (pos + 1) % cycle.size();
  }
}

void validate_dba(const Dba& d) {
  const auto n = static_cast<std::size_t>(d.num_states());
  if (n == 0) throw model_error("automaton has no states");
  if (d.edges.size() != n || d.accepting.size() != n)
    throw model_error("automaton tables disagree on state count");
  if (d.init < 0 || static_cast<std::size_t>(d.init) >= n)
    throw model_error("automaton initial state out of range");
  for (std::size_t s = 0; s < n; ++s) {
    const auto& es = d.edges[s];
    if (es.empty())
      throw model_error("automaton state " + d.state_names[s] + " has no edges");
    for (std::size_t i = 0; i < es.size(); ++i) {
      if (es[i].target < 0 || static_cast<std::size_t>(es[i].target) >= n)
        throw model_error("automaton edge target out of range in " + d.state_names[s]);
      if (es[i].is_else && i + 1 != es.size())
        throw model_error("else edge must be last in " + d.state_names[s]);
      if (!es[i].is_else)
        for (std::int32_t v : es[i].guard.vars())
          if (v < 0 || static_cast<std::size_t>(v) >= d.ap.size())
            throw model_error("automaton guard references unknown proposition");
    }
  }
  if (d.ap.size() <= 12) {
    // Exhaustive letter enumeration: exactly one edge must match everywhere.
    Letter letter(d.ap.size(), 0);
    const std::size_t total = std::size_t{1} << d.ap.size();
    for (std::size_t bits = 0; bits < total; ++bits) {
      for (std::size_t p = 0; p < d.ap.size(); ++p) letter[p] = (bits >> p) & 1;
      for (std::size_t s = 0; s < n; ++s) {
        int matches = 0;
        bool has_else = false;
        for (const DbaEdge& e : d.edges[s]) {
          if (e.is_else) has_else = true;
          else if (e.guard.eval(letter)) ++matches;
        }
        if (matches > 1)
          throw model_error("automaton state " + d.state_names[s] +
                            " has overlapping guards");
        if (matches == 0 && !has_else)
          throw model_error("automaton state " + d.state_names[s] +
                            " has incomplete guards");
      }
    }
  } else {
    for (std::size_t s = 0; s < n; ++s)
      if (!d.edges[s].back().is_else)
        throw model_error("automaton state " + d.state_names[s] +
                          " needs an else edge (too many propositions to enumerate)");
  }
}

namespace {

struct SpecLexer {
  const std::string& text;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw parse_error(msg, 1, static_cast<int>(pos) + 1);
  }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  bool done() {
    skip_ws();
    return pos >= text.size();
  }

  std::string ident() {
    skip_ws();
    const std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    if (pos == start) fail("expected name");
    return text.substr(start, pos - start);
  }
};

}  // namespace

SpecPattern parse_spec(const std::string& text) {
  SpecPattern p;
  SpecLexer lex{text};
  while (true) {
    const std::string head = lex.ident();
    if (head == "G") {
      if (!lex.eat('!')) lex.fail("expected '!' after G");
      p.safety.push_back(lex.ident());
    } else if (head == "GF") {
      lex.skip_ws();
      // lookahead for 'seq('
      const std::size_t save = lex.pos;
      const std::string word = lex.ident();
      if (word == "seq" && lex.eat('(')) {
        std::vector<std::string> seq;
        seq.push_back(lex.ident());
        while (lex.eat(',')) seq.push_back(lex.ident());
        if (!lex.eat(')')) lex.fail("expected ')'");
        p.recurrences.push_back(std::move(seq));
      } else {
        lex.pos = save;
        p.recurrences.push_back({lex.ident()});
      }
    } else {
      lex.fail("expected 'G' or 'GF'");
    }
    if (lex.done()) break;
    if (!lex.eat('&')) lex.fail("expected '&' between conjuncts");
  }
  if (p.safety.empty() && p.recurrences.empty())
    throw parse_error("empty specification", 1, 1);
  return p;
}

Dba compile_pattern(const SpecPattern& p, const std::vector<std::string>& ap) {
  const auto resolve = [&](const std::string& name) -> PropId {
    for (std::size_t i = 0; i < ap.size(); ++i)
      if (ap[i] == name) return static_cast<PropId>(i);
    throw model_error("specification uses undeclared proposition '" + name + "'");
  };

  std::vector<PropId> milestones;
  for (const auto& seq : p.recurrences)
    for (const auto& name : seq) milestones.push_back(resolve(name));
  std::vector<Formula> bad_disj;
  for (const auto& name : p.safety) bad_disj.push_back(Formula::var(resolve(name)));
  const bool has_safety = !bad_disj.empty();
  const Formula bad = Formula::disj(bad_disj);
  const auto safe_guard = [&](Formula f) {
    return has_safety ? Formula::land(Formula::lnot(bad), std::move(f)) : std::move(f);
  };

  Dba d;
  d.ap = ap;
  const auto k = static_cast<std::int32_t>(milestones.size());

  if (k == 0) {
    // Pure safety: a live accepting state and the sink.
    d.state_names = {"acc", "rej"};
    d.accepting = {1, 0};
    d.init = 0;
    d.edges.resize(2);
    d.edges[0].push_back({bad, false, 1});
    d.edges[0].push_back({Formula::lnot(bad), false, 0});
    d.edges[1].push_back({Formula::constant(true), false, 1});
    return d;
  }

  // States: w1..wk wait for their milestone; acc is entered exactly when a
  // round completes and otherwise behaves like w1.
  for (std::int32_t i = 1; i <= k; ++i) d.state_names.push_back("w" + std::to_string(i));
  const AutStateId acc = k;
  d.state_names.push_back("acc");
  AutStateId rej = kNone;
  if (has_safety) {
    rej = k + 1;
    d.state_names.push_back("rej");
  }
  d.accepting.assign(d.state_names.size(), 0);
  d.accepting[static_cast<std::size_t>(acc)] = 1;
  d.init = 0;  // w1
  d.edges.resize(d.state_names.size());

  const auto wait_state = [&](std::int32_t i) -> AutStateId { return i - 1; };  // 1-based

  for (AutStateId src = 0; src <= acc; ++src) {
    const std::int32_t i = (src == acc) ? 1 : src + 1;  // milestone awaited here
    auto& es = d.edges[static_cast<std::size_t>(src)];
    if (has_safety) es.push_back({bad, false, rej});
    // Greedy multi-advance: one letter may satisfy milestones i..j; the
    // round caps at k so completing always lands on acc.
    for (std::int32_t j = i; j <= k; ++j) {
      std::vector<Formula> terms;
      for (std::int32_t t = i; t <= j; ++t) terms.push_back(Formula::var(milestones[t - 1]));
      if (j < k) terms.push_back(Formula::lnot(Formula::var(milestones[j])));
      const AutStateId dst = (j == k) ? acc : wait_state(j + 1);
      es.push_back({safe_guard(Formula::conj(std::move(terms))), false, dst});
    }
    const AutStateId stay = (src == acc) ? wait_state(1) : src;
    es.push_back({safe_guard(Formula::lnot(Formula::var(milestones[i - 1]))), false, stay});
  }
  if (has_safety)
    d.edges[static_cast<std::size_t>(rej)].push_back({Formula::constant(true), false, rej});
  return d;
}

}  // namespace vigil
