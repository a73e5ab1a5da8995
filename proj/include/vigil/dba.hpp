#pragma once

// Deterministic Buchi automata over sets of atomic propositions, plus the
// compiler for the recurrence/safety specification fragment.

#include <string>
#include <vector>

#include "vigil/formula.hpp"
#include "vigil/ids.hpp"

namespace vigil {

// One guarded move. Guards are evaluated against a letter (the bitset of
// propositions holding at the arrived state). An else-edge matches exactly
// when no other edge of the same source does, and must be last.
struct DbaEdge {
  Formula guard;
  bool is_else = false;
  AutStateId target = kNone;
};

struct Dba {
  std::vector<std::string> ap;  // proposition universe; guard vars index it
  std::vector<std::string> state_names;
  std::vector<std::vector<DbaEdge>> edges;  // ordered per source state
  std::vector<std::uint8_t> accepting;
  AutStateId init = kNone;

  std::int32_t num_states() const { return static_cast<std::int32_t>(state_names.size()); }
};

using Letter = std::vector<std::uint8_t>;  // one flag per proposition

Letter make_letter(const std::vector<PropId>& props, std::size_t num_props);

// Unique matching edge's target. Throws std::logic_error when no edge
// matches (a completeness violation, i.e. a construction bug).
AutStateId dba_step(const Dba& d, AutStateId h, const Letter& letter);

// Acceptance of the ultimately periodic word prefix . cycle^w: run the
// prefix, then iterate the cycle until (state, cycle position) repeats and
// check whether the loop segment visits an accepting state.
bool accepts_lasso(const Dba& d, const std::vector<Letter>& prefix,
                   const std::vector<Letter>& cycle);

// Structural checks plus determinism/completeness. With <= 12 propositions
// every letter is enumerated; beyond that each state must end in an
// else-edge and pairwise exclusivity of explicit guards is trusted.
void validate_dba(const Dba& d);

// Specification fragment:
//   spec     := conjunct ('&' conjunct)*
//   conjunct := 'G' '!' prop | 'GF' prop | 'GF' 'seq(' prop (',' prop)* ')'
struct SpecPattern {
  std::vector<std::string> safety;                  // props that must never hold
  std::vector<std::vector<std::string>> recurrences;  // ordered milestone lists
};

SpecPattern parse_spec(const std::string& text);

// Round-robin milestone chain: wait states w1..wk, an accepting state
// entered exactly on completing the last milestone, and a rejecting sink iff
// safety conjuncts exist. Multiple letters may advance several milestones at
// once; the advance stops at a completed round so every completion is
// observable as a visit to the accepting state.
Dba compile_pattern(const SpecPattern& p, const std::vector<std::string>& ap);

}  // namespace vigil
