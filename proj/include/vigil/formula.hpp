#pragma once

// Propositional formulas over an integer variable space. The same type backs
// automaton guards (variables = proposition ids) and sensed formulas
// (variables = predicate ids); the interpretation is the caller's.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "vigil/ids.hpp"

namespace vigil {

class Formula {
public:
  enum class Op : std::uint8_t { constant, var, lnot, land, lor };

  struct Node {
    Op op;
    std::int32_t a = kNone;  // var id, constant value, or left child
    std::int32_t b = kNone;  // right child
  };

  Formula() = default;

  bool empty() const { return root_ == kNone; }
  const std::vector<Node>& nodes() const { return nodes_; }
  std::int32_t root() const { return root_; }

  static Formula constant(bool v);
  static Formula var(std::int32_t id);
  static Formula lnot(Formula f);
  static Formula land(Formula l, Formula r);
  static Formula lor(Formula l, Formula r);

  // n-ary convenience folds; empty input yields the operator's unit.
  static Formula conj(std::vector<Formula> fs);
  static Formula disj(std::vector<Formula> fs);

  bool eval(const std::function<bool(std::int32_t)>& value_of) const;
  bool eval(const std::vector<std::uint8_t>& values) const;

  // Variable ids referenced, sorted and unique.
  std::vector<std::int32_t> vars() const;

  // Minimal-parenthesis rendering; reparses to an equal tree.
  std::string to_string(const std::function<std::string(std::int32_t)>& name_of) const;

private:
  std::int32_t add(Node n);
  std::int32_t splice(const Formula& other);  // append other's nodes, return new root

  std::vector<Node> nodes_;
  std::int32_t root_ = kNone;
};

// Grammar: or := and ('|' and)*; and := unary ('&' unary)*;
// unary := '!' unary | '(' or ')' | 'true' | 'false' | ident.
// resolve maps an identifier to a variable id; it throws to reject names.
// line is used for error reporting only; col_base offsets reported columns.
Formula parse_formula(const std::string& text,
                      const std::function<std::int32_t(const std::string&)>& resolve,
                      int line = 0, int col_base = 0);

}  // namespace vigil
