#include "vigil/formula.hpp"

#include <cctype>

#include "vigil/errors.hpp"

namespace vigil {

std::int32_t Formula::add(Node n) {
  nodes_.push_back(n);
  return static_cast<std::int32_t>(nodes_.size()) - 1;
}

std::int32_t Formula::splice(const Formula& other) {
  const auto offset = static_cast<std::int32_t>(nodes_.size());
  for (Node n : other.nodes_) {
    if (n.op == Op::lnot || n.op == Op::land || n.op == Op::lor) n.a += offset;
    if (n.op == Op::land || n.op == Op::lor) n.b += offset;
    nodes_.push_back(n);
  }
  return other.root_ + offset;
}

Formula Formula::constant(bool v) {
  Formula f;
  f.root_ = f.add({Op::constant, v ? 1 : 0, kNone});
  return f;
}

Formula Formula::var(std::int32_t id) {
  Formula f;
  f.root_ = f.add({Op::var, id, kNone});
  return f;
}

Formula Formula::lnot(Formula f) {
  Formula out;
  const auto child = out.splice(f);
  out.root_ = out.add({Op::lnot, child, kNone});
  return out;
}

Formula Formula::land(Formula l, Formula r) {
  Formula out;
  const auto a = out.splice(l);
  const auto b = out.splice(r);
  out.root_ = out.add({Op::land, a, b});
  return out;
}

Formula Formula::lor(Formula l, Formula r) {
  Formula out;
  const auto a = out.splice(l);
  const auto b = out.splice(r);
  out.root_ = out.add({Op::lor, a, b});
  return out;
}

Formula Formula::conj(std::vector<Formula> fs) {
  if (fs.empty()) return constant(true);
  Formula acc = std::move(fs.front());
  for (std::size_t i = 1; i < fs.size(); ++i) acc = land(std::move(acc), std::move(fs[i]));
  return acc;
}

Formula Formula::disj(std::vector<Formula> fs) {
  if (fs.empty()) return constant(false);
  Formula acc = std::move(fs.front());
  for (std::size_t i = 1; i < fs.size(); ++i) acc = lor(std::move(acc), std::move(fs[i]));
  return acc;
}

bool Formula::eval(const std::function<bool(std::int32_t)>& value_of) const {
  if (empty()) throw std::logic_error("eval of empty formula");
  // Iterative post-order over the DAG-free tree; node count is tiny.
  std::vector<std::int8_t> memo(nodes_.size(), -1);
  const std::function<bool(std::int32_t)> go = [&](std::int32_t i) -> bool {
    if (memo[i] >= 0) return memo[i] != 0;
    const Node& n = nodes_[i];
    bool v = false;
    switch (n.op) {
      case Op::constant: v = n.a != 0; break;
      case Op::var: v = value_of(n.a); break;
      case Op::lnot: v = !go(n.a); break;
      case Op::land: v = go(n.a) && go(n.b); break;
      case Op::lor: v = go(n.a) || go(n.b); break;
    }
    memo[i] = v ? 1 : 0;
    return v;
  };
  return go(root_);
}

bool Formula::eval(const std::vector<std::uint8_t>& values) const {
  return eval([&](std::int32_t id) {
    if (id < 0 || static_cast<std::size_t>(id) >= values.size())
      throw std::logic_error("formula variable out of range");
    return values[id] != 0;
  });
}

std::vector<std::int32_t> Formula::vars() const {
  std::vector<std::int32_t> out;
  for (const Node& n : nodes_)
    if (n.op == Op::var) out.push_back(n.a);
  sort_unique(out);
  return out;
}

std::string Formula::to_string(const std::function<std::string(std::int32_t)>& name_of) const {
  if (empty()) return "";
  // Precedence: ! > & > |. Parenthesize a child only when it binds looser.
  const auto prec = [](Op op) {
    switch (op) {
      case Op::lor: return 1;
      case Op::land: return 2;
      default: return 3;
    }
  };
  const std::function<std::string(std::int32_t, int)> go = [&](std::int32_t i, int outer) {
    const Node& n = nodes_[i];
    std::string s;
    switch (n.op) {
      case Op::constant: s = n.a ? "true" : "false"; break;
      case Op::var: s = name_of(n.a); break;
      case Op::lnot: s = "!" + go(n.a, prec(Op::lnot)); break;
      case Op::land: s = go(n.a, prec(Op::land) - 1) + " & " + go(n.b, prec(Op::land)); break;
      case Op::lor: s = go(n.a, prec(Op::lor) - 1) + " | " + go(n.b, prec(Op::lor)); break;
    }
    // Left-assoc: the left child may share the operator's level, so the
    // caller passes prec-1 for it and prec for the right child.
    if (prec(n.op) <= outer && (n.op == Op::land || n.op == Op::lor)) s = "(" + s + ")";
    return s;
  };
  return go(root_, 0);
}

namespace {

struct FormulaLexer {
  const std::string& text;
  std::size_t pos = 0;
  int line;
  int col_base;

  [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
    throw parse_error(msg, line, col_base + static_cast<int>(at) + 1);
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
    if (pos == start) fail("expected identifier", start);
    return text.substr(start, pos - start);
  }
};

struct FormulaParser {
  FormulaLexer lex;
  const std::function<std::int32_t(const std::string&)>& resolve;

  Formula parse_or() {
    Formula f = parse_and();
    while (lex.eat('|')) f = Formula::lor(std::move(f), parse_and());
    return f;
  }

  Formula parse_and() {
    Formula f = parse_unary();
    while (lex.eat('&')) f = Formula::land(std::move(f), parse_unary());
    return f;
  }

  Formula parse_unary() {
    if (lex.eat('!')) return Formula::lnot(parse_unary());
    if (lex.eat('(')) {
      Formula f = parse_or();
      if (!lex.eat(')')) lex.fail("expected ')'", lex.pos);
      return f;
    }
    const std::size_t at = lex.pos;
    const std::string name = lex.ident();
    if (name == "true") return Formula::constant(true);
    if (name == "false") return Formula::constant(false);
    try {
      return Formula::var(resolve(name));
    } catch (const std::exception& e) {
      lex.fail(e.what(), at);
    }
  }
};

}  // namespace

Formula parse_formula(const std::string& text,
                      const std::function<std::int32_t(const std::string&)>& resolve,
                      int line, int col_base) {
  FormulaParser p{FormulaLexer{text, 0, line, col_base}, resolve};
  Formula f = p.parse_or();
  if (!p.lex.done()) p.lex.fail("trailing input after formula", p.lex.pos);
  return f;
}

}  // namespace vigil
