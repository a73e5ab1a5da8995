#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "vigil/errors.hpp"
#include "vigil/formula.hpp"

using namespace vigil;

namespace {

std::int32_t resolve_letter(const std::string& name) {
  if (name.size() == 1 && name[0] >= 'a' && name[0] <= 'z') return name[0] - 'a';
  throw parse_error("unknown identifier '" + name + "'", 0);
}

std::string letter_name(std::int32_t id) {
  return std::string(1, static_cast<char>('a' + id));
}

Formula parse(const std::string& text) { return parse_formula(text, resolve_letter); }

}  // namespace

TEST_CASE("formula construction and evaluation") {
  Formula f = Formula::lor(Formula::land(Formula::var(0), Formula::lnot(Formula::var(1))),
                           Formula::constant(false));
  CHECK(f.eval({1, 0}));
  CHECK_FALSE(f.eval({1, 1}));
  CHECK_FALSE(f.eval({0, 0}));
  CHECK(f.vars() == std::vector<std::int32_t>{0, 1});
}

TEST_CASE("n-ary folds use the operator units") {
  CHECK(Formula::conj({}).eval(std::vector<std::uint8_t>{}));
  CHECK_FALSE(Formula::disj({}).eval(std::vector<std::uint8_t>{}));
  Formula c = Formula::conj({Formula::var(0), Formula::var(1), Formula::var(2)});
  CHECK(c.eval({1, 1, 1}));
  CHECK_FALSE(c.eval({1, 0, 1}));
  Formula d = Formula::disj({Formula::var(0), Formula::var(1)});
  CHECK(d.eval({0, 1}));
  CHECK_FALSE(d.eval({0, 0}));
}

TEST_CASE("parser honors precedence and parentheses") {
  // ! binds tighter than &, & tighter than |.
  Formula f = parse("a & !b | c");
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int c = 0; c < 2; ++c) {
        const bool expect = (a && !b) || c;
        CHECK(f.eval({static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b),
                      static_cast<std::uint8_t>(c)}) == expect);
      }
    }
  }
  Formula g = parse("a & (b | c)");
  CHECK_FALSE(g.eval({1, 0, 0}));
  CHECK(g.eval({1, 0, 1}));
  CHECK(parse("true").eval(std::vector<std::uint8_t>{}));
  CHECK_FALSE(parse("false").eval(std::vector<std::uint8_t>{}));
  CHECK(parse("!!a").eval({1}));
}

TEST_CASE("rendering round-trips through the parser") {
  for (const std::string& text :
       {"a", "!a", "a & b", "a | b & c", "(a | b) & c", "!(a & b)", "a & !b | !(c | a)"}) {
    Formula f = parse(text);
    const std::string printed = f.to_string(letter_name);
    Formula g = parse(printed);
    CHECK(g.to_string(letter_name) == printed);
    for (int bits = 0; bits < 8; ++bits) {
      const std::vector<std::uint8_t> v = {static_cast<std::uint8_t>(bits & 1),
                                           static_cast<std::uint8_t>((bits >> 1) & 1),
                                           static_cast<std::uint8_t>((bits >> 2) & 1)};
      CHECK(f.eval(v) == g.eval(v));
    }
  }
}

TEST_CASE("parser rejects malformed input") {
  CHECK_THROWS_AS(parse("a &"), parse_error);
  CHECK_THROWS_AS(parse("(a"), parse_error);
  CHECK_THROWS_AS(parse("a b"), parse_error);
  CHECK_THROWS_AS(parse(""), parse_error);
  CHECK_THROWS_AS(parse("| a"), parse_error);
  CHECK_THROWS_AS(parse("Zz"), parse_error);  // rejected by the resolver
}
