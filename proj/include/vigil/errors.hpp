#pragma once

#include <stdexcept>
#include <string>

namespace vigil {

// Malformed input text. line/col are 1-based; col 0 means "whole line".
class parse_error : public std::runtime_error {
public:
  parse_error(std::string msg, int line, int col = 0)
      : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                           std::to_string(col) + ": " + std::move(msg)),
        line_(line), col_(col) {}

  int line() const { return line_; }
  int col() const { return col_; }

private:
  int line_;
  int col_;
};

// Well-formed input that violates a semantic rule (nondeterminism, owner
// mismatch, dead ends, undeclared names, ...).
class model_error : public std::runtime_error {
public:
  explicit model_error(const std::string& msg)
      : std::runtime_error("model error: " + msg) {}
};

// Runtime failures of an execution (scripted action unavailable, sensing
// budget exhausted, unrealizable start, ...).
class run_error : public std::runtime_error {
public:
  explicit run_error(const std::string& msg)
      : std::runtime_error("run error: " + msg) {}
};

// A belief update produced the empty set: the tracked hypotheses cannot
// explain the observation. Always a model/tracking bug, never recoverable.
class contradiction_error : public std::runtime_error {
public:
  explicit contradiction_error(const std::string& msg)
      : std::runtime_error("belief contradiction: " + msg) {}
};

}  // namespace vigil
