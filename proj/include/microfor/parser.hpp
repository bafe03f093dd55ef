#pragma once

#include "microfor/ast.hpp"
#include "microfor/lexer.hpp"

#include <stdexcept>
#include <string>
#include <string_view>

namespace microfor {

class ParseError : public std::runtime_error {
 public:
  ParseError(Span span, std::string expected, std::string found);

  Span span() const { return span_; }
  const std::string& expected() const { return expected_; }

 private:
  Span span_;
  std::string expected_;
};

/// Parses a sequence of statements. Precedence, lowest first: assignment
/// (right-associative), equality, relational, additive, then ++ and
/// primaries. `break`/`continue` outside a loop body are parse errors.
/// A stray `;` (e.g. after a loop's closing brace) is an Empty statement.
ast::Program parse_program(std::string_view source);

/// Parses a single expression; the whole input must be consumed.
ast::Expr parse_expression(std::string_view source);

}  // namespace microfor
