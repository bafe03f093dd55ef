#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace microfor {

/// Half-open byte range [begin, end) into the source text.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;
  bool operator==(const Span&) const = default;
};

enum class TokenKind { Identifier, IntegerLiteral, Punctuation, Keyword };

struct Token {
  TokenKind kind;
  std::string text;
  Span span;
  bool operator==(const Token&) const = default;
};

class LexError : public std::runtime_error {
 public:
  LexError(std::size_t position, char offending);

  std::size_t position() const { return position_; }
  char offending() const { return offending_; }

 private:
  std::size_t position_;
  char offending_;
};

/// Splits source into tokens. Whitespace, `//` and `/* */` comments are
/// skipped. Keywords are `for`, `break` and `continue`. Punctuation uses
/// maximal munch, so `i+++n` lexes as `i`, `++`, `+`, `n`.
std::vector<Token> tokenize(std::string_view source);

}  // namespace microfor
