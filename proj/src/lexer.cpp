#include "microfor/lexer.hpp"

#include <array>
#include <cctype>

namespace microfor {
namespace {

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

bool is_keyword(std::string_view word) {
  return word == "for" || word == "break" || word == "continue";
}

// Longest first.
constexpr std::array<std::string_view, 15> kPunctuation = {
    "++", "==", "!=", "<=", ">=", "(", ")", "{", "}", ";", "=", "<", ">", "+", "-"};

std::string describe(char c) {
  std::string out = "unexpected character '";
  out += c;
  out += "'";
  return out;
}

}  // namespace

LexError::LexError(std::size_t position, char offending)
    : std::runtime_error(describe(offending) + " at offset " + std::to_string(position)),
      position_(position),
      offending_(offending) {}

std::vector<Token> tokenize(std::string_view source) {
  std::vector<Token> tokens;
  std::size_t pos = 0;
  const std::size_t size = source.size();

  while (pos < size) {
    const char c = source[pos];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++pos;
      continue;
    }
    if (source.substr(pos, 2) == "//") {
      while (pos < size && source[pos] != '\n') ++pos;
      continue;
    }
    if (source.substr(pos, 2) == "/*") {
      const auto close = source.find("*/", pos + 2);
      if (close == std::string_view::npos) throw LexError(pos, '/');
      pos = close + 2;
      continue;
    }

    const std::size_t start = pos;
    if (is_ident_start(c)) {
      while (pos < size && is_ident_char(source[pos])) ++pos;
      std::string text(source.substr(start, pos - start));
      const auto kind = is_keyword(text) ? TokenKind::Keyword : TokenKind::Identifier;
      tokens.push_back({kind, std::move(text), {start, pos}});
      continue;
    }
    if (is_digit(c)) {
      while (pos < size && is_digit(source[pos])) ++pos;
      if (pos < size && is_ident_char(source[pos])) throw LexError(pos, source[pos]);
      tokens.push_back(
          {TokenKind::IntegerLiteral, std::string(source.substr(start, pos - start)), {start, pos}});
      continue;
    }

    bool matched = false;
    for (const auto punct : kPunctuation) {
      if (source.substr(pos, punct.size()) == punct) {
        pos += punct.size();
        tokens.push_back({TokenKind::Punctuation, std::string(punct), {start, pos}});
        matched = true;
        break;
      }
    }
    if (!matched) throw LexError(pos, c);
  }
  return tokens;
}

}  // namespace microfor
