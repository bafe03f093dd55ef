#include "microfor/lexer.hpp"
#include "microfor/parser.hpp"
#include "microfor/render.hpp"

#include "support/ast_gen.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace microfor;
using namespace microfor::ast;

namespace {

std::string fixture(const std::string& name) {
  std::ifstream in(std::string(MICROFOR_FIXTURES) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> texts(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  for (const auto& t : tokens) out.push_back(t.text);
  return out;
}

}  // namespace

TEST_SUITE("lexer") {
  TEST_CASE("condition with post-increment") {
    const auto tokens = tokenize("i++<n");
    REQUIRE(tokens.size() == 4);
    CHECK(tokens[0].kind == TokenKind::Identifier);
    CHECK(tokens[0].text == "i");
    CHECK(tokens[1].text == "++");
    CHECK(tokens[1].kind == TokenKind::Punctuation);
    CHECK(tokens[2].text == "<");
    CHECK(tokens[3].kind == TokenKind::Identifier);
    CHECK(tokens[3].text == "n");
  }

  TEST_CASE("empty input") { CHECK(tokenize("").empty()); }

  TEST_CASE("unknown character is an error") {
    try {
      tokenize("i @ n");
      FAIL("expected LexError");
    } catch (const LexError& e) {
      CHECK(e.position() == 2);
      CHECK(e.offending() == '@');
    }
    CHECK_THROWS_AS(tokenize("i ! n"), LexError);
    CHECK_THROWS_AS(tokenize("/* open"), LexError);
    CHECK_THROWS_AS(tokenize("12abc"), LexError);
  }

  TEST_CASE("maximal munch and keywords") {
    CHECK(texts(tokenize("i+++n")) == std::vector<std::string>{"i", "++", "+", "n"});
    CHECK(texts(tokenize("a<=b!=c==d>=e")) ==
          std::vector<std::string>{"a", "<=", "b", "!=", "c", "==", "d", ">=", "e"});
    const auto tokens = tokenize("for break continue forx");
    CHECK(tokens[0].kind == TokenKind::Keyword);
    CHECK(tokens[1].kind == TokenKind::Keyword);
    CHECK(tokens[2].kind == TokenKind::Keyword);
    CHECK(tokens[3].kind == TokenKind::Identifier);
  }

  TEST_CASE("spans slice the source and increase") {
    const std::string source = fixture("traditional_loop.c") + fixture("micro_loop.c") +
                               "/* block */ s = s + (i - 1); // tail";
    const auto tokens = tokenize(source);
    std::size_t previous_end = 0;
    for (const auto& t : tokens) {
      CHECK(t.span.begin >= previous_end);
      CHECK(t.span.end > t.span.begin);
      CHECK(source.substr(t.span.begin, t.span.end - t.span.begin) == t.text);
      previous_end = t.span.end;
    }
    // Everything between tokens is whitespace or comment.
    std::string rebuilt;
    std::size_t pos = 0;
    for (const auto& t : tokens) {
      const auto gap = source.substr(pos, t.span.begin - pos);
      CHECK(tokenize(gap).empty());
      rebuilt += gap + t.text;
      pos = t.span.end;
    }
    rebuilt += source.substr(pos);
    CHECK(rebuilt == source);
  }
}

TEST_SUITE("parser") {
  TEST_CASE("traditional loop as printed") {
    const auto program = parse_program("for( i=0; i<n; i++){ };");
    REQUIRE(program.size() == 2);
    const Stmt expected = for_loop(assign("i", lit(0)), binary(BinaryOp::Lt, var("i"), var("n")),
                                   post_inc("i"), block());
    CHECK(program[0] == expected);
    CHECK(program[1] == empty_stmt());
  }

  TEST_CASE("micro loop as printed") {
    const auto program = parse_program("for( i=0; i++<n;){ };");
    REQUIRE(program.size() == 2);
    const Stmt expected = for_loop(assign("i", lit(0)), binary(BinaryOp::Lt, post_inc("i"), var("n")),
                                   std::nullopt, block());
    CHECK(program[0] == expected);
  }

  TEST_CASE("verbatim code blocks with comments") {
    CHECK_NOTHROW(parse_program(fixture("traditional_loop.c")));
    CHECK_NOTHROW(parse_program(fixture("micro_loop.c")));
    const auto a = parse_program(fixture("traditional_loop.c"));
    CHECK(a == parse_program("for( i=0; i<n; i++){ };"));
  }

  TEST_CASE("fully empty header") {
    const auto program = parse_program("for(;;){}");
    REQUIRE(program.size() == 1);
    const auto& loop = std::get<ForLoop>(program[0].node);
    CHECK_FALSE(loop.init);
    CHECK_FALSE(loop.cond);
    CHECK_FALSE(loop.update);
    CHECK(*loop.body == block());
  }

  TEST_CASE("precedence and associativity") {
    CHECK(parse_expression("a - b - c") ==
          binary(BinaryOp::Sub, binary(BinaryOp::Sub, var("a"), var("b")), var("c")));
    CHECK(parse_expression("a = b = 1") == assign("a", assign("b", lit(1))));
    CHECK(parse_expression("i++ < n + 1") ==
          binary(BinaryOp::Lt, post_inc("i"), binary(BinaryOp::Add, var("n"), lit(1))));
    CHECK(parse_expression("a == b < c") ==
          binary(BinaryOp::Eq, var("a"), binary(BinaryOp::Lt, var("b"), var("c"))));
    CHECK(parse_expression("s + (i - 1)") ==
          binary(BinaryOp::Add, var("s"), binary(BinaryOp::Sub, var("i"), lit(1))));
    CHECK(parse_expression("123456789012345678901234567890") ==
          lit(BigInt("123456789012345678901234567890")));
  }

  TEST_CASE("errors carry spans inside the source") {
    const std::vector<std::string> bad = {"for (i = 0; i < n; i++", "i = ;", "(a) = 1;",
                                          "for (i = 0 i < n;) {}", "{ s = 1;", "++1;",
                                          "break;", "{ continue; }", "i = 1"};
    for (const auto& source : bad) {
      CAPTURE(source);
      try {
        parse_program(source);
        FAIL("expected ParseError");
      } catch (const ParseError& e) {
        CHECK(e.span().begin <= source.size());
        CHECK(e.span().end <= source.size());
        CHECK_FALSE(e.expected().empty());
      }
    }
  }

  TEST_CASE("break and continue are fine inside loop bodies") {
    CHECK_NOTHROW(parse_program("for (;;) { break; }"));
    CHECK_NOTHROW(parse_program("for (;;) { for (;;) continue; break; }"));
  }
}

TEST_SUITE("render") {
  TEST_CASE("canonical loops") {
    const Program traditional{for_loop(assign("i", lit(0)), binary(BinaryOp::Lt, var("i"), var("n")),
                                       post_inc("i"), block())};
    CHECK(render(traditional) == "for (i = 0; i < n; i++) { }");
    const Program micro{for_loop(assign("i", lit(0)), binary(BinaryOp::Lt, post_inc("i"), var("n")),
                                 std::nullopt, block())};
    CHECK(render(micro) == "for (i = 0; i++ < n;) { }");
    CHECK(render(parse_program("for(;;){}")) == "for (;;) { }");
    CHECK(render(parse_program("for(;x;) ;")) == "for (; x;) ;");
  }

  TEST_CASE("minimal parentheses") {
    CHECK(render_expr(parse_expression("s + (i - 1)")) == "s + (i - 1)");
    CHECK(render_expr(parse_expression("(s + i) - 1")) == "s + i - 1");
    CHECK(render_expr(parse_expression("(a = 1) + b")) == "(a = 1) + b");
    CHECK(render_expr(parse_expression("a + ++b")) == "a + ++b");
    CHECK(render_stmt(parse_program("{ s = s + (i - 1); t = 2; }")[0]) == "{ s = s + (i - 1); t = 2; }");
  }

  TEST_CASE("round trip over generated programs") {
    testing::AstGenerator gen(20240501);
    for (int k = 0; k < 1000; ++k) {
      const Program p = gen.program();
      const std::string text = render(p);
      CAPTURE(text);
      const Program reparsed = parse_program(text);
      REQUIRE(reparsed == p);
      CHECK(render(reparsed) == text);
    }
  }

  TEST_CASE("ast json shape") {
    const auto j = to_json(parse_program("for (i = 0; i++ < n;) { }"));
    REQUIRE(j.is_array());
    CHECK(j[0]["kind"] == "For");
    CHECK(j[0]["init"]["kind"] == "Assign");
    CHECK(j[0]["cond"]["left"]["kind"] == "PostInc");
    CHECK(j[0]["update"].is_null());
    CHECK(j[0]["body"]["kind"] == "Block");
  }
}
