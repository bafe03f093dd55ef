#include "microfor/parser.hpp"

#include <utility>

namespace microfor {
namespace {

using namespace ast;

class Parser {
 public:
  Parser(std::string_view source) : source_size_(source.size()), tokens_(tokenize(source)) {}

  Program program() {
    Program out;
    while (!at_end()) out.push_back(statement());
    return out;
  }

  Expr whole_expression() {
    Expr e = expression();
    if (!at_end()) fail("end of input");
    return e;
  }

 private:
  bool at_end() const { return pos_ >= tokens_.size(); }

  const Token* peek(std::size_t ahead = 0) const {
    return pos_ + ahead < tokens_.size() ? &tokens_[pos_ + ahead] : nullptr;
  }

  bool check(std::string_view text, std::size_t ahead = 0) const {
    const Token* t = peek(ahead);
    return t != nullptr && t->kind != TokenKind::Identifier &&
           t->kind != TokenKind::IntegerLiteral && t->text == text;
  }

  bool accept(std::string_view text) {
    if (!check(text)) return false;
    ++pos_;
    return true;
  }

  [[noreturn]] void fail(const std::string& expected) const {
    if (const Token* t = peek()) throw ParseError(t->span, expected, "'" + t->text + "'");
    throw ParseError({source_size_, source_size_}, expected, "end of input");
  }

  void expect(std::string_view text) {
    if (!accept(text)) fail("'" + std::string(text) + "'");
  }

  std::string identifier() {
    const Token* t = peek();
    if (t == nullptr || t->kind != TokenKind::Identifier) fail("identifier");
    ++pos_;
    return t->text;
  }

  Stmt statement() {
    if (accept(";")) return empty_stmt();
    if (check("{")) return block_statement();
    if (check("for")) return for_statement();
    if (check("break") || check("continue")) {
      const Token& keyword = *peek();
      if (loop_depth_ == 0) throw ParseError(keyword.span, "statement", "'" + keyword.text + "' outside a loop");
      ++pos_;
      expect(";");
      return keyword.text == "break" ? break_stmt() : continue_stmt();
    }
    Expr e = expression();
    expect(";");
    return expr_stmt(std::move(e));
  }

  Stmt block_statement() {
    expect("{");
    std::vector<Stmt> stmts;
    while (!check("}")) {
      if (at_end()) fail("'}'");
      stmts.push_back(statement());
    }
    expect("}");
    return block(std::move(stmts));
  }

  Stmt for_statement() {
    expect("for");
    expect("(");
    std::optional<Expr> init, cond, update;
    if (!check(";")) init = expression();
    expect(";");
    if (!check(";")) cond = expression();
    expect(";");
    if (!check(")")) update = expression();
    expect(")");
    ++loop_depth_;
    Stmt body = statement();
    --loop_depth_;
    return for_loop(std::move(init), std::move(cond), std::move(update), std::move(body));
  }

  Expr expression() { return assignment(); }

  Expr assignment() {
    const Token* t = peek();
    if (t != nullptr && t->kind == TokenKind::Identifier && check("=", 1)) {
      std::string target = t->text;
      pos_ += 2;
      return assign(std::move(target), assignment());
    }
    return equality();
  }

  Expr equality() {
    Expr left = relational();
    for (;;) {
      if (accept("==")) left = binary(BinaryOp::Eq, std::move(left), relational());
      else if (accept("!=")) left = binary(BinaryOp::Ne, std::move(left), relational());
      else return left;
    }
  }

  Expr relational() {
    Expr left = additive();
    for (;;) {
      if (accept("<")) left = binary(BinaryOp::Lt, std::move(left), additive());
      else if (accept("<=")) left = binary(BinaryOp::Le, std::move(left), additive());
      else if (accept(">")) left = binary(BinaryOp::Gt, std::move(left), additive());
      else if (accept(">=")) left = binary(BinaryOp::Ge, std::move(left), additive());
      else return left;
    }
  }

  Expr additive() {
    Expr left = increment();
    for (;;) {
      if (accept("+")) left = binary(BinaryOp::Add, std::move(left), increment());
      else if (accept("-")) left = binary(BinaryOp::Sub, std::move(left), increment());
      else return left;
    }
  }

  Expr increment() {
    if (accept("++")) return pre_inc(identifier());
    const Token* t = peek();
    if (t != nullptr && t->kind == TokenKind::Identifier && check("++", 1)) {
      std::string target = t->text;
      pos_ += 2;
      return post_inc(std::move(target));
    }
    return primary();
  }

  Expr primary() {
    const Token* t = peek();
    if (t == nullptr) fail("expression");
    if (t->kind == TokenKind::IntegerLiteral) {
      ++pos_;
      return lit(BigInt(t->text));
    }
    if (t->kind == TokenKind::Identifier) {
      ++pos_;
      return var(t->text);
    }
    if (accept("(")) {
      Expr inner = expression();
      expect(")");
      return inner;
    }
    fail("expression");
  }

  std::size_t source_size_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  int loop_depth_ = 0;
};

}  // namespace

ParseError::ParseError(Span span, std::string expected, std::string found)
    : std::runtime_error("expected " + expected + ", found " + found + " at offset " +
                         std::to_string(span.begin)),
      span_(span),
      expected_(std::move(expected)) {}

ast::Program parse_program(std::string_view source) { return Parser(source).program(); }

ast::Expr parse_expression(std::string_view source) { return Parser(source).whole_expression(); }

}  // namespace microfor
