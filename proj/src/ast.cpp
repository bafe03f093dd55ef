#include "microfor/ast.hpp"

namespace microfor::ast {

const char* spelling(BinaryOp op) {
  switch (op) {
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Ge: return ">=";
    case BinaryOp::Eq: return "==";
    case BinaryOp::Ne: return "!=";
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
  }
  return "?";
}

bool Binary::operator==(const Binary&) const = default;
bool Assign::operator==(const Assign&) const = default;
bool Expr::operator==(const Expr&) const = default;
bool Block::operator==(const Block&) const = default;
bool ForLoop::operator==(const ForLoop&) const = default;
bool Stmt::operator==(const Stmt&) const = default;

Expr lit(BigInt value) { return Expr{IntLiteral{std::move(value)}}; }
Expr var(std::string name) { return Expr{Var{std::move(name)}}; }
Expr binary(BinaryOp op, Expr left, Expr right) {
  return Expr{Binary{op, std::move(left), std::move(right)}};
}
Expr assign(std::string target, Expr value) {
  return Expr{Assign{std::move(target), std::move(value)}};
}
Expr post_inc(std::string target) { return Expr{PostInc{std::move(target)}}; }
Expr pre_inc(std::string target) { return Expr{PreInc{std::move(target)}}; }

Stmt expr_stmt(Expr e) { return Stmt{ExprStmt{std::move(e)}}; }
Stmt block(std::vector<Stmt> stmts) { return Stmt{Block{std::move(stmts)}}; }
Stmt for_loop(std::optional<Expr> init, std::optional<Expr> cond, std::optional<Expr> update,
              Stmt body) {
  return Stmt{ForLoop{std::move(init), std::move(cond), std::move(update), std::move(body)}};
}
Stmt break_stmt() { return Stmt{Break{}}; }
Stmt continue_stmt() { return Stmt{Continue{}}; }
Stmt empty_stmt() { return Stmt{Empty{}}; }

}  // namespace microfor::ast
