#include "microfor/render.hpp"

#include <type_traits>

namespace microfor {
namespace {

using namespace ast;

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

enum Prec : int { kAssign = 1, kEquality, kRelational, kAdditive, kIncrement, kPrimary };

int precedence(BinaryOp op) {
  switch (op) {
    case BinaryOp::Eq:
    case BinaryOp::Ne: return kEquality;
    case BinaryOp::Lt:
    case BinaryOp::Le:
    case BinaryOp::Gt:
    case BinaryOp::Ge: return kRelational;
    case BinaryOp::Add:
    case BinaryOp::Sub: return kAdditive;
  }
  return kPrimary;
}

int precedence(const Expr& e) {
  return std::visit(Overloaded{
                        [](const IntLiteral&) { return int{kPrimary}; },
                        [](const Var&) { return int{kPrimary}; },
                        [](const Binary& b) { return precedence(b.op); },
                        [](const Assign&) { return int{kAssign}; },
                        [](const PostInc&) { return int{kIncrement}; },
                        [](const PreInc&) { return int{kIncrement}; },
                    },
                    e.node);
}

std::string expr_at(const Expr& e, int min_prec) {
  std::string text = std::visit(
      Overloaded{
          [](const IntLiteral& l) { return l.value.str(); },
          [](const Var& v) { return v.name; },
          [](const Binary& b) {
            const int p = precedence(b.op);
            return expr_at(*b.left, p) + " " + spelling(b.op) + " " + expr_at(*b.right, p + 1);
          },
          [](const Assign& a) { return a.target + " = " + expr_at(*a.value, kAssign); },
          [](const PostInc& p) { return p.target + "++"; },
          [](const PreInc& p) { return "++" + p.target; },
      },
      e.node);
  if (precedence(e) < min_prec) return "(" + text + ")";
  return text;
}

}  // namespace

std::string render_expr(const ast::Expr& expr) { return expr_at(expr, kAssign); }

std::string render_loop(const ast::ForLoop& loop) {
  std::string out = "for (";
  if (loop.init) out += render_expr(*loop.init);
  out += ";";
  if (loop.cond) out += " " + render_expr(*loop.cond);
  out += ";";
  if (loop.update) out += " " + render_expr(*loop.update);
  out += ") ";
  out += render_stmt(*loop.body);
  return out;
}

std::string render_stmt(const ast::Stmt& stmt) {
  return std::visit(Overloaded{
                        [](const ExprStmt& s) { return render_expr(s.expr) + ";"; },
                        [](const Block& b) {
                          if (b.stmts.empty()) return std::string("{ }");
                          std::string out = "{";
                          for (const auto& s : b.stmts) out += " " + render_stmt(s);
                          return out + " }";
                        },
                        [](const ForLoop& f) { return render_loop(f); },
                        [](const Break&) { return std::string("break;"); },
                        [](const Continue&) { return std::string("continue;"); },
                        [](const Empty&) { return std::string(";"); },
                    },
                    stmt.node);
}

std::string render(const ast::Program& program) {
  std::string out;
  for (std::size_t i = 0; i < program.size(); ++i) {
    if (i != 0) out += "\n";
    out += render_stmt(program[i]);
  }
  return out;
}

nlohmann::json to_json(const ast::Expr& expr) {
  using nlohmann::json;
  return std::visit(
      Overloaded{
          [](const IntLiteral& l) { return json{{"kind", "IntLiteral"}, {"value", l.value.str()}}; },
          [](const Var& v) { return json{{"kind", "Var"}, {"name", v.name}}; },
          [](const Binary& b) {
            return json{{"kind", "Binary"},
                        {"op", spelling(b.op)},
                        {"left", to_json(*b.left)},
                        {"right", to_json(*b.right)}};
          },
          [](const Assign& a) {
            return json{{"kind", "Assign"}, {"target", a.target}, {"value", to_json(*a.value)}};
          },
          [](const PostInc& p) { return json{{"kind", "PostInc"}, {"target", p.target}}; },
          [](const PreInc& p) { return json{{"kind", "PreInc"}, {"target", p.target}}; },
      },
      expr.node);
}

nlohmann::json to_json(const ast::Stmt& stmt) {
  using nlohmann::json;
  auto slot = [](const std::optional<Expr>& e) { return e ? to_json(*e) : json(nullptr); };
  return std::visit(Overloaded{
                        [](const ExprStmt& s) { return json{{"kind", "ExprStmt"}, {"expr", to_json(s.expr)}}; },
                        [](const Block& b) {
                          json body = json::array();
                          for (const auto& s : b.stmts) body.push_back(to_json(s));
                          return json{{"kind", "Block"}, {"stmts", body}};
                        },
                        [&](const ForLoop& f) {
                          return json{{"kind", "For"},
                                      {"init", slot(f.init)},
                                      {"cond", slot(f.cond)},
                                      {"update", slot(f.update)},
                                      {"body", to_json(*f.body)}};
                        },
                        [](const Break&) { return json{{"kind", "Break"}}; },
                        [](const Continue&) { return json{{"kind", "Continue"}}; },
                        [](const Empty&) { return json{{"kind", "Empty"}}; },
                    },
                    stmt.node);
}

nlohmann::json to_json(const ast::Program& program) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& s : program) out.push_back(to_json(s));
  return out;
}

}  // namespace microfor
