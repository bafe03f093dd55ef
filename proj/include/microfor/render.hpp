#pragma once

#include "microfor/ast.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace microfor {

// Canonical single-line rendering. Parentheses are emitted only where the
// grammar needs them, so parse_program(render(p)) == p.
std::string render(const ast::Program& program);
std::string render_stmt(const ast::Stmt& stmt);
std::string render_expr(const ast::Expr& expr);
std::string render_loop(const ast::ForLoop& loop);

// AST as JSON: every node is {"kind": ..., ...children}. Integer literals
// are emitted as decimal strings to keep arbitrary precision.
nlohmann::json to_json(const ast::Expr& expr);
nlohmann::json to_json(const ast::Stmt& stmt);
nlohmann::json to_json(const ast::Program& program);

}  // namespace microfor
