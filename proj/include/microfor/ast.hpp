#pragma once

// Syntax tree for the loop language: integer variables, comparisons,
// + and -, assignment, pre/post increment, blocks and for-loops.
//
// Nodes are plain values. Recursive children live in Box<T>, which owns a
// heap copy and deep-copies on copy, so `operator==` is structural equality.

#include <boost/multiprecision/cpp_int.hpp>

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace microfor {

using BigInt = boost::multiprecision::cpp_int;

template <class T>
class Box {
 public:
  Box(T value) : ptr_(std::make_unique<T>(std::move(value))) {}
  Box(const Box& other) : ptr_(std::make_unique<T>(*other)) {}
  Box(Box&&) noexcept = default;
  Box& operator=(const Box& other) {
    if (this != &other) ptr_ = std::make_unique<T>(*other);
    return *this;
  }
  Box& operator=(Box&&) noexcept = default;
  ~Box() = default;

  T& operator*() { return *ptr_; }
  const T& operator*() const { return *ptr_; }
  T* operator->() { return ptr_.get(); }
  const T* operator->() const { return ptr_.get(); }

  friend bool operator==(const Box& a, const Box& b) { return *a == *b; }

 private:
  std::unique_ptr<T> ptr_;
};

namespace ast {

struct Expr;
struct Stmt;

enum class BinaryOp { Lt, Le, Gt, Ge, Eq, Ne, Add, Sub };

const char* spelling(BinaryOp op);

struct IntLiteral {
  BigInt value;
  bool operator==(const IntLiteral&) const = default;
};

struct Var {
  std::string name;
  bool operator==(const Var&) const = default;
};

struct Binary {
  BinaryOp op;
  Box<Expr> left;
  Box<Expr> right;
  bool operator==(const Binary&) const;
};

struct Assign {
  std::string target;
  Box<Expr> value;
  bool operator==(const Assign&) const;
};

struct PostInc {
  std::string target;
  bool operator==(const PostInc&) const = default;
};

struct PreInc {
  std::string target;
  bool operator==(const PreInc&) const = default;
};

struct Expr {
  std::variant<IntLiteral, Var, Binary, Assign, PostInc, PreInc> node;
  bool operator==(const Expr&) const;
};

struct ExprStmt {
  Expr expr;
  bool operator==(const ExprStmt&) const = default;
};

struct Block {
  std::vector<Stmt> stmts;
  bool operator==(const Block&) const;
};

/// Any header slot may be absent; a missing condition means "always true".
struct ForLoop {
  std::optional<Expr> init;
  std::optional<Expr> cond;
  std::optional<Expr> update;
  Box<Stmt> body;
  bool operator==(const ForLoop&) const;
};

struct Break {
  bool operator==(const Break&) const = default;
};
struct Continue {
  bool operator==(const Continue&) const = default;
};
struct Empty {
  bool operator==(const Empty&) const = default;
};

struct Stmt {
  std::variant<ExprStmt, Block, ForLoop, Break, Continue, Empty> node;
  bool operator==(const Stmt&) const;
};

using Program = std::vector<Stmt>;

// Construction helpers, mostly for tests and rewrites.
Expr lit(BigInt value);
Expr var(std::string name);
Expr binary(BinaryOp op, Expr left, Expr right);
Expr assign(std::string target, Expr value);
Expr post_inc(std::string target);
Expr pre_inc(std::string target);

Stmt expr_stmt(Expr e);
Stmt block(std::vector<Stmt> stmts = {});
Stmt for_loop(std::optional<Expr> init, std::optional<Expr> cond,
              std::optional<Expr> update, Stmt body);
Stmt break_stmt();
Stmt continue_stmt();
Stmt empty_stmt();

}  // namespace ast
}  // namespace microfor
