#include "microfor/semantics.hpp"

#include <limits>

namespace microfor {
namespace {

using namespace ast;

enum class Flow { Normal, Break, Continue };

class Machine {
 public:
  Machine(Env env, std::uint64_t fuel) : env_(std::move(env)), fuel_(fuel), remaining_(fuel) {}

  Env& env() { return env_; }

  BigInt eval(const Expr& e) {
    if (const auto* l = std::get_if<IntLiteral>(&e.node)) return l->value;
    if (const auto* v = std::get_if<Var>(&e.node)) return lookup(v->name);
    if (const auto* b = std::get_if<Binary>(&e.node)) {
      BigInt left = eval(*b->left);
      BigInt right = eval(*b->right);
      switch (b->op) {
        case BinaryOp::Lt: return left < right ? 1 : 0;
        case BinaryOp::Le: return left <= right ? 1 : 0;
        case BinaryOp::Gt: return left > right ? 1 : 0;
        case BinaryOp::Ge: return left >= right ? 1 : 0;
        case BinaryOp::Eq: return left == right ? 1 : 0;
        case BinaryOp::Ne: return left != right ? 1 : 0;
        case BinaryOp::Add: return left + right;
        case BinaryOp::Sub: return left - right;
      }
    }
    if (const auto* a = std::get_if<Assign>(&e.node)) {
      BigInt value = eval(*a->value);
      env_[a->target] = value;
      return value;
    }
    if (const auto* p = std::get_if<PostInc>(&e.node)) {
      BigInt old = lookup(p->target);
      env_[p->target] = old + 1;
      return old;
    }
    const auto& pre = std::get<PreInc>(e.node);
    BigInt updated = lookup(pre.target) + 1;
    env_[pre.target] = updated;
    return updated;
  }

  Flow exec(const Stmt& s) {
    if (const auto* e = std::get_if<ExprStmt>(&s.node)) {
      eval(e->expr);
      return Flow::Normal;
    }
    if (const auto* b = std::get_if<Block>(&s.node)) {
      for (const auto& inner : b->stmts) {
        const Flow flow = exec(inner);
        if (flow != Flow::Normal) return flow;
      }
      return Flow::Normal;
    }
    if (const auto* f = std::get_if<ForLoop>(&s.node)) {
      loop(*f, nullptr, {});
      return Flow::Normal;
    }
    if (std::holds_alternative<Break>(s.node)) return Flow::Break;
    if (std::holds_alternative<Continue>(s.node)) return Flow::Continue;
    return Flow::Normal;
  }

  // Records into `trace` when non-null.
  void loop(const ForLoop& f, Trace* trace, const std::string& induction) {
    if (f.init) eval(*f.init);
    for (;;) {
      if (f.cond && eval(*f.cond) == 0) break;
      if (remaining_ == 0) throw FuelExhausted(fuel_);
      --remaining_;
      if (trace != nullptr) {
        trace->visible.push_back(lookup(induction));
        ++trace->iterations;
      }
      if (exec(*f.body) == Flow::Break) break;
      if (f.update) eval(*f.update);
    }
    if (trace != nullptr) trace->final = lookup(induction);
  }

 private:
  const BigInt& lookup(const std::string& name) const {
    const auto it = env_.find(name);
    if (it == env_.end()) throw UnboundVariable(name);
    return it->second;
  }

  Env env_;
  std::uint64_t fuel_;
  std::uint64_t remaining_;
};

}  // namespace

UnboundVariable::UnboundVariable(std::string name)
    : std::runtime_error("unbound variable '" + name + "'"), name_(std::move(name)) {}

FuelExhausted::FuelExhausted(std::uint64_t fuel)
    : std::runtime_error("fuel exhausted after " + std::to_string(fuel) +
                         " iterations (likely an infinite loop)") {}

EvalResult eval_expr(const ast::Expr& expr, Env env) {
  Machine m(std::move(env), kDefaultFuel);
  BigInt value = m.eval(expr);
  return {std::move(value), std::move(m.env())};
}

Execution execute_loop(const ast::ForLoop& loop, Env env, const std::string& induction,
                       std::uint64_t fuel) {
  Machine m(std::move(env), fuel);
  Trace trace;
  m.loop(loop, &trace, induction);
  return {std::move(trace), std::move(m.env())};
}

Trace run_loop(const ast::ForLoop& loop, Env env, const std::string& induction,
               std::uint64_t fuel) {
  return execute_loop(loop, std::move(env), induction, fuel).trace;
}

Env execute_program(const ast::Program& program, Env env, std::uint64_t fuel) {
  Machine m(std::move(env), fuel);
  for (const auto& s : program) m.exec(s);
  return std::move(m.env());
}

nlohmann::json to_json(const Trace& trace) {
  auto number = [](const BigInt& v) -> nlohmann::json {
    if (v >= std::numeric_limits<std::int64_t>::min() &&
        v <= std::numeric_limits<std::int64_t>::max()) {
      return v.convert_to<std::int64_t>();
    }
    return v.str();
  };
  nlohmann::json visible = nlohmann::json::array();
  for (const auto& v : trace.visible) visible.push_back(number(v));
  return {{"visible", visible}, {"iterations", trace.iterations}, {"final", number(trace.final)}};
}

}  // namespace microfor
