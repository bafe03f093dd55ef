#include "microfor/transform.hpp"

#include <set>

namespace microfor {
namespace {

using namespace ast;

Classification not_canonical(std::string reason, std::optional<std::string> induction = {}) {
  return {Verdict::NotCanonical, std::move(reason), std::move(induction)};
}

bool contains_break(const Stmt& s) {
  if (std::holds_alternative<Break>(s.node)) return true;
  if (const auto* b = std::get_if<Block>(&s.node)) {
    for (const auto& inner : b->stmts) {
      if (contains_break(inner)) return true;
    }
  }
  // A break inside a nested loop only leaves that loop.
  return false;
}

void collect_names(const Expr& e, std::set<std::string>& out) {
  if (const auto* v = std::get_if<Var>(&e.node)) out.insert(v->name);
  else if (const auto* b = std::get_if<Binary>(&e.node)) {
    collect_names(*b->left, out);
    collect_names(*b->right, out);
  } else if (const auto* a = std::get_if<Assign>(&e.node)) {
    out.insert(a->target);
    collect_names(*a->value, out);
  } else if (const auto* p = std::get_if<PostInc>(&e.node)) out.insert(p->target);
  else if (const auto* p = std::get_if<PreInc>(&e.node)) out.insert(p->target);
}

void collect_names(const Stmt& s, std::set<std::string>& out) {
  if (const auto* e = std::get_if<ExprStmt>(&s.node)) collect_names(e->expr, out);
  else if (const auto* b = std::get_if<Block>(&s.node)) {
    for (const auto& inner : b->stmts) collect_names(inner, out);
  } else if (const auto* f = std::get_if<ForLoop>(&s.node)) {
    for (const auto* slot : {&f->init, &f->cond, &f->update}) {
      if (*slot) collect_names(**slot, out);
    }
    collect_names(*f->body, out);
  }
}

Expr compensate_expr(const Expr& e, const std::string& v) {
  if (const auto* var_node = std::get_if<Var>(&e.node); var_node && var_node->name == v) {
    return binary(BinaryOp::Sub, var(v), lit(1));
  }
  if (const auto* b = std::get_if<Binary>(&e.node)) {
    return binary(b->op, compensate_expr(*b->left, v), compensate_expr(*b->right, v));
  }
  if (const auto* a = std::get_if<Assign>(&e.node)) {
    return assign(a->target, compensate_expr(*a->value, v));
  }
  return e;
}

std::optional<Expr> compensate_slot(const std::optional<Expr>& e, const std::string& v) {
  if (!e) return std::nullopt;
  return compensate_expr(*e, v);
}

Stmt compensate_stmt(const Stmt& s, const std::string& v) {
  if (const auto* e = std::get_if<ExprStmt>(&s.node)) return expr_stmt(compensate_expr(e->expr, v));
  if (const auto* b = std::get_if<Block>(&s.node)) {
    std::vector<Stmt> stmts;
    stmts.reserve(b->stmts.size());
    for (const auto& inner : b->stmts) stmts.push_back(compensate_stmt(inner, v));
    return block(std::move(stmts));
  }
  if (const auto* f = std::get_if<ForLoop>(&s.node)) {
    return for_loop(compensate_slot(f->init, v), compensate_slot(f->cond, v),
                    compensate_slot(f->update, v), compensate_stmt(*f->body, v));
  }
  return s;
}

const std::string* init_target(const ForLoop& loop) {
  if (!loop.init) return nullptr;
  const auto* a = std::get_if<Assign>(&loop.init->node);
  return a ? &a->target : nullptr;
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::CanonicalExact: return "CanonicalExact";
    case Verdict::CompensableBodyUse: return "CompensableBodyUse";
    case Verdict::InductionReadAfterLoop: return "InductionReadAfterLoop";
    case Verdict::NotCanonical: return "NotCanonical";
  }
  return "?";
}

NotTransformable::NotTransformable(Classification c)
    : std::runtime_error(std::string("loop is not transformable: ") + to_string(c.verdict) + " (" +
                         c.reason + ")"),
      classification_(std::move(c)) {}

BodyWritesInduction::BodyWritesInduction(const std::string& induction)
    : std::runtime_error("loop body writes the induction variable '" + induction + "'") {}

bool reads_variable(const ast::Expr& e, const std::string& name) {
  if (const auto* v = std::get_if<Var>(&e.node)) return v->name == name;
  if (const auto* b = std::get_if<Binary>(&e.node)) {
    return reads_variable(*b->left, name) || reads_variable(*b->right, name);
  }
  if (const auto* a = std::get_if<Assign>(&e.node)) return reads_variable(*a->value, name);
  if (const auto* p = std::get_if<PostInc>(&e.node)) return p->target == name;
  if (const auto* p = std::get_if<PreInc>(&e.node)) return p->target == name;
  return false;
}

bool writes_variable(const ast::Expr& e, const std::string& name) {
  if (const auto* b = std::get_if<Binary>(&e.node)) {
    return writes_variable(*b->left, name) || writes_variable(*b->right, name);
  }
  if (const auto* a = std::get_if<Assign>(&e.node)) {
    return a->target == name || writes_variable(*a->value, name);
  }
  if (const auto* p = std::get_if<PostInc>(&e.node)) return p->target == name;
  if (const auto* p = std::get_if<PreInc>(&e.node)) return p->target == name;
  return false;
}

namespace {

template <class Pred>
bool any_in_stmt(const Stmt& s, const Pred& pred) {
  if (const auto* e = std::get_if<ExprStmt>(&s.node)) return pred(e->expr);
  if (const auto* b = std::get_if<Block>(&s.node)) {
    for (const auto& inner : b->stmts) {
      if (any_in_stmt(inner, pred)) return true;
    }
    return false;
  }
  if (const auto* f = std::get_if<ForLoop>(&s.node)) {
    for (const auto* slot : {&f->init, &f->cond, &f->update}) {
      if (*slot && pred(**slot)) return true;
    }
    return any_in_stmt(*f->body, pred);
  }
  return false;
}

}  // namespace

bool reads_variable(const ast::Stmt& s, const std::string& name) {
  return any_in_stmt(s, [&](const Expr& e) { return reads_variable(e, name); });
}

bool writes_variable(const ast::Stmt& s, const std::string& name) {
  return any_in_stmt(s, [&](const Expr& e) { return writes_variable(e, name); });
}

std::vector<std::string> free_variables(const ast::ForLoop& loop) {
  std::set<std::string> names;
  for (const auto* slot : {&loop.init, &loop.cond, &loop.update}) {
    if (*slot) collect_names(**slot, names);
  }
  collect_names(*loop.body, names);
  return {names.begin(), names.end()};
}

Classification classify(const ast::ForLoop& loop, bool context_reads_induction) {
  if (!loop.init) return not_canonical("init slot is absent");
  const auto* init = std::get_if<Assign>(&loop.init->node);
  if (init == nullptr) return not_canonical("init is not an assignment");
  const std::string& v = init->target;
  if (reads_variable(*init->value, v)) return not_canonical("initial value reads the induction variable", v);

  if (!loop.update) return not_canonical("update slot is absent", v);
  const std::string* incremented = nullptr;
  if (const auto* p = std::get_if<PostInc>(&loop.update->node)) incremented = &p->target;
  if (const auto* p = std::get_if<PreInc>(&loop.update->node)) incremented = &p->target;
  if (incremented == nullptr) return not_canonical("update is not unit increment", v);
  if (*incremented != v) return not_canonical("update increments a different variable", v);

  if (!loop.cond) return not_canonical("condition slot is absent", v);
  const auto* cmp = std::get_if<Binary>(&loop.cond->node);
  if (cmp == nullptr) return not_canonical("condition is not a comparison", v);
  if (cmp->op != BinaryOp::Lt) return not_canonical("comparison is not <", v);
  if (*cmp->left != var(v)) return not_canonical("condition does not test the induction variable", v);
  if (reads_variable(*cmp->right, v)) return not_canonical("bound reads the induction variable", v);
  const auto* bound_var = std::get_if<Var>(&cmp->right->node);
  if (bound_var == nullptr && !std::holds_alternative<IntLiteral>(cmp->right->node)) {
    return not_canonical("bound is not a plain variable or literal", v);
  }

  if (writes_variable(*loop.body, v)) return not_canonical("body writes the induction variable", v);
  if (bound_var != nullptr && writes_variable(*loop.body, bound_var->name)) {
    return not_canonical("body writes the bound variable", v);
  }

  if (context_reads_induction) {
    std::string reason = "induction variable is read after the loop";
    if (contains_break(*loop.body)) reason += "; body contains break";
    return {Verdict::InductionReadAfterLoop, std::move(reason), v};
  }
  if (reads_variable(*loop.body, v)) {
    return {Verdict::CompensableBodyUse, "body reads the induction variable", v};
  }
  return {Verdict::CanonicalExact, "canonical loop; induction variable unobserved", v};
}

MicroRewrite to_micro(const ast::ForLoop& loop, const TransformOptions& opts) {
  if (const std::string* v = init_target(loop); v && writes_variable(*loop.body, *v)) {
    throw BodyWritesInduction(*v);
  }
  Classification c = classify(loop, false);
  if (c.verdict == Verdict::NotCanonical ||
      (c.verdict == Verdict::CompensableBodyUse && !opts.compensate)) {
    throw NotTransformable(std::move(c));
  }
  const std::string& v = *c.induction;
  const auto& bound = *std::get<Binary>(loop.cond->node).right;

  ForLoop out{loop.init, binary(BinaryOp::Lt, post_inc(v), bound), std::nullopt,
              opts.compensate ? compensate_stmt(*loop.body, v) : *loop.body};
  std::optional<Stmt> fixup;
  if (opts.post_fixup) fixup = expr_stmt(assign(v, binary(BinaryOp::Sub, var(v), lit(1))));
  return {std::move(out), std::move(fixup)};
}

bool EquivalenceReport::all_iterations_equal() const {
  for (const auto& r : rows) {
    if (!r.iterations_equal) return false;
  }
  return true;
}

bool EquivalenceReport::all_effects_equal() const {
  for (const auto& r : rows) {
    if (!r.effects_equal) return false;
  }
  return true;
}

EquivalenceReport equivalence_check(const ast::ForLoop& original, const ast::ForLoop& transformed,
                                    std::span<const BigInt> samples,
                                    const EquivalenceContext& ctx,
                                    const std::optional<ast::Stmt>& fixup) {
  std::string induction = ctx.induction;
  if (induction.empty()) {
    const std::string* target = init_target(original);
    if (target == nullptr) {
      throw std::invalid_argument("cannot infer the induction variable: init is not an assignment");
    }
    induction = *target;
  }

  Env base = ctx.base;
  for (const auto* loop : {&original, &transformed}) {
    for (const auto& name : free_variables(*loop)) base.try_emplace(name, 0);
  }

  auto without_induction = [&](Env env) {
    env.erase(induction);
    return env;
  };

  EquivalenceReport report;
  for (const auto& n : samples) {
    Env env = base;
    env[ctx.bound] = n;
    const Execution a = execute_loop(original, env, induction, ctx.fuel);
    Execution b = execute_loop(transformed, env, induction, ctx.fuel);
    if (fixup) {
      b.env = execute_program({*fixup}, std::move(b.env), ctx.fuel);
      b.trace.final = b.env.at(induction);
    }
    report.rows.push_back({n, a.trace.iterations == b.trace.iterations,
                           a.trace.visible == b.trace.visible, a.trace.final == b.trace.final,
                           without_induction(a.env) == without_induction(b.env)});
  }
  return report;
}

nlohmann::json to_json(const Classification& c) {
  return {{"verdict", to_string(c.verdict)},
          {"reason", c.reason},
          {"induction", c.induction ? nlohmann::json(*c.induction) : nlohmann::json(nullptr)}};
}

}  // namespace microfor
