#pragma once

// Legality analysis and rewrite from the three-slot loop
//   for (v = e0; v < e1; v++) body
// to the form that increments inside the condition
//   for (v = e0; v++ < e1;) body
//
// The rewritten loop runs the same number of iterations, but the body sees
// v one higher and v exits one higher. Classification records which of
// those differences are observable for a given loop.

#include "microfor/ast.hpp"
#include "microfor/semantics.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace microfor {

enum class Verdict { CanonicalExact, CompensableBodyUse, InductionReadAfterLoop, NotCanonical };

const char* to_string(Verdict v);

struct Classification {
  Verdict verdict = Verdict::NotCanonical;
  std::string reason;
  std::optional<std::string> induction;
};

struct TransformOptions {
  bool compensate = false;  // rewrite body reads of v to (v - 1)
  bool post_fixup = false;  // emit `v = v - 1;` after the loop
};

struct MicroRewrite {
  ast::ForLoop loop;
  std::optional<ast::Stmt> fixup;
};

class NotTransformable : public std::runtime_error {
 public:
  explicit NotTransformable(Classification c);
  const Classification& classification() const { return classification_; }

 private:
  Classification classification_;
};

class BodyWritesInduction : public std::runtime_error {
 public:
  explicit BodyWritesInduction(const std::string& induction);
};

/// Total and deterministic. `context_reads_induction` says whether code
/// after the loop reads the induction variable.
Classification classify(const ast::ForLoop& loop, bool context_reads_induction);

/// Requires classify(loop, false) to be CanonicalExact, or
/// CompensableBodyUse with opts.compensate set.
MicroRewrite to_micro(const ast::ForLoop& loop, const TransformOptions& opts = {});

// Variable-use queries, also used by the CLI for context analysis.
bool reads_variable(const ast::Expr& e, const std::string& name);
bool reads_variable(const ast::Stmt& s, const std::string& name);
bool writes_variable(const ast::Expr& e, const std::string& name);
bool writes_variable(const ast::Stmt& s, const std::string& name);
std::vector<std::string> free_variables(const ast::ForLoop& loop);

struct EquivalenceRow {
  BigInt n;
  bool iterations_equal = false;
  bool visible_equal = false;
  bool final_equal = false;
  bool effects_equal = false;  // every non-induction binding at exit
};

struct EquivalenceContext {
  std::string induction;         // empty: taken from the original's init target
  std::string bound = "n";       // variable the samples are bound to
  Env base;                      // other bindings; free variables not here start at 0
  std::uint64_t fuel = kDefaultFuel;
};

struct EquivalenceReport {
  std::vector<EquivalenceRow> rows;
  bool all_iterations_equal() const;
  bool all_effects_equal() const;
};

/// Runs both loops for each sample value of the bound. When `fixup` is
/// given it is executed after the transformed loop before comparing.
EquivalenceReport equivalence_check(const ast::ForLoop& original, const ast::ForLoop& transformed,
                                    std::span<const BigInt> samples,
                                    const EquivalenceContext& ctx = {},
                                    const std::optional<ast::Stmt>& fixup = std::nullopt);

nlohmann::json to_json(const Classification& c);

}  // namespace microfor
