#pragma once

// Reference interpreter for the loop language. It is the oracle that the
// transformation is checked against, so it favours obviousness over speed:
// integers are arbitrary precision and evaluation is strictly left to right.

#include "microfor/ast.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace microfor {

using Env = std::map<std::string, BigInt>;

class UnboundVariable : public std::runtime_error {
 public:
  explicit UnboundVariable(std::string name);
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class FuelExhausted : public std::runtime_error {
 public:
  explicit FuelExhausted(std::uint64_t fuel);
};

inline constexpr std::uint64_t kDefaultFuel = 10'000'000;

struct EvalResult {
  BigInt value;
  Env env;
};

/// Post-increment yields the old value, pre-increment the new one;
/// comparisons yield 0 or 1; assignment yields the stored value.
EvalResult eval_expr(const ast::Expr& expr, Env env);

/// Observed behaviour of one loop run.
struct Trace {
  std::vector<BigInt> visible;  // induction value at the top of each body execution
  std::uint64_t iterations = 0;
  BigInt final;                 // induction value after exit
  bool operator==(const Trace&) const = default;
};

struct Execution {
  Trace trace;
  Env env;  // all bindings after the loop exits
};

/// Runs `loop` from `env`. Fuel counts loop iterations across the loop and
/// any loops nested in its body. `continue` proceeds to the update slot and
/// then the condition; with no update slot it goes straight to the condition.
Execution execute_loop(const ast::ForLoop& loop, Env env, const std::string& induction,
                       std::uint64_t fuel = kDefaultFuel);

Trace run_loop(const ast::ForLoop& loop, Env env, const std::string& induction,
               std::uint64_t fuel = kDefaultFuel);

/// Executes top-level statements in order; returns the final environment.
Env execute_program(const ast::Program& program, Env env, std::uint64_t fuel = kDefaultFuel);

nlohmann::json to_json(const Trace& trace);

}  // namespace microfor
