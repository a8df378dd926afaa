#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "mixsim/expr.hpp"
#include "mixsim/subarray.hpp"

namespace mixsim {

struct GridShape {
  std::uint32_t rows = 0;
  std::uint32_t width = 1;

  friend bool operator==(const GridShape&, const GridShape&) = default;
};

// Result of lowering an expression: running `prog` on any subarray of
// `shape` whose binding rows hold the inputs leaves the expression value in
// `result_row` and every bound input row unchanged.
struct CompiledProgram {
  MicroProgram prog;
  std::map<std::string, RowId> bindings;
  RowId result_row = 0;
  CostReport cost;
  GridShape shape;
};

// Lowers to majority/NOT form: And and Or become a TRA against a staged
// constant row, Xor expands to (a or b) and not(a and b), Maj3 is a single
// staged TRA. Intermediate results take free DATA rows; evaluation order is
// depth-first, left to right. Throws Error(unbound_variable) and
// RowExhaustionError (which reports the exact demand).
CompiledProgram lower(const Expr& e,
                      const std::map<std::string, RowId>& bindings,
                      GridShape shape);

// Test-harness path: builds a `shape.rows` x `width` subarray, writes every
// bound variable's bit replicated across all columns, runs the program, and
// reads the result row back.
RowBits eval_compiled(const CompiledProgram& cp,
                      const std::map<std::string, bool>& assignment,
                      std::uint32_t width);

// Cost of the canonical lowering with variables auto-bound in
// first-occurrence order; deterministic for a given expression shape.
CostReport cost_of(const Expr& e);

}  // namespace mixsim
