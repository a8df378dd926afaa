#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace mixsim {

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Immutable boolean expression tree. Shared subtrees are allowed; lowering
// treats every occurrence independently (no CSE).
class Expr {
 public:
  enum class Kind { Var, Const, Not, And, Or, Xor, Maj3 };

  static ExprPtr var(std::string name);
  static ExprPtr constant(bool value);
  static ExprPtr make_not(ExprPtr e);
  static ExprPtr make_and(ExprPtr a, ExprPtr b);
  static ExprPtr make_or(ExprPtr a, ExprPtr b);
  static ExprPtr make_xor(ExprPtr a, ExprPtr b);
  static ExprPtr make_maj3(ExprPtr a, ExprPtr b, ExprPtr c);

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }  // Var only
  bool value() const { return value_; }              // Const only
  const std::vector<ExprPtr>& children() const { return children_; }

  // Free variables in first-occurrence, depth-first, left-to-right order.
  std::vector<std::string> free_vars() const;

 private:
  Expr(Kind kind, std::string name, bool value, std::vector<ExprPtr> children)
      : kind_(kind),
        name_(std::move(name)),
        value_(value),
        children_(std::move(children)) {}

  Kind kind_;
  std::string name_;
  bool value_;
  std::vector<ExprPtr> children_;
};

// Prefix s-expression syntax: `(xor a (and b (not c)))`. Atoms are variable
// names [A-Za-z_][A-Za-z0-9_]* or the constants 0 and 1; operators are
// not/1, and/2, or/2, xor/2, maj/3. Throws Error(expr_parse).
ExprPtr parse_expr(std::string_view text);

std::string format_expr(const Expr& e);

// Direct tree evaluation. Throws Error(unbound_variable).
bool eval_expr(const Expr& e, const std::map<std::string, bool>& env);

}  // namespace mixsim
