#include "mixsim/expr.hpp"

#include <cctype>

#include "mixsim/error.hpp"

namespace mixsim {

ExprPtr Expr::var(std::string name) {
  return ExprPtr(new Expr(Kind::Var, std::move(name), false, {}));
}

ExprPtr Expr::constant(bool value) {
  return ExprPtr(new Expr(Kind::Const, {}, value, {}));
}

ExprPtr Expr::make_not(ExprPtr e) {
  return ExprPtr(new Expr(Kind::Not, {}, false, {std::move(e)}));
}

ExprPtr Expr::make_and(ExprPtr a, ExprPtr b) {
  return ExprPtr(new Expr(Kind::And, {}, false, {std::move(a), std::move(b)}));
}

ExprPtr Expr::make_or(ExprPtr a, ExprPtr b) {
  return ExprPtr(new Expr(Kind::Or, {}, false, {std::move(a), std::move(b)}));
}

ExprPtr Expr::make_xor(ExprPtr a, ExprPtr b) {
  return ExprPtr(new Expr(Kind::Xor, {}, false, {std::move(a), std::move(b)}));
}

ExprPtr Expr::make_maj3(ExprPtr a, ExprPtr b, ExprPtr c) {
  return ExprPtr(
      new Expr(Kind::Maj3, {}, false, {std::move(a), std::move(b), std::move(c)}));
}

namespace {

void collect_vars(const Expr& e, std::vector<std::string>& out) {
  if (e.kind() == Expr::Kind::Var) {
    for (const auto& seen : out) {
      if (seen == e.name()) return;
    }
    out.push_back(e.name());
    return;
  }
  for (const auto& child : e.children()) collect_vars(*child, out);
}

}  // namespace

std::vector<std::string> Expr::free_vars() const {
  std::vector<std::string> out;
  collect_vars(*this, out);
  return out;
}

namespace {

struct Parser {
  std::string_view text;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(Errc::expr_parse,
                "expression offset " + std::to_string(pos) + ": " + what);
  }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
    }
  }

  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }

  std::string atom() {
    skip_ws();
    const std::size_t start = pos;
    while (pos < text.size()) {
      const char c = text[pos];
      if (c == '(' || c == ')' || std::isspace(static_cast<unsigned char>(c))) {
        break;
      }
      ++pos;
    }
    if (pos == start) fail("expected an atom");
    return std::string(text.substr(start, pos - start));
  }

  void expect(char c) {
    skip_ws();
    if (pos >= text.size() || text[pos] != c) {
      fail(std::string("expected '") + c + "'");
    }
    ++pos;
  }

  ExprPtr parse() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of input");
    if (text[pos] != '(') {
      return leaf(atom());
    }
    ++pos;  // '('
    const std::string op = atom();
    std::vector<ExprPtr> args;
    skip_ws();
    while (pos < text.size() && text[pos] != ')') {
      args.push_back(parse());
      skip_ws();
    }
    expect(')');
    return node(op, std::move(args));
  }

  ExprPtr leaf(const std::string& tok) {
    if (tok == "0") return Expr::constant(false);
    if (tok == "1") return Expr::constant(true);
    if (!std::isalpha(static_cast<unsigned char>(tok[0])) && tok[0] != '_') {
      fail("bad variable name '" + tok + "'");
    }
    for (char c : tok) {
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') {
        fail("bad variable name '" + tok + "'");
      }
    }
    return Expr::var(tok);
  }

  ExprPtr node(const std::string& op, std::vector<ExprPtr> args) {
    const auto arity = [&](std::size_t n) {
      if (args.size() != n) {
        fail("'" + op + "' takes " + std::to_string(n) + " argument(s), got " +
             std::to_string(args.size()));
      }
    };
    if (op == "not") {
      arity(1);
      return Expr::make_not(args[0]);
    }
    if (op == "and") {
      arity(2);
      return Expr::make_and(args[0], args[1]);
    }
    if (op == "or") {
      arity(2);
      return Expr::make_or(args[0], args[1]);
    }
    if (op == "xor") {
      arity(2);
      return Expr::make_xor(args[0], args[1]);
    }
    if (op == "maj") {
      arity(3);
      return Expr::make_maj3(args[0], args[1], args[2]);
    }
    fail("unknown operator '" + op + "'");
  }
};

}  // namespace

ExprPtr parse_expr(std::string_view text) {
  Parser p{text};
  ExprPtr e = p.parse();
  if (!p.at_end()) p.fail("trailing input after expression");
  return e;
}

std::string format_expr(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Var: return e.name();
    case Expr::Kind::Const: return e.value() ? "1" : "0";
    case Expr::Kind::Not: return "(not " + format_expr(*e.children()[0]) + ")";
    case Expr::Kind::And:
      return "(and " + format_expr(*e.children()[0]) + " " +
             format_expr(*e.children()[1]) + ")";
    case Expr::Kind::Or:
      return "(or " + format_expr(*e.children()[0]) + " " +
             format_expr(*e.children()[1]) + ")";
    case Expr::Kind::Xor:
      return "(xor " + format_expr(*e.children()[0]) + " " +
             format_expr(*e.children()[1]) + ")";
    case Expr::Kind::Maj3:
      return "(maj " + format_expr(*e.children()[0]) + " " +
             format_expr(*e.children()[1]) + " " +
             format_expr(*e.children()[2]) + ")";
  }
  return {};
}

bool eval_expr(const Expr& e, const std::map<std::string, bool>& env) {
  switch (e.kind()) {
    case Expr::Kind::Var: {
      const auto it = env.find(e.name());
      if (it == env.end()) {
        throw Error(Errc::unbound_variable, "variable '" + e.name() +
                                                "' has no assignment");
      }
      return it->second;
    }
    case Expr::Kind::Const: return e.value();
    case Expr::Kind::Not: return !eval_expr(*e.children()[0], env);
    case Expr::Kind::And:
      return eval_expr(*e.children()[0], env) && eval_expr(*e.children()[1], env);
    case Expr::Kind::Or:
      return eval_expr(*e.children()[0], env) || eval_expr(*e.children()[1], env);
    case Expr::Kind::Xor:
      return eval_expr(*e.children()[0], env) != eval_expr(*e.children()[1], env);
    case Expr::Kind::Maj3: {
      const int n = int{eval_expr(*e.children()[0], env)} +
                    int{eval_expr(*e.children()[1], env)} +
                    int{eval_expr(*e.children()[2], env)};
      return n >= 2;
    }
  }
  return false;
}

}  // namespace mixsim
