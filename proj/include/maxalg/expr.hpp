#pragma once

// The CLI's distribution-algebra language. LL(1) grammar, everything is a
// call, no precedence:
//
//   expr   := call
//   call   := IDENT '(' args? ')'
//   args   := arg (',' arg)*
//   arg    := NUMBER | STRING | call
//
// Identifiers are case-insensitive; whitespace is free; numbers are decimal
// with an optional exponent; strings are double-quoted (no escapes).
// Arity and per-argument ranges are checked when the tree is built, so a
// malformed call never produces an AST.

#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "maxalg/distfn.hpp"

namespace maxalg::expr {

struct Ast;
using AstPtr = std::shared_ptr<const Ast>;

struct Arg {
  enum class Kind { Number, String, Expr };
  Kind kind;
  double number = 0.0;
  std::string text;
  AstPtr expr;

  static Arg make_number(double v) { return {Kind::Number, v, {}, nullptr}; }
  static Arg make_string(std::string s) {
    return {Kind::String, 0.0, std::move(s), nullptr};
  }
  static Arg make_expr(AstPtr e) { return {Kind::Expr, 0.0, {}, std::move(e)}; }
};

struct Ast {
  std::string name;  // lowercase canonical
  std::vector<Arg> args;
};

bool structurally_equal(const Ast& a, const Ast& b);

// Throws ParseError (with byte offset), ArityError, or RangeError.
AstPtr parse(std::string_view text);

// Canonical form: lowercase names, a single space after each comma,
// shortest round-trip numerals. parse(print(a)) == a structurally.
std::string print(const Ast& ast);

// Builds the distribution DAG, enforcing support-class rules; ClassError and
// ParameterError carry the path of the offending node.
DistFn elaborate(const Ast& ast);

// parse + elaborate.
DistFn eval_expression(std::string_view text);

}  // namespace maxalg::expr
