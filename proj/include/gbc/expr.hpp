#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "gbc/error.hpp"

namespace gbc {

// Parsed arithmetic expressions over named coordinates.  This is the engine
// behind the fixture grammar: connection coefficients, section components,
// cell parametrizations and chart embeddings are all expression strings.
//
// Grammar (see docs/fixture_grammar.md):
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := unary ('^' factor)?
//   unary  := '-' unary | primary
//   primary:= number | 'pi' | name | fn '(' expr (',' expr)? ')' | '(' expr ')'
//   fn     := sin cos tan exp log sqrt atan atan2
//
// Exponents must be numeric constants.  Expressions are immutable and carry
// exact symbolic derivatives.

class Expr {
public:
  Expr() = default; // empty handle; evaluates as error

  static Expr number(double v);
  static Expr var(const std::string& name);
  static Expr parse(const std::string& text, const std::vector<std::string>& vars,
                    const std::map<std::string, double>& consts = {});

  bool valid() const { return node_ != nullptr; }

  /// Evaluate with variable values given in the order of the variable list
  /// the expression was parsed against.
  double eval(const std::vector<double>& values) const;

  /// Symbolic partial derivative with respect to variable index `axis`.
  Expr derivative(int axis) const;

  /// True if the expression is the literal constant 0 (after folding).
  bool is_zero() const;

  std::string str() const;

  // Arithmetic on expression trees (used when assembling fixtures in code).
  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);

  struct Node;
  using NodePtr = std::shared_ptr<const Node>;
  explicit Expr(NodePtr n) : node_(std::move(n)) {}
  const NodePtr& node() const { return node_; }

private:
  NodePtr node_;
};

/// Convenience: parse a comma-separated list of expressions.
std::vector<Expr> parse_expr_list(const std::string& text,
                                  const std::vector<std::string>& vars,
                                  const std::map<std::string, double>& consts = {});

} // namespace gbc
