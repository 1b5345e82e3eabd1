#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "jetode/rational_form.hpp"

namespace jetode {

/// Jet coordinates of the second-order jet space: x, u, p = u', q = u''.
enum class Var : std::uint8_t { X = 0, U = 1, P = 2, Q = 3 };

inline constexpr Var kJetCoordinates[] = {Var::X, Var::U, Var::P, Var::Q};

inline std::size_t slot(Var v) { return static_cast<std::size_t>(v); }
const char* var_name(Var v);

/// Immutable expression tree over the jet coordinates. Nodes are shared;
/// builders perform light local folding only (constants, flattening, units).
class Expression {
public:
  enum class Kind : std::uint8_t { Constant, Variable, Sum, Product, Quotient, Power, Cbrt, Ln };

  Expression();  // the constant 0
  Expression(const Rational& c);  // NOLINT(google-explicit-constructor)
  Expression(long c) : Expression(Rational(c)) {}  // NOLINT
  Expression(int c) : Expression(Rational(c)) {}   // NOLINT

  static Expression variable(Var v);
  static Expression sum(std::vector<Expression> terms);
  static Expression product(std::vector<Expression> factors);
  /// Throws Error(DivisionByZero) when den is the constant 0.
  static Expression quotient(const Expression& num, const Expression& den);
  static Expression power(const Expression& base, int exponent);
  /// Real (odd) cube root.
  static Expression cbrt(const Expression& arg);
  static Expression ln(const Expression& arg);

  Kind kind() const;
  /// Constant nodes only.
  const Rational& value() const;
  /// Variable nodes only.
  Var var() const;
  /// Power nodes only.
  int exponent() const;
  /// Children: Sum/Product terms, Quotient {num, den}, Power/Cbrt/Ln {arg}.
  const std::vector<Expression>& args() const;

  bool is_constant() const { return kind() == Kind::Constant; }
  bool is_constant(long c) const;
  /// True when a cbrt or ln node occurs anywhere.
  bool has_formal() const;
  bool depends_on(Var v) const;
  std::size_t node_count() const;
  /// Stable address of the shared node; equal ids imply equal expressions.
  const void* node_id() const { return node_.get(); }

  friend bool operator==(const Expression& a, const Expression& b);
  friend bool operator!=(const Expression& a, const Expression& b) { return !(a == b); }

private:
  struct Node;
  explicit Expression(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

Expression operator+(const Expression& a, const Expression& b);
Expression operator-(const Expression& a, const Expression& b);
Expression operator-(const Expression& a);
Expression operator*(const Expression& a, const Expression& b);
Expression operator/(const Expression& a, const Expression& b);
Expression pow(const Expression& base, int exponent);

/// Canonical rational form; throws Error(NonRational) on cbrt/ln nodes.
RationalForm normalize(const Expression& e);
/// Tree for a canonical form (terms in decreasing graded-lex order).
Expression embed(const RationalForm& r);

/// Full simplification. Rational expressions map to embed(normalize(e));
/// expressions with formal nodes are normalized treating each distinct
/// cbrt/ln subexpression as an independent symbol, with cube roots of perfect
/// cubes extracted and powers of cube roots of constants reduced.
Expression simplify(const Expression& e);

/// Exact zero decision when possible: true/false, or nullopt when the
/// generalized normal form is nonzero but contains formal symbols.
std::optional<bool> exact_zero(const Expression& e);

Expression diff(const Expression& e, Var v);
/// Simultaneous substitution followed by simplify.
Expression substitute(const Expression& e, const std::map<Var, Expression>& bindings);

/// Printed in the input grammar: x u u' u'' + - * / ^ cbrt( ) ln( ).
std::string to_string(const Expression& e);
std::ostream& operator<<(std::ostream& os, const Expression& e);

}  // namespace jetode
