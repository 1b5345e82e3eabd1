#pragma once

#include "jetode/expression.hpp"

namespace jetode {

/// The equation u''' = f(x, u, u', u''). Holds f both as a tree and, when f is
/// rational, in canonical form for the exact fast path.
class JetContext {
public:
  /// Formal nodes are accepted; operations that need a rational f throw
  /// Error(NonRational) through rational_f().
  explicit JetContext(Expression f);

  const Expression& f() const { return f_; }
  bool is_rational() const { return rational_f_.has_value(); }
  /// Throws Error(NonRational) when f has cbrt/ln nodes.
  const RationalForm& rational_f() const;

private:
  Expression f_;
  std::optional<RationalForm> rational_f_;
};

/// D_x e = e_x + u' e_u + u'' e_u' + f e_u''.
Expression total_derivative(const JetContext& ctx, const Expression& e);
/// n-fold application; n = 0 returns e unchanged.
Expression total_derivative_n(const JetContext& ctx, const Expression& e, int n);

/// Exact fast path on canonical forms (requires a rational f).
RationalForm total_derivative(const JetContext& ctx, const RationalForm& e);
RationalForm total_derivative_n(const JetContext& ctx, const RationalForm& e, int n);

}  // namespace jetode
