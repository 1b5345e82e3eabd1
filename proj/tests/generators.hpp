#pragma once

#include <random>

#include "jetode/expression.hpp"

namespace jetode::testing {

/// Random rational expression trees over the jet coordinates. Denominators
/// are products of shifted variables so they never vanish identically.
class ExpressionGenerator {
public:
  explicit ExpressionGenerator(unsigned seed) : rng_(seed) {}

  Expression leaf() {
    int k = pick(0, 5);
    if (k < 4) return Expression::variable(static_cast<Var>(k));
    return Expression(Rational(pick(-5, 5), pick(1, 3)));
  }

  Expression rational(int depth) {
    if (depth == 0) return leaf();
    switch (pick(0, 4)) {
      case 0: return rational(depth - 1) + rational(depth - 1);
      case 1: return rational(depth - 1) - rational(depth - 1);
      case 2: return rational(depth - 1) * rational(depth - 1);
      case 3: return rational(depth - 1) / safe_denominator();
      default: {
        int e = pick(-2, 3);
        return e < 0 ? pow(safe_denominator(), e) * rational(depth - 1) : pow(rational(depth - 1), e);
      }
    }
  }

  /// Rational f of bounded degree with a nonvanishing denominator.
  Expression ode_rhs() {
    Expression num;
    int terms = pick(1, 3);
    for (int i = 0; i < terms; ++i) num = num + monomial(2);
    if (pick(0, 2) == 0) return num;
    return num / safe_denominator();
  }

  Expression monomial(int max_degree) {
    Expression m(Rational(pick(-3, 3) == 0 ? 1 : pick(-3, 3)));
    for (Var v : kJetCoordinates) {
      int e = pick(0, max_degree);
      if (pick(0, 1) == 0) m = m * pow(Expression::variable(v), e);
    }
    return m;
  }

  Expression safe_denominator() {
    Var v = static_cast<Var>(pick(0, 3));
    int shift = pick(0, 2);
    Expression d = Expression::variable(v);
    if (shift != 0) d = d + Expression(shift);
    return d;
  }

  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

private:
  std::mt19937 rng_;
};

}  // namespace jetode::testing
