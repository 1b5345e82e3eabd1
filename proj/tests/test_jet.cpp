#include "doctest.h"

#include "generators.hpp"
#include "jetode/jet.hpp"
#include "jetode/parser.hpp"
#include "jetode/zero_test.hpp"

using namespace jetode;

namespace {

const Expression x = Expression::variable(Var::X);
const Expression u = Expression::variable(Var::U);
const Expression p = Expression::variable(Var::P);
const Expression q = Expression::variable(Var::Q);

bool same(const Expression& a, const Expression& b) { return normalize(a - b).is_zero(); }

}  // namespace

TEST_CASE("total derivative on coordinates") {
  JetContext ctx(parse_expression("3*u''^2/u' + x*u'^4"));
  CHECK(same(total_derivative(ctx, u), p));
  CHECK(same(total_derivative(ctx, q), ctx.f()));
  CHECK(same(total_derivative(ctx, x * p), p + x * q));
  CHECK(same(total_derivative(ctx, x), Expression(1)));
}

TEST_CASE("iterated total derivative") {
  JetContext ctx(parse_expression("x*u"));
  Expression e = x * x + p;
  CHECK(total_derivative_n(ctx, e, 0) == e);
  CHECK(same(total_derivative_n(ctx, u, 2), q));
  JetContext zero(Expression(0));
  CHECK(same(total_derivative_n(zero, q, 2), Expression(0)));
  CHECK(same(total_derivative_n(ctx, u, 3), x * u));
}

TEST_CASE("formal nodes are differentiated by the chain rule") {
  JetContext ctx(parse_expression("u"));
  Expression c = Expression::cbrt(p);
  Expression expected = q / (Expression(3) * pow(c, 2));
  CHECK(is_zero(total_derivative(ctx, c) - expected) == Verdict::Zero);
  Expression l = Expression::ln(x * x + Expression(1));
  CHECK(is_zero(total_derivative(ctx, l) - Expression(2) * x / (x * x + Expression(1))) == Verdict::Zero);
}

TEST_CASE("non-rational right-hand sides are held but not normalized") {
  JetContext ctx(Expression::cbrt(x));
  CHECK_FALSE(ctx.is_rational());
  CHECK_THROWS(ctx.rational_f());
}

TEST_CASE("property: linearity and Leibniz rule of the total derivative") {
  testing::ExpressionGenerator gen(31);
  for (int i = 0; i < 150; ++i) {
    JetContext ctx(gen.ode_rhs());
    Expression a = gen.rational(2);
    Expression b = gen.rational(2);
    Rational c(gen.pick(-4, 4), gen.pick(1, 3));
    CAPTURE(to_string(ctx.f()));
    CHECK(same(total_derivative(ctx, Expression(c) * a + b),
               Expression(c) * total_derivative(ctx, a) + total_derivative(ctx, b)));
    CHECK(same(total_derivative(ctx, a * b), total_derivative(ctx, a) * b + a * total_derivative(ctx, b)));
  }
}

TEST_CASE("property: the expression and canonical-form paths agree") {
  testing::ExpressionGenerator gen(32);
  for (int i = 0; i < 150; ++i) {
    JetContext ctx(gen.ode_rhs());
    Expression a = gen.rational(2);
    CHECK(normalize(total_derivative(ctx, a)) == total_derivative(ctx, normalize(a)));
  }
}
