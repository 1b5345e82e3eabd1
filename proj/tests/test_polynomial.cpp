#include "doctest.h"

#include <random>

#include "jetode/rational_form.hpp"

using namespace jetode;

namespace {

Polynomial X() { return Polynomial::variable(0); }
Polynomial U() { return Polynomial::variable(1); }
Polynomial P() { return Polynomial::variable(2); }
Polynomial Q() { return Polynomial::variable(3); }

Polynomial random_poly(std::mt19937& rng, int terms, int max_deg) {
  std::uniform_int_distribution<int> coeff(-4, 4);
  std::uniform_int_distribution<int> deg(0, max_deg);
  Polynomial r;
  for (int i = 0; i < terms; ++i) {
    Polynomial t(coeff(rng));
    for (std::size_t v = 0; v < 4; ++v) t = t * Polynomial::variable(v).pow(deg(rng) % 2 ? 0 : deg(rng));
    r += t;
  }
  return r;
}

}  // namespace

TEST_CASE("graded lex order puts q above p above u above x") {
  Polynomial f = X() + Q() + U() * U() + P();
  REQUIRE(f.size() == 4);
  CHECK(f.terms()[0].monomial == Monomial::variable(1, 2));
  CHECK(f.terms()[1].monomial == Monomial::variable(3));
  CHECK(f.terms()[2].monomial == Monomial::variable(2));
  CHECK(f.terms()[3].monomial == Monomial::variable(0));
}

TEST_CASE("arithmetic cancels to the unique zero") {
  Polynomial a = X() * U() + Rational(3, 2) * Q();
  CHECK((a - a).is_zero());
  CHECK((a + Polynomial(0)) == a);
  CHECK((a * Polynomial(1)) == a);
  CHECK(((X() + U()).pow(2)) == X() * X() + Polynomial(2) * X() * U() + U() * U());
}

TEST_CASE("exact division") {
  Polynomial a = (X() + U()) * (P() - Q());
  auto q = divide_exact(a, X() + U());
  REQUIRE(q);
  CHECK(*q == P() - Q());
  CHECK_FALSE(divide_exact(a, X() + P()));
}

TEST_CASE("gcd of products recovers the common factor") {
  Polynomial g = X() * P() + U() - Polynomial(2);
  Polynomial a = g * (Q() + X());
  Polynomial b = g * (Q() - U() * U());
  CHECK(gcd(a, b) == g.monic());
  CHECK(gcd(X().pow(3) * U(), X() * U().pow(2) + X() * P()) == X());
  CHECK(gcd(a, Polynomial(5)) == Polynomial(1));
  CHECK(gcd(Polynomial{}, a) == a.monic());
}

TEST_CASE("gcd property on random factors") {
  std::mt19937 rng(7);
  for (int i = 0; i < 40; ++i) {
    Polynomial g = random_poly(rng, 2, 2);
    Polynomial a = random_poly(rng, 3, 2);
    Polynomial b = random_poly(rng, 3, 2);
    if (g.is_zero() || a.is_zero() || b.is_zero()) continue;
    Polynomial d = gcd(g * a, g * b);
    CAPTURE(i);
    // The computed gcd is a multiple of g and divides both inputs.
    CHECK(divide_exact(d, g.monic()));
    CHECK(divide_exact(g * a, d));
    CHECK(divide_exact(g * b, d));
  }
}

TEST_CASE("rational forms are canonical") {
  RationalForm a(X() * X() - U() * U(), X() + U());
  CHECK(a == RationalForm(X() - U()));
  RationalForm p(P());
  CHECK((p / p) == RationalForm(1));
  RationalForm z = RationalForm(Q() * Q(), P()) - RationalForm(Q() * Q(), P());
  CHECK(z.is_zero());
  CHECK(z.den() == Polynomial(1));
  // Denominator leading coefficient is normalized to 1.
  RationalForm s(Polynomial(3), Polynomial(6) * P());
  CHECK(s.den() == P());
  CHECK(s.num() == Polynomial(Rational(1, 2)));
}

TEST_CASE("derivative and substitution") {
  RationalForm f = RationalForm(Polynomial(3) * Q() * Q(), P()) + RationalForm(X() * P().pow(4));
  CHECK(f.derivative(3) == RationalForm(Polynomial(6) * Q(), P()));
  CHECK(f.derivative(2) == RationalForm(Polynomial(-3) * Q() * Q(), P() * P()) +
                               RationalForm(Polynomial(4) * X() * P().pow(3)));
  RationalForm g(Q(), P());
  CHECK(g.substitute(3, f) == f / RationalForm(P()));
  CHECK(g.substitute(2, RationalForm(X(), U())) == RationalForm(Q() * U(), X()));
}

TEST_CASE("cube roots of polynomials up to constants") {
  Polynomial base = X() * P() - Polynomial(2) * U() + Q() * Q();
  auto r = cube_root_up_to_constant(base.pow(3).scaled(Rational(-5, 7)));
  REQUIRE(r);
  CHECK(r->first == Rational(-5, 7) * base.leading_coefficient() * base.leading_coefficient() *
                        base.leading_coefficient());
  CHECK(r->second == base.monic());
  CHECK_FALSE(cube_root_up_to_constant(base.pow(2)));
  CHECK_FALSE(cube_root_up_to_constant(X() + Polynomial(1)));
  CHECK(rational_cbrt(Rational(-8, 27)) == Rational(-2, 3));
  CHECK_FALSE(rational_cbrt(Rational(5)));
}
