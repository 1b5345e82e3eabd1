#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace jetode {

using Rational = mpq_class;

/// Slots 0..3 are the jet coordinates x, u, p, q. Slots 4.. are reserved for
/// opaque atoms (formal cbrt/ln subexpressions) during generalized
/// simplification.
inline constexpr std::size_t kMaxVars = 8;
inline constexpr std::size_t kJetVars = 4;

/// Exact real cube root of a rational, if it exists in Q.
std::optional<Rational> rational_cbrt(const Rational& value);

/// Exponent vector; ordered graded-lexicographically with slot 0 smallest.
class Monomial {
public:
  Monomial() = default;

  static Monomial variable(std::size_t var, unsigned power = 1);

  unsigned exponent(std::size_t var) const { return exps_[var]; }
  unsigned degree() const { return degree_; }
  bool is_one() const { return degree_ == 0; }

  void set_exponent(std::size_t var, unsigned power);

  Monomial operator*(const Monomial& other) const;
  bool divides(const Monomial& other) const;
  /// Requires divides(other).
  Monomial quotient_of(const Monomial& other) const;
  static Monomial gcd(const Monomial& a, const Monomial& b);

  /// Graded lex: total degree first, then the highest slot decides.
  friend int compare(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.exps_ == b.exps_;
  }

private:
  std::array<std::uint16_t, kMaxVars> exps_{};
  unsigned degree_ = 0;
};

struct Term {
  Monomial monomial;
  Rational coeff;
};

/// Sparse multivariate polynomial with exact rational coefficients.
/// Terms are kept sorted in strictly decreasing monomial order with no zero
/// coefficients, so equality is structural.
class Polynomial {
public:
  Polynomial() = default;
  Polynomial(const Rational& constant);  // NOLINT(google-explicit-constructor)
  Polynomial(long constant) : Polynomial(Rational(constant)) {}  // NOLINT
  Polynomial(int constant) : Polynomial(Rational(constant)) {}  // NOLINT

  static Polynomial variable(std::size_t var);
  static Polynomial term(const Monomial& m, const Rational& c);
  /// Terms in any order; duplicates are merged and zeros dropped.
  static Polynomial from_unsorted(std::vector<Term> terms);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }
  /// Only meaningful when is_constant().
  Rational constant_value() const;

  const std::vector<Term>& terms() const { return terms_; }
  const Term& leading_term() const { return terms_.front(); }
  const Rational& leading_coefficient() const { return terms_.front().coeff; }
  std::size_t size() const { return terms_.size(); }

  unsigned degree(std::size_t var) const;
  unsigned total_degree() const;
  unsigned min_total_degree() const;
  bool contains(std::size_t var) const { return degree(var) > 0; }
  /// Bitmask of the slots that occur.
  unsigned used_vars() const;

  /// Coefficient of var^k, as a polynomial free of var.
  Polynomial coefficient(std::size_t var, unsigned k) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial scaled(const Rational& c) const;
  Polynomial pow(unsigned n) const;

  Polynomial derivative(std::size_t var) const;
  /// Replace var by value (a polynomial) everywhere.
  Polynomial substitute(std::size_t var, const Polynomial& value) const;

  /// Divides by the leading coefficient; zero stays zero.
  Polynomial monic() const;

  double evaluate(std::span<const double> point) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);

private:
  explicit Polynomial(std::vector<Term> terms) : terms_(std::move(terms)) {}

  std::vector<Term> terms_;
};

/// Quotient a/b when b divides a exactly; nullopt otherwise. b must be nonzero.
std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b);

/// Monic greatest common divisor over Q. gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// P = c * Q^3 with Q monic, or nullopt when P is not a cube up to a constant.
std::optional<std::pair<Rational, Polynomial>> cube_root_up_to_constant(const Polynomial& p);

}  // namespace jetode
