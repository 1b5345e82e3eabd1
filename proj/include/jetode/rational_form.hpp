#pragma once

#include <optional>
#include <span>

#include "jetode/polynomial.hpp"

namespace jetode {

/// Canonical rational function: gcd(num, den) = 1 and the denominator's
/// leading coefficient (graded lex, q > p > u > x) is 1. Zero is 0/1.
class RationalForm {
public:
  RationalForm() : den_(1) {}
  RationalForm(Polynomial num);  // NOLINT(google-explicit-constructor)
  RationalForm(const Rational& c) : RationalForm(Polynomial(c)) {}  // NOLINT
  RationalForm(long c) : RationalForm(Polynomial(c)) {}             // NOLINT
  RationalForm(int c) : RationalForm(Polynomial(c)) {}              // NOLINT
  RationalForm(Polynomial num, Polynomial den);

  static RationalForm variable(std::size_t var) { return RationalForm(Polynomial::variable(var)); }

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  Rational constant_value() const;
  bool contains(std::size_t var) const { return num_.contains(var) || den_.contains(var); }
  unsigned used_vars() const { return num_.used_vars() | den_.used_vars(); }

  RationalForm operator-() const;
  friend RationalForm operator+(const RationalForm& a, const RationalForm& b);
  friend RationalForm operator-(const RationalForm& a, const RationalForm& b);
  friend RationalForm operator*(const RationalForm& a, const RationalForm& b);
  friend RationalForm operator/(const RationalForm& a, const RationalForm& b);
  RationalForm& operator+=(const RationalForm& o) { return *this = *this + o; }
  RationalForm& operator-=(const RationalForm& o) { return *this = *this - o; }
  RationalForm& operator*=(const RationalForm& o) { return *this = *this * o; }
  /// Negative n inverts; throws std::domain_error for 0^n with n < 0.
  RationalForm pow(int n) const;

  RationalForm derivative(std::size_t var) const;
  RationalForm substitute(std::size_t var, const RationalForm& value) const;

  /// Throws std::domain_error when the denominator vanishes at the point.
  double evaluate(std::span<const double> point) const;

  friend bool operator==(const RationalForm& a, const RationalForm& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

private:
  struct Raw {};
  RationalForm(Raw, Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {}
  void canonicalize();

  Polynomial num_;
  Polynomial den_;
};

/// Splits value = c * root^3 with c a rational constant, when numerator and
/// denominator are cubes up to constants.
struct CubeRootSplit {
  Rational constant;  // value = constant * root^3
  RationalForm root;
};
std::optional<CubeRootSplit> cube_root_split(const RationalForm& value);

}  // namespace jetode
