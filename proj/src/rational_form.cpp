#include "jetode/rational_form.hpp"

#include <cmath>
#include <stdexcept>

namespace jetode {

RationalForm::RationalForm(Polynomial num) : num_(std::move(num)), den_(1) {}

RationalForm::RationalForm(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
  canonicalize();
}

void RationalForm::canonicalize() {
  if (num_.is_zero()) {
    den_ = Polynomial(1);
    return;
  }
  if (!den_.is_constant()) {
    Polynomial g = gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = *divide_exact(num_, g);
      den_ = *divide_exact(den_, g);
    }
  }
  Rational lc = den_.leading_coefficient();
  if (lc != 1) {
    Rational inv = 1 / lc;
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

Rational RationalForm::constant_value() const {
  return num_.constant_value() / den_.constant_value();
}

RationalForm RationalForm::operator-() const { return RationalForm(Raw{}, -num_, den_); }

RationalForm operator+(const RationalForm& a, const RationalForm& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) {
    if (a.den_.is_constant()) return RationalForm(RationalForm::Raw{}, a.num_ + b.num_, a.den_);
    return RationalForm(a.num_ + b.num_, a.den_);
  }
  Polynomial g = gcd(a.den_, b.den_);
  Polynomial ad = *divide_exact(a.den_, g);
  Polynomial bd = *divide_exact(b.den_, g);
  Polynomial num = a.num_ * bd + b.num_ * ad;
  Polynomial den = a.den_ * bd;
  if (num.is_zero()) return RationalForm{};
  // Both inputs are reduced, so any common factor of num and den divides g.
  if (!g.is_constant()) {
    Polynomial h = gcd(num, g);
    if (!h.is_constant()) {
      num = *divide_exact(num, h);
      den = *divide_exact(den, h);
    }
  }
  RationalForm r(RationalForm::Raw{}, std::move(num), std::move(den));
  Rational lc = r.den_.leading_coefficient();
  if (lc != 1) {
    r.num_ = r.num_.scaled(1 / lc);
    r.den_ = r.den_.scaled(1 / lc);
  }
  return r;
}

RationalForm operator-(const RationalForm& a, const RationalForm& b) { return a + (-b); }

RationalForm operator*(const RationalForm& a, const RationalForm& b) {
  if (a.is_zero() || b.is_zero()) return RationalForm{};
  Polynomial g1 = gcd(a.num_, b.den_);
  Polynomial g2 = gcd(b.num_, a.den_);
  Polynomial an = g1.is_constant() ? a.num_ : *divide_exact(a.num_, g1);
  Polynomial bd = g1.is_constant() ? b.den_ : *divide_exact(b.den_, g1);
  Polynomial bn = g2.is_constant() ? b.num_ : *divide_exact(b.num_, g2);
  Polynomial ad = g2.is_constant() ? a.den_ : *divide_exact(a.den_, g2);
  RationalForm r(RationalForm::Raw{}, an * bn, ad * bd);
  Rational lc = r.den_.leading_coefficient();
  if (lc != 1) {
    Rational inv = 1 / lc;
    r.num_ = r.num_.scaled(inv);
    r.den_ = r.den_.scaled(inv);
  }
  return r;
}

RationalForm operator/(const RationalForm& a, const RationalForm& b) {
  if (b.is_zero()) throw std::domain_error("division by the zero rational function");
  return a * RationalForm(RationalForm::Raw{}, b.den_, b.num_).pow(1);
}

RationalForm RationalForm::pow(int n) const {
  if (n == 0) return RationalForm(1);
  if (n < 0) {
    if (is_zero()) throw std::domain_error("negative power of zero");
    RationalForm inv(Raw{}, den_, num_);
    Rational lc = inv.den_.leading_coefficient();
    inv.num_ = inv.num_.scaled(1 / lc);
    inv.den_ = inv.den_.scaled(1 / lc);
    return inv.pow(-n);
  }
  auto k = static_cast<unsigned>(n);
  RationalForm r(Raw{}, num_.pow(k), den_.pow(k));
  Rational lc = r.den_.leading_coefficient();
  if (lc != 1) {
    r.num_ = r.num_.scaled(1 / lc);
    r.den_ = r.den_.scaled(1 / lc);
  }
  return r;
}

RationalForm RationalForm::derivative(std::size_t var) const {
  if (!den_.contains(var)) {
    return RationalForm(num_.derivative(var), den_);
  }
  // (n/d)' = (n' d - n d') / d^2, reduced through gcd(d, d').
  Polynomial dd = den_.derivative(var);
  Polynomial g = gcd(den_, dd);
  Polynomial d_over_g = *divide_exact(den_, g);
  Polynomial dd_over_g = *divide_exact(dd, g);
  Polynomial num = num_.derivative(var) * d_over_g - num_ * dd_over_g;
  return RationalForm(std::move(num), den_ * d_over_g);
}

RationalForm RationalForm::substitute(std::size_t var, const RationalForm& value) const {
  if (!contains(var)) return *this;
  // Homogenize: n(v/w) = N(v, w) / w^deg.
  auto apply = [&](const Polynomial& poly) {
    unsigned d = poly.degree(var);
    Polynomial result;
    for (unsigned k = 0; k <= d; ++k) {
      Polynomial c = poly.coefficient(var, k);
      if (c.is_zero()) continue;
      result += c * value.num().pow(k) * value.den().pow(d - k);
    }
    return std::make_pair(result, d);
  };
  auto [n, dn] = apply(num_);
  auto [m, dm] = apply(den_);
  if (dn >= dm) {
    m = m * value.den().pow(dn - dm);
  } else {
    n = n * value.den().pow(dm - dn);
  }
  return RationalForm(std::move(n), std::move(m));
}

double RationalForm::evaluate(std::span<const double> point) const {
  double d = den_.evaluate(point);
  if (d == 0.0) throw std::domain_error("denominator vanishes at evaluation point");
  return num_.evaluate(point) / d;
}

std::optional<CubeRootSplit> cube_root_split(const RationalForm& value) {
  if (value.is_zero()) return CubeRootSplit{Rational(0), RationalForm{}};
  auto n = cube_root_up_to_constant(value.num());
  if (!n) return std::nullopt;
  auto d = cube_root_up_to_constant(value.den());
  if (!d) return std::nullopt;
  return CubeRootSplit{n->first / d->first, RationalForm(n->second, d->second)};
}

}  // namespace jetode
