#include "jetode/polynomial.hpp"

#include <algorithm>
#include <map>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace jetode {

namespace {

std::optional<mpz_class> integer_cbrt(const mpz_class& value) {
  mpz_class root;
  mpz_class magnitude = abs(value);
  if (mpz_root(root.get_mpz_t(), magnitude.get_mpz_t(), 3) == 0) {
    return std::nullopt;
  }
  return sgn(value) < 0 ? mpz_class(-root) : root;
}

}  // namespace

std::optional<Rational> rational_cbrt(const Rational& value) {
  auto num = integer_cbrt(value.get_num());
  if (!num) return std::nullopt;
  auto den = integer_cbrt(value.get_den());
  if (!den) return std::nullopt;
  Rational result(*num, *den);
  result.canonicalize();
  return result;
}

// ---------------------------------------------------------------------------
// Monomial
// ---------------------------------------------------------------------------

Monomial Monomial::variable(std::size_t var, unsigned power) {
  Monomial m;
  m.set_exponent(var, power);
  return m;
}

void Monomial::set_exponent(std::size_t var, unsigned power) {
  degree_ = degree_ - exps_[var] + power;
  exps_[var] = static_cast<std::uint16_t>(power);
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial m;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    m.exps_[i] = static_cast<std::uint16_t>(exps_[i] + other.exps_[i]);
  }
  m.degree_ = degree_ + other.degree_;
  return m;
}

bool Monomial::divides(const Monomial& other) const {
  if (degree_ > other.degree_) return false;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    if (exps_[i] > other.exps_[i]) return false;
  }
  return true;
}

Monomial Monomial::quotient_of(const Monomial& other) const {
  Monomial m;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    m.exps_[i] = static_cast<std::uint16_t>(other.exps_[i] - exps_[i]);
  }
  m.degree_ = other.degree_ - degree_;
  return m;
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    m.exps_[i] = std::min(a.exps_[i], b.exps_[i]);
    m.degree_ += m.exps_[i];
  }
  return m;
}

int compare(const Monomial& a, const Monomial& b) {
  if (a.degree_ != b.degree_) return a.degree_ < b.degree_ ? -1 : 1;
  for (std::size_t i = kMaxVars; i-- > 0;) {
    if (a.exps_[i] != b.exps_[i]) return a.exps_[i] < b.exps_[i] ? -1 : 1;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Polynomial
// ---------------------------------------------------------------------------

Polynomial::Polynomial(const Rational& constant) {
  if (sgn(constant) != 0) terms_.push_back({Monomial{}, constant});
}

Polynomial Polynomial::variable(std::size_t var) {
  return term(Monomial::variable(var), Rational(1));
}

Polynomial Polynomial::term(const Monomial& m, const Rational& c) {
  Polynomial p;
  if (sgn(c) != 0) p.terms_.push_back({m, c});
  return p;
}

Polynomial Polynomial::from_unsorted(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
    return compare(a.monomial, b.monomial) > 0;
  });
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().monomial == t.monomial) {
      out.back().coeff += t.coeff;
    } else {
      if (!out.empty() && sgn(out.back().coeff) == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && sgn(out.back().coeff) == 0) out.pop_back();
  return Polynomial(std::move(out));
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.front().monomial.is_one());
}

Rational Polynomial::constant_value() const {
  if (terms_.empty()) return Rational(0);
  return terms_.back().monomial.is_one() ? terms_.back().coeff : Rational(0);
}

unsigned Polynomial::degree(std::size_t var) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.monomial.exponent(var));
  return d;
}

unsigned Polynomial::total_degree() const {
  return terms_.empty() ? 0 : terms_.front().monomial.degree();
}

unsigned Polynomial::min_total_degree() const {
  unsigned d = terms_.empty() ? 0 : terms_.front().monomial.degree();
  for (const auto& t : terms_) d = std::min(d, t.monomial.degree());
  return d;
}

unsigned Polynomial::used_vars() const {
  unsigned mask = 0;
  for (const auto& t : terms_) {
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      if (t.monomial.exponent(i) != 0) mask |= 1u << i;
    }
  }
  return mask;
}

Polynomial Polynomial::coefficient(std::size_t var, unsigned k) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.monomial.exponent(var) == k) {
      Monomial m = t.monomial;
      m.set_exponent(var, 0);
      out.push_back({m, t.coeff});
    }
  }
  // Removing one slot uniformly can reorder terms.
  return from_unsorted(std::move(out));
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

namespace {

template <typename Combine>
std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b,
                              Combine combine) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    int c = 0;
    if (i == a.size()) {
      c = -1;
    } else if (j == b.size()) {
      c = 1;
    } else {
      c = compare(a[i].monomial, b[j].monomial);
    }
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back({b[j].monomial, combine(Rational(0), b[j].coeff)});
      ++j;
    } else {
      Rational sum = combine(a[i].coeff, b[j].coeff);
      if (sgn(sum) != 0) out.push_back({a[i].monomial, sum});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  terms_ = merge_terms(terms_, other.terms_,
                       [](const Rational& x, const Rational& y) { return Rational(x + y); });
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  terms_ = merge_terms(terms_, other.terms_,
                       [](const Rational& x, const Rational& y) { return Rational(x - y); });
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.is_constant()) return b.scaled(a.constant_value());
  if (b.is_constant()) return a.scaled(b.constant_value());
  std::vector<Term> out;
  out.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& s : a.terms_) {
    for (const auto& t : b.terms_) {
      out.push_back({s.monomial * t.monomial, s.coeff * t.coeff});
    }
  }
  return Polynomial::from_unsorted(std::move(out));
}

Polynomial Polynomial::scaled(const Rational& c) const {
  if (sgn(c) == 0) return {};
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

Polynomial Polynomial::pow(unsigned n) const {
  Polynomial result(1);
  Polynomial base = *this;
  while (n > 0) {
    if (n & 1u) result = result * base;
    n >>= 1u;
    if (n > 0) base = base * base;
  }
  return result;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    unsigned e = t.monomial.exponent(var);
    if (e == 0) continue;
    Monomial m = t.monomial;
    m.set_exponent(var, e - 1);
    out.push_back({m, t.coeff * e});
  }
  return from_unsorted(std::move(out));
}

Polynomial Polynomial::substitute(std::size_t var, const Polynomial& value) const {
  unsigned d = degree(var);
  if (d == 0) return *this;
  // Horner in var.
  Polynomial result = coefficient(var, d);
  for (unsigned k = d; k-- > 0;) {
    result = result * value + coefficient(var, k);
  }
  return result;
}

Polynomial Polynomial::monic() const {
  if (terms_.empty()) return *this;
  Rational lc = leading_coefficient();
  if (lc == 1) return *this;
  Rational inv = 1 / lc;
  return scaled(inv);
}

double Polynomial::evaluate(std::span<const double> point) const {
  double sum = 0.0;
  for (const auto& t : terms_) {
    double v = t.coeff.get_d();
    for (std::size_t i = 0; i < point.size() && i < kMaxVars; ++i) {
      unsigned e = t.monomial.exponent(i);
      if (e != 0) v *= std::pow(point[i], static_cast<int>(e));
    }
    sum += v;
  }
  return sum;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (!(a.terms_[i].monomial == b.terms_[i].monomial) ||
        a.terms_[i].coeff != b.terms_[i].coeff) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Division and GCD
// ---------------------------------------------------------------------------

std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.is_zero()) return Polynomial{};
  if (b.is_constant()) return a.scaled(1 / b.constant_value());
  const Term& lead = b.leading_term();
  Rational inv_lead = 1 / lead.coeff;
  // Remainder keyed in decreasing order so begin() is its leading term.
  auto greater = [](const Monomial& x, const Monomial& y) { return compare(x, y) > 0; };
  std::map<Monomial, Rational, decltype(greater)> remainder(greater);
  for (const auto& t : a.terms()) remainder.emplace(t.monomial, t.coeff);
  std::vector<Term> quotient;
  while (!remainder.empty()) {
    auto top = remainder.begin();
    if (!lead.monomial.divides(top->first)) return std::nullopt;
    Term t{lead.monomial.quotient_of(top->first), top->second * inv_lead};
    for (const auto& bt : b.terms()) {
      Monomial m = bt.monomial * t.monomial;
      Rational c = bt.coeff * t.coeff;
      auto [it, inserted] = remainder.try_emplace(m, -c);
      if (!inserted) {
        it->second -= c;
        if (sgn(it->second) == 0) remainder.erase(it);
      }
    }
    quotient.push_back(std::move(t));
  }
  // Quotient terms were produced in strictly decreasing order.
  return Polynomial::from_unsorted(std::move(quotient));
}

namespace {

int highest_var(unsigned mask) {
  for (int i = static_cast<int>(kMaxVars) - 1; i >= 0; --i) {
    if (mask & (1u << i)) return i;
  }
  return -1;
}

Polynomial content_in(const Polynomial& a, std::size_t var);

Polynomial primitive_part(const Polynomial& a, std::size_t var) {
  Polynomial c = content_in(a, var);
  if (c.is_constant()) return a.monic();
  return divide_exact(a, c)->monic();
}

// Pseudo-remainder of a by b in var; the leading-coefficient power is
// dropped because callers only use the primitive part.
Polynomial sparse_prem(Polynomial a, const Polynomial& b, std::size_t var) {
  unsigned n = b.degree(var);
  Polynomial lb = b.coefficient(var, n);
  while (!a.is_zero()) {
    unsigned d = a.degree(var);
    if (d < n) break;
    Polynomial la = a.coefficient(var, d);
    Polynomial shift = Polynomial::term(Monomial::variable(var, d - n), Rational(1));
    a = lb * a - la * shift * b;
  }
  return a;
}

Polynomial gcd_impl(const Polynomial& a, const Polynomial& b);

Polynomial content_in(const Polynomial& a, std::size_t var) {
  unsigned d = a.degree(var);
  Polynomial g;
  for (unsigned k = 0; k <= d; ++k) {
    Polynomial c = a.coefficient(var, k);
    if (c.is_zero()) continue;
    g = gcd_impl(g, c);
    if (g.is_constant()) return Polynomial(1);
  }
  return g;
}

Polynomial monomial_gcd(const Monomial& m, const Polynomial& other) {
  Monomial g = m;
  for (const auto& t : other.terms()) {
    g = Monomial::gcd(g, t.monomial);
    if (g.is_one()) break;
  }
  return Polynomial::term(g, Rational(1));
}

// gcd(a, b) when `extra` holds variables of a that b lacks: the gcd of b with
// every coefficient of a viewed as a polynomial in the extra variables.
Polynomial gcd_over_coefficients(const Polynomial& a, unsigned extra, const Polynomial& b) {
  auto less = [](const Monomial& x, const Monomial& y) { return compare(x, y) < 0; };
  std::map<Monomial, std::vector<Term>, decltype(less)> groups(less);
  for (const auto& t : a.terms()) {
    Monomial key;
    Monomial rest = t.monomial;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      if (extra & (1u << i)) {
        key.set_exponent(i, t.monomial.exponent(i));
        rest.set_exponent(i, 0);
      }
    }
    groups[key].push_back(Term{rest, t.coeff});
  }
  std::vector<Polynomial> coefficients;
  coefficients.reserve(groups.size());
  for (auto& [key, terms] : groups) coefficients.push_back(Polynomial::from_unsorted(std::move(terms)));
  std::sort(coefficients.begin(), coefficients.end(),
            [](const Polynomial& x, const Polynomial& y) { return x.terms().size() < y.terms().size(); });
  Polynomial g = b.monic();
  for (const auto& c : coefficients) {
    g = gcd_impl(g, c);
    if (g.is_constant()) return Polynomial(1);
  }
  return g;
}

Polynomial gcd_impl(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Polynomial(1);
  if (a.is_monomial()) return monomial_gcd(a.leading_term().monomial, b);
  if (b.is_monomial()) return monomial_gcd(b.leading_term().monomial, a);
  if (a.monic() == b.monic()) return a.monic();

  unsigned ma = a.used_vars();
  unsigned mb = b.used_vars();
  if ((ma & mb) == 0) return Polynomial(1);
  int v = highest_var(ma & mb);
  // Variables present in only one operand divide out through its content.
  if (ma & ~mb) return gcd_over_coefficients(a, ma & ~mb, b);
  if (mb & ~ma) return gcd_over_coefficients(b, mb & ~ma, a);

  auto var = static_cast<std::size_t>(v);
  Polynomial ca = content_in(a, var);
  Polynomial cb = content_in(b, var);
  Polynomial c = gcd_impl(ca, cb);
  Polynomial pa = ca.is_constant() ? a : *divide_exact(a, ca);
  Polynomial pb = cb.is_constant() ? b : *divide_exact(b, cb);
  if (pa.degree(var) < pb.degree(var)) std::swap(pa, pb);

  // Quick exits: one primitive part divides the other.
  if (divide_exact(pa, pb)) return (c * pb).monic();

  while (true) {
    Polynomial r = sparse_prem(pa, pb, var);
    if (r.is_zero()) break;
    if (r.degree(var) == 0) {
      pb = Polynomial(1);
      break;
    }
    pa = std::move(pb);
    pb = primitive_part(r, var);
  }
  return (c * primitive_part(pb, var)).monic();
}

}  // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) { return gcd_impl(a, b); }

std::optional<std::pair<Rational, Polynomial>> cube_root_up_to_constant(const Polynomial& p) {
  if (p.is_zero()) return std::make_pair(Rational(0), Polynomial{});
  Rational c = p.leading_coefficient();
  Polynomial target = p.monic();
  const Monomial& lead = target.leading_term().monomial;
  Monomial root_lead;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    if (lead.exponent(i) % 3 != 0) return std::nullopt;
    root_lead.set_exponent(i, lead.exponent(i) / 3);
  }
  // Every term of the root has total degree at least a third of the
  // target's lowest total degree.
  unsigned low = target.min_total_degree();
  Polynomial root = Polynomial::term(root_lead, Rational(1));
  Polynomial three_lead_sq = Polynomial::term(root_lead * root_lead, Rational(3));
  const Term& denom = three_lead_sq.leading_term();
  for (int guard = 0; guard < 100000; ++guard) {
    Polynomial residual = target - root.pow(3);
    if (residual.is_zero()) return std::make_pair(c, root);
    const Term& r = residual.leading_term();
    if (!denom.monomial.divides(r.monomial)) return std::nullopt;
    Monomial next = denom.monomial.quotient_of(r.monomial);
    if (3 * next.degree() < low) return std::nullopt;
    if (compare(next, root.terms().back().monomial) >= 0) return std::nullopt;
    root += Polynomial::term(next, r.coeff / denom.coeff);
  }
  return std::nullopt;
}

}  // namespace jetode
