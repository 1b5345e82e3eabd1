#include "jetode/evaluate.hpp"

#include <cmath>
#include <unordered_map>

#include <mpfr.h>

#include "jetode/errors.hpp"

namespace jetode {

namespace {

/// Minimal owning MPFR value.
class BigFloat {
public:
  explicit BigFloat(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

private:
  mpfr_t v_;
};

class MpfrEvaluator {
public:
  MpfrEvaluator(const JetPoint& pt, mpfr_prec_t prec) : prec_(prec) {
    auto c = pt.coords();
    for (std::size_t i = 0; i < 4; ++i) {
      coords_.emplace_back(prec);
      mpfr_set_d(coords_.back().get(), c[i], MPFR_RNDN);
    }
  }

  BigFloat eval(const Expression& e) {
    using K = Expression::Kind;
    if (e.kind() == K::Constant) {
      BigFloat r(prec_);
      mpfr_set_q(r.get(), e.value().get_mpq_t(), MPFR_RNDN);
      return r;
    }
    if (e.kind() == K::Variable) return coords_[slot(e.var())];
    if (auto it = memo_.find(e.node_id()); it != memo_.end()) return it->second;
    BigFloat r(prec_);
    const auto& a = e.args();
    switch (e.kind()) {
      case K::Sum:
        for (const auto& t : a) {
          BigFloat v = eval(t);
          mpfr_add(r.get(), r.get(), v.get(), MPFR_RNDN);
        }
        break;
      case K::Product:
        mpfr_set_ui(r.get(), 1, MPFR_RNDN);
        for (const auto& t : a) {
          BigFloat v = eval(t);
          mpfr_mul(r.get(), r.get(), v.get(), MPFR_RNDN);
        }
        break;
      case K::Quotient: {
        BigFloat n = eval(a[0]);
        BigFloat d = eval(a[1]);
        if (mpfr_zero_p(d.get())) throw Error(ErrorKind::SingularPoint, "denominator vanishes");
        mpfr_div(r.get(), n.get(), d.get(), MPFR_RNDN);
        break;
      }
      case K::Power: {
        BigFloat b = eval(a[0]);
        if (mpfr_zero_p(b.get()) && e.exponent() < 0) {
          throw Error(ErrorKind::SingularPoint, "negative power of zero");
        }
        mpfr_pow_si(r.get(), b.get(), e.exponent(), MPFR_RNDN);
        break;
      }
      case K::Cbrt: {
        BigFloat b = eval(a[0]);
        mpfr_cbrt(r.get(), b.get(), MPFR_RNDN);
        break;
      }
      case K::Ln: {
        BigFloat b = eval(a[0]);
        if (mpfr_sgn(b.get()) <= 0) throw Error(ErrorKind::DomainError, "ln of a nonpositive value");
        mpfr_log(r.get(), b.get(), MPFR_RNDN);
        break;
      }
      default: break;
    }
    memo_.emplace(e.node_id(), r);
    return r;
  }

private:
  mpfr_prec_t prec_;
  std::vector<BigFloat> coords_;
  std::unordered_map<const void*, BigFloat> memo_;
};

class DoubleEvaluator {
public:
  explicit DoubleEvaluator(const JetPoint& pt) : coords_(pt.coords()) {}

  double eval(const Expression& e) {
    using K = Expression::Kind;
    if (e.kind() == K::Constant) return e.value().get_d();
    if (e.kind() == K::Variable) return coords_[slot(e.var())];
    if (auto it = memo_.find(e.node_id()); it != memo_.end()) return it->second;
    double r = 0;
    const auto& a = e.args();
    switch (e.kind()) {
      case K::Sum:
        for (const auto& t : a) r += eval(t);
        break;
      case K::Product:
        r = 1;
        for (const auto& t : a) r *= eval(t);
        break;
      case K::Quotient: {
        double d = eval(a[1]);
        if (d == 0.0) throw Error(ErrorKind::SingularPoint, "denominator vanishes");
        r = eval(a[0]) / d;
        break;
      }
      case K::Power: {
        double b = eval(a[0]);
        if (b == 0.0 && e.exponent() < 0) throw Error(ErrorKind::SingularPoint, "negative power of zero");
        r = std::pow(b, e.exponent());
        break;
      }
      case K::Cbrt: r = std::cbrt(eval(a[0])); break;
      case K::Ln: {
        double b = eval(a[0]);
        if (b <= 0) throw Error(ErrorKind::DomainError, "ln of a nonpositive value");
        r = std::log(b);
        break;
      }
      default: break;
    }
    memo_.emplace(e.node_id(), r);
    return r;
  }

private:
  std::array<double, 4> coords_;
  std::unordered_map<const void*, double> memo_;
};

}  // namespace

double evaluate(const Expression& e, const JetPoint& pt) {
  DoubleEvaluator ev(pt);
  return ev.eval(e);
}

double evaluate(const Expression& e, const JetPoint& pt, unsigned precision_bits) {
  if (precision_bits <= 53) return evaluate(e, pt);
  MpfrEvaluator ev(pt, static_cast<mpfr_prec_t>(precision_bits));
  BigFloat r = ev.eval(e);
  return mpfr_get_d(r.get(), MPFR_RNDN);
}

PointSampler::PointSampler(std::uint64_t seed) : state_(seed) {}

double PointSampler::coordinate() {
  // splitmix64: fixed output for a given seed on every platform.
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z ^= z >> 31;
  double magnitude = 0.25 + 2.75 * static_cast<double>(z >> 44) / static_cast<double>(1ULL << 20);
  return (z & 1u) ? -magnitude : magnitude;
}

JetPoint PointSampler::next() {
  JetPoint pt;
  pt.x = coordinate();
  pt.u = coordinate();
  pt.p = coordinate();
  pt.q = coordinate();
  return pt;
}

}  // namespace jetode
