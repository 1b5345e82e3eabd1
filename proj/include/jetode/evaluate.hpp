#pragma once

#include <array>
#include <cstdint>

#include "jetode/expression.hpp"

namespace jetode {

/// A point (x, u, u', u'') of the second-order jet space.
struct JetPoint {
  double x = 0;
  double u = 0;
  double p = 0;
  double q = 0;

  std::array<double, 4> coords() const { return {x, u, p, q}; }
};

/// Double-precision evaluation. Throws Error(SingularPoint) on a vanishing
/// denominator and Error(DomainError) for ln of a nonpositive value.
double evaluate(const Expression& e, const JetPoint& pt);

/// Evaluation carried out in MPFR at the given precision, rounded to double
/// at the end. Same error contract as the double overload.
double evaluate(const Expression& e, const JetPoint& pt, unsigned precision_bits);

/// Draws jet points with every coordinate in [-3, -0.25] U [0.25, 3]. Values
/// are dyadic, so they are exact at every precision.
class PointSampler {
public:
  explicit PointSampler(std::uint64_t seed);
  JetPoint next();
  double coordinate();

private:
  std::uint64_t state_;
};

}  // namespace jetode
