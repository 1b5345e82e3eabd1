#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "jetode/evaluate.hpp"
#include "jetode/jet.hpp"
#include "jetode/zero_test.hpp"

namespace jetode {

struct NamedInvariant {
  std::string name;
  Expression value;
  Verdict verdict = Verdict::Unknown;
};

/// Scalar K = I8 / J^4 carried as the rational pair (N, I3):
/// K = N / (3 I3^(8/3)). The partial K_z vanishes exactly when
/// 3 N_z I3 - 8 N (I3)_z does.
struct KData {
  RationalForm N;
  RationalForm I3;
  /// Proportional to K_q, K_p, K_u, K_x (the invariants I9..I12).
  std::array<RationalForm, 4> conditions;
  std::array<Verdict, 4> verdicts{};

  bool constant() const;
  /// K^3 = N^3 / (27 I3^8), a rational constant when K is constant.
  std::optional<Rational> cube() const;
  /// K itself when K^3 is the cube of a rational.
  std::optional<Rational> exact() const;
};

/// Every invariant of the five-symmetry test. Rational quantities are kept as
/// canonical forms with exact verdicts; quantities involving J = cbrt(I3) are
/// formal expressions whose verdicts come from cube-root-free equivalents:
///   I4 = (I3)_q / (3 J^2)
///   I5 = (f_qq I3 - 2 (I3)_p) / J^2
///   I6 = (3 I3 ((I3)_u - D (I3)_p) + 2 (I3)_p D I3) / (9 J^5)
///   I8 = N / (3 J^4)
/// All fields involving J are empty when I3 vanishes identically.
struct InvariantReport {
  RationalForm f;
  RationalForm s1;  // f_q
  RationalForm s2;  // 2 f_q^2 + 9 f_p - 3 D f_q
  RationalForm s3;  // f_qq
  RationalForm I1;  // f_qqq
  RationalForm I2;  // f_qq^2 + 6 f_pqq
  RationalForm I3;  // (2 s1 s2 - 3 D s2 + 54 f_u) / 54
  RationalForm I7;

  Expression J;
  Expression s4;  // 3 D J - J f_q
  Expression I4, I5, I6, I8, K;
  /// Numerators of I4, I5, I6 above, in that order.
  std::array<RationalForm, 3> torsion_conditions;
  std::optional<KData> k;

  std::array<NamedInvariant, 2> contact_set;
  std::array<NamedInvariant, 4> point7_set;
  /// I1..I12 and K in display order, each with its verdict.
  std::vector<NamedInvariant> table;
  /// Set when I3 or its denominator has nonconstant factors.
  std::optional<std::string> singular_locus;

  bool i3_zero() const { return I3.is_zero(); }
  const NamedInvariant& entry(const std::string& name) const;
};

/// Throws Error(NonRational) for f with cbrt/ln nodes.
InvariantReport compute_invariants(const JetContext& ctx);

/// Exact verdicts for I4, I5, I6. Throws Error(DegenerateI3) if I3 = 0.
std::array<Verdict, 3> vanishing_I4_I5_I6(const InvariantReport& report);

/// Throws Error(DegenerateI3) if I3 = 0.
const KData& k_constancy(const InvariantReport& report);

/// N / (3 I3^(8/3)) at the point using the real cube root. Throws
/// Error(SingularPoint) where I3 or a denominator vanishes.
double evaluate_K(const InvariantReport& report, const JetPoint& point, unsigned precision_bits = 128);

/// f_qqq, f_qq^2 + 6 f_pqq, the Wuenschmann expression, and I7.
std::array<NamedInvariant, 4> seven_point_set(const JetContext& ctx);

/// f_qqqq and the Wuenschmann invariant
/// 4 f_q^3 + 18 f_q (f_p - D f_q) + 9 D^2 f_q + 54 f_u - 27 D f_p.
std::array<NamedInvariant, 2> contact_set(const JetContext& ctx);

inline Verdict exact_verdict(const RationalForm& r) { return r.is_zero() ? Verdict::Zero : Verdict::NonZero; }

}  // namespace jetode
