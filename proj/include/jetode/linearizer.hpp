#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jetode/classifier.hpp"

namespace jetode {

/// x' = phi(x, u), u' = psi(x, u).
struct PointTransformation {
  Expression phi;
  Expression psi;
  /// phi_x psi_u - phi_u psi_x; never identically zero for a returned map.
  Expression jacobian_condition;
};

/// Builds the transformation and checks its Jacobian condition. Throws
/// Error(DegenerateJacobian) when it vanishes identically.
PointTransformation make_transformation(const Expression& phi, const Expression& psi,
                                        const ZeroTestOptions& zero = {});

/// Defined up to a nonzero constant factor, fixed to 1.
struct GaugeFunction {
  Expression a1;
};

/// Rational part plus a combination of logarithms of coordinates:
/// rational + sum_v logs[v] * ln(v).
struct LogRational {
  RationalForm rational;
  std::map<Var, RationalForm> logs;

  bool has_logs() const { return !logs.empty(); }
  LogRational derivative(Var v) const;
  Expression to_expression() const;
  friend LogRational operator+(LogRational a, const LogRational& b);
};

/// Term-wise antiderivative of a Laurent polynomial in v whose coefficients
/// are rational in the other coordinates; v^-1 integrates to ln(v) and the
/// constant of integration is 0. Throws Error(IntegrationUnsupported) when
/// the denominator is not a power of v times a v-free factor.
LogRational integrate_laurent(const RationalForm& e, Var v);
Expression integrate_restricted(const RationalForm& e, Var v);

/// Potential of the closed form a dx + b du with a, b rational in (x, u).
/// Throws Error(NotClosed) when a_u != b_x.
LogRational integrate_closed_form(const RationalForm& a, const RationalForm& b);

/// J as a constant cube root times a rational function: J = kappa * root
/// with kappa^3 = cube. Throws Error(IntegrationUnsupported) when I3 is not a
/// constant times a cube.
struct RationalJ {
  Rational cube;
  std::optional<Rational> kappa;  // when cube is a rational cube
  RationalForm root;

  Expression kappa_expression() const;
  Expression to_expression() const;
};
RationalJ split_J(const InvariantReport& report);

/// phi with D phi = J. Errors: DegenerateI3, NotClosed, IntegrationUnsupported.
Expression recover_phi(const InvariantReport& report);

/// a1 with D(ln a1) = s4 / (3 J). Errors: NotAffineInQ, NotClosed,
/// IntegrationUnsupported.
GaugeFunction recover_a1(const JetContext& ctx, const InvariantReport& report);

/// psi from phi_x psi_u - phi_u psi_x = a1 J. Errors: RhsNotBase,
/// ManualCompletionNeeded, IntegrationUnsupported.
Expression recover_psi(const InvariantReport& report, const Expression& phi, const GaugeFunction& a1);

struct Verification {
  Expression residual;
  Verdict verdict = Verdict::Unknown;
};

/// Residual r - s p - psi where p, q, r are the first three derivatives of
/// psi with respect to phi along solutions. Zero certifies the map.
/// Throws Error(DegenerateJacobian) when D phi vanishes identically.
Verification verify_linearization(const JetContext& ctx, const PointTransformation& t, const Expression& s,
                                  const ZeroTestOptions& zero = {});

/// First transformation with zero residual among (phi, psi), (phi, -psi),
/// (-phi, psi), (-phi, -psi), after normalizing psi to a positive leading
/// coefficient. Throws NoGaugeWorks listing every residual.
PointTransformation gauge_search(const JetContext& ctx, const PointTransformation& candidate, const Expression& s,
                                 const ZeroTestOptions& zero = {});

struct Linearization {
  PointTransformation transformation;
  GaugeFunction a1;
  Expression residual;
  Verdict verdict = Verdict::Unknown;
};

/// Full recovery chain for a FivePointLinearizable classification.
Linearization linearize(const JetContext& ctx, const Classification& c, const ZeroTestOptions& zero = {});

}  // namespace jetode
