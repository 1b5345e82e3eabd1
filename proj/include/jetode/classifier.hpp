#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jetode/invariants.hpp"

namespace jetode {

enum class Outcome {
  SevenPointLinearizable,
  SevenContactLinearizableOnly,
  FivePointLinearizable,
  OutsideClassifiedBranches,
};

const char* to_string(Outcome o);

struct ClassifierOptions {
  ZeroTestOptions zero;
  /// Report SevenContactLinearizableOnly when contact linearizability is the
  /// only positive finding. Off by default: the flag is reported alongside
  /// OutsideClassifiedBranches instead.
  bool contact_only_outcome = false;
};

struct Classification {
  Outcome outcome = Outcome::OutsideClassifiedBranches;
  /// Canonical constant for FivePointLinearizable: numeric value, K^3 as an
  /// exact rational, and K itself when K^3 is a rational cube.
  std::optional<double> s;
  std::optional<Rational> s_cubed;
  std::optional<Rational> exact_s;
  bool contact_linearizable = false;
  /// Set when some decisive verdict was Unknown; the outcome is then
  /// OutsideClassifiedBranches.
  bool undecided = false;
  std::vector<std::pair<std::string, Verdict>> diagnostics;
  std::vector<std::string> reasons;
  std::optional<std::string> singular_locus_note;
  InvariantReport report;

  /// s as an expression: the rational value or cbrt of s^3.
  std::optional<Expression> s_expression() const;
};

Classification classify(const JetContext& ctx, const ClassifierOptions& options = {});

/// k / l^(2/3) with the real cube root: the constant of the canonical form
/// equivalent to u''' = k u' + l u. Throws Error(ZeroL) for l = 0.
double s_from_kl(const Rational& k, const Rational& l);

}  // namespace jetode
