#include "jetode/classifier.hpp"

#include <cassert>
#include <cmath>

#include "jetode/errors.hpp"

namespace jetode {

namespace {

bool all_zero(const auto& set) {
  for (const auto& inv : set) {
    if (inv.verdict != Verdict::Zero) return false;
  }
  return true;
}

// Numeric K at the first sampled point where I3 and all denominators are
// nonzero.
double sample_K(const InvariantReport& report, const ZeroTestOptions& zero) {
  PointSampler sampler(zero.seed);
  for (int attempt = 0; attempt < 50 * zero.samples + 50; ++attempt) {
    try {
      double k = evaluate_K(report, sampler.next(), zero.precision_bits);
      if (std::isfinite(k)) return k;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::SingularPoint && e.kind() != ErrorKind::DomainError) throw;
    }
  }
  throw Error(ErrorKind::SingularPoint, "no nonsingular sample point for K");
}

}  // namespace

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::SevenPointLinearizable: return "SevenPointLinearizable";
    case Outcome::SevenContactLinearizableOnly: return "SevenContactLinearizableOnly";
    case Outcome::FivePointLinearizable: return "FivePointLinearizable";
    case Outcome::OutsideClassifiedBranches: return "OutsideClassifiedBranches";
  }
  return "?";
}

std::optional<Expression> Classification::s_expression() const {
  if (exact_s) return Expression(*exact_s);
  if (s_cubed) return Expression::cbrt(Expression(*s_cubed));
  return std::nullopt;
}

Classification classify(const JetContext& ctx, const ClassifierOptions& options) {
  Classification c;
  c.report = compute_invariants(ctx);
  const InvariantReport& r = c.report;
  c.singular_locus_note = r.singular_locus;

  for (const auto& inv : r.point7_set) c.diagnostics.emplace_back("point7:" + inv.name, inv.verdict);
  for (const auto& inv : r.contact_set) c.diagnostics.emplace_back("contact:" + inv.name, inv.verdict);
  for (const auto& inv : r.table) c.diagnostics.emplace_back(inv.name, inv.verdict);

  c.contact_linearizable = all_zero(r.contact_set);
  if (all_zero(r.point7_set)) {
    // The third member is 54 I3, so this branch never meets the five-point one.
    assert(r.i3_zero());
    c.outcome = Outcome::SevenPointLinearizable;
    return c;
  }

  // Each branch level lists all of its failures; the first is decisive.
  auto fail = [&] {
    c.outcome = c.contact_linearizable && options.contact_only_outcome ? Outcome::SevenContactLinearizableOnly
                                                                       : Outcome::OutsideClassifiedBranches;
    return c;
  };
  auto check = [&](const std::string& name, const std::string& label) {
    Verdict v = r.entry(name).verdict;
    if (v == Verdict::Unknown) {
      c.undecided = true;
      c.reasons.push_back("undecided: " + name);
    } else if (v == Verdict::NonZero) {
      c.reasons.push_back(label + " is not identically zero");
    }
  };

  check("I1", "I1");
  check("I2", "I2");
  if (r.i3_zero()) c.reasons.push_back("I3 vanishes identically");
  if (!c.reasons.empty()) return fail();
  for (const char* name : {"I4", "I5", "I6"}) check(name, name);
  if (!c.reasons.empty()) return fail();
  check("I7", "I7");
  std::size_t before = c.reasons.size();
  check("I9", "I9 = K_q");
  check("I10", "I10 = K_p");
  check("I11", "I11 = K_u");
  check("I12", "I12 = K_x");
  if (c.reasons.size() > before && !c.undecided) c.reasons.insert(c.reasons.begin() + before, "K is not constant");
  if (!c.reasons.empty()) return fail();

  const KData& k = k_constancy(r);
  c.outcome = Outcome::FivePointLinearizable;
  c.s_cubed = k.cube();
  c.exact_s = k.exact();
  c.s = sample_K(r, options.zero);
  return c;
}

double s_from_kl(const Rational& k, const Rational& l) {
  if (sgn(l) == 0) throw Error(ErrorKind::ZeroL, "l must be nonzero");
  Expression s = Expression(k) / pow(Expression::cbrt(Expression(l)), 2);
  return evaluate(s, JetPoint{}, 128);
}

}  // namespace jetode
