#include "jetode/zero_test.hpp"

#include <cmath>

#include "jetode/errors.hpp"
#include "jetode/evaluate.hpp"

namespace jetode {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Zero: return "Zero";
    case Verdict::NonZero: return "NonZero";
    case Verdict::Unknown: return "Unknown";
  }
  return "?";
}

namespace {

enum class Reading { Small, Large, Borderline };

Reading classify(double v, const ZeroTestOptions& opt) {
  if (!std::isfinite(v)) return Reading::Borderline;
  double a = std::fabs(v);
  if (a < opt.eps_zero) return Reading::Small;
  if (a > opt.eps_nonzero) return Reading::Large;
  return Reading::Borderline;
}

}  // namespace

Verdict is_zero(const Expression& e, const ZeroTestOptions& options) {
  if (auto exact = exact_zero(e)) return *exact ? Verdict::Zero : Verdict::NonZero;

  Expression target = simplify(e);
  PointSampler sampler(options.seed);
  int accepted = 0;
  bool undecided = false;
  const int max_attempts = 50 * options.samples + 50;
  for (int attempt = 0; attempt < max_attempts && accepted < options.samples; ++attempt) {
    JetPoint pt = sampler.next();
    double v = 0;
    try {
      v = evaluate(target, pt, options.precision_bits);
    } catch (const Error&) {
      continue;  // singular or outside the ln domain; draw another point
    }
    ++accepted;
    Reading r = classify(v, options);
    if (r == Reading::Small) continue;
    // Confirm anything that is not clearly zero at higher precision.
    r = classify(evaluate(target, pt, options.confirm_bits), options);
    if (r == Reading::Large) return Verdict::NonZero;
    if (r == Reading::Borderline) undecided = true;
  }
  if (undecided || accepted < options.samples) return Verdict::Unknown;
  return Verdict::Zero;
}

}  // namespace jetode
