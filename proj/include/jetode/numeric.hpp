#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "jetode/linearizer.hpp"

namespace jetode {

/// Samples of a solution at uniformly spaced, strictly increasing abscissae.
struct Trajectory {
  std::vector<JetPoint> samples;  // (x, u, u', u'')
  double step = 0;
  std::string method = "rk4";
};

struct Rk4Options {
  /// Error(BlowUp) once |u| + |u'| + |u''| exceeds this bound.
  double blowup_bound = 1e12;
};

using ThirdOrderRhs = std::function<double(const JetPoint&)>;

/// Classical fourth-order Runge-Kutta on (u, u', u'')' = (u', u'', f) over
/// [ic.x, x_end]. The step is shrunk so that it divides the span evenly.
Trajectory rk4_solve(const ThirdOrderRhs& f, const JetPoint& ic, double x_end, double step,
                     const Rk4Options& options = {});
Trajectory rk4_solve(const JetContext& ctx, const JetPoint& ic, double x_end, double step,
                     const Rk4Options& options = {});

/// Maps every sample of traj through (phi, psi) and the induced first and
/// second derivatives, integrates u''' = s u' + u from the first mapped jet
/// and returns the largest deviation of the mapped u from that solution
/// (cubic Hermite interpolation at the mapped abscissae). Throws
/// Error(NonMonotoneImage) when phi is not strictly monotone along traj.
double numeric_transform_check(const JetContext& ctx, const PointTransformation& t, double s,
                               const Trajectory& traj);

}  // namespace jetode
