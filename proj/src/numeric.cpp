#include "jetode/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "jetode/errors.hpp"

namespace jetode {

namespace {

struct State {
  double u, p, q;
};

State add(const State& a, const State& b, double h) { return {a.u + h * b.u, a.p + h * b.p, a.q + h * b.q}; }

// Compiled evaluator: canonical forms when possible, trees otherwise.
std::function<double(const JetPoint&)> evaluator(const Expression& e) {
  if (!e.has_formal()) {
    RationalForm r = normalize(e);
    return [r](const JetPoint& pt) {
      auto c = pt.coords();
      try {
        return r.evaluate(c);
      } catch (const std::domain_error&) {
        throw Error(ErrorKind::SingularPoint, "denominator vanishes along the trajectory");
      }
    };
  }
  return [e](const JetPoint& pt) { return evaluate(e, pt); };
}

double hermite(double x0, double x1, double y0, double y1, double d0, double d1, double x) {
  double h = x1 - x0;
  double t = (x - x0) / h;
  double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * h * d0 + (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * h * d1;
}

}  // namespace

Trajectory rk4_solve(const ThirdOrderRhs& f, const JetPoint& ic, double x_end, double step,
                     const Rk4Options& options) {
  if (!(step > 0)) throw std::invalid_argument("rk4_solve: step must be positive");
  if (!(x_end > ic.x)) throw std::invalid_argument("rk4_solve: span must be increasing");
  auto n = static_cast<long>(std::ceil((x_end - ic.x) / step - 1e-9));
  n = std::max(n, 1L);
  double h = (x_end - ic.x) / static_cast<double>(n);

  auto rhs = [&](double x, const State& s) {
    return State{s.p, s.q, f(JetPoint{x, s.u, s.p, s.q})};
  };
  Trajectory traj;
  traj.step = h;
  traj.samples.reserve(static_cast<std::size_t>(n) + 1);
  traj.samples.push_back(ic);
  State s{ic.u, ic.p, ic.q};
  for (long i = 0; i < n; ++i) {
    double x = ic.x + static_cast<double>(i) * h;
    State k1 = rhs(x, s);
    State k2 = rhs(x + h / 2, add(s, k1, h / 2));
    State k3 = rhs(x + h / 2, add(s, k2, h / 2));
    State k4 = rhs(x + h, add(s, k3, h));
    s.u += h / 6 * (k1.u + 2 * k2.u + 2 * k3.u + k4.u);
    s.p += h / 6 * (k1.p + 2 * k2.p + 2 * k3.p + k4.p);
    s.q += h / 6 * (k1.q + 2 * k2.q + 2 * k3.q + k4.q);
    double norm = std::abs(s.u) + std::abs(s.p) + std::abs(s.q);
    if (!std::isfinite(norm) || norm > options.blowup_bound) {
      throw Error(ErrorKind::BlowUp, "solution exceeds the bound near x = " + std::to_string(x + h));
    }
    traj.samples.push_back(JetPoint{ic.x + static_cast<double>(i + 1) * h, s.u, s.p, s.q});
  }
  return traj;
}

Trajectory rk4_solve(const JetContext& ctx, const JetPoint& ic, double x_end, double step,
                     const Rk4Options& options) {
  return rk4_solve(evaluator(ctx.f()), ic, x_end, step, options);
}

double numeric_transform_check(const JetContext& ctx, const PointTransformation& t, double s,
                               const Trajectory& traj) {
  if (traj.samples.size() < 2) throw std::invalid_argument("numeric_transform_check: trajectory too short");
  Expression dphi = total_derivative(ctx, t.phi);
  Expression p1 = simplify(total_derivative(ctx, t.psi) / dphi);
  Expression p2 = simplify(total_derivative(ctx, p1) / dphi);
  auto phi = evaluator(t.phi), psi = evaluator(t.psi), pbar = evaluator(p1), qbar = evaluator(p2);

  std::vector<double> image;
  image.reserve(traj.samples.size());
  for (const auto& pt : traj.samples) image.push_back(phi(pt));
  double direction = image[1] > image[0] ? 1.0 : -1.0;
  for (std::size_t i = 1; i < image.size(); ++i) {
    if (!((image[i] - image[i - 1]) * direction > 0)) {
      throw Error(ErrorKind::NonMonotoneImage, "phi is not strictly monotone along the trajectory");
    }
  }
  std::vector<JetPoint> mapped;
  mapped.reserve(traj.samples.size());
  for (std::size_t i = 0; i < image.size(); ++i) {
    const JetPoint& pt = traj.samples[i];
    mapped.push_back(JetPoint{image[i], psi(pt), pbar(pt), qbar(pt)});
  }

  // Reflect a decreasing image: w(t) = u(-t) solves w''' = s w' - w.
  double sign = direction;
  auto canonical = [s, sign](const JetPoint& pt) { return s * pt.p + sign * pt.u; };
  auto reflect = [sign](const JetPoint& m) { return JetPoint{sign * m.x, m.u, sign * m.p, m.q}; };
  JetPoint start = reflect(mapped.front());
  double end = sign * mapped.back().x;
  double span = end - start.x;
  double step = std::min(traj.step, span / static_cast<double>(traj.samples.size() - 1));
  Trajectory reference = rk4_solve(canonical, start, end, step);

  const auto& ref = reference.samples;
  double worst = 0;
  for (const auto& m : mapped) {
    JetPoint r = reflect(m);
    double pos = (r.x - start.x) / reference.step;
    auto i = static_cast<std::size_t>(std::clamp(std::floor(pos), 0.0, static_cast<double>(ref.size() - 2)));
    double value = hermite(ref[i].x, ref[i + 1].x, ref[i].u, ref[i + 1].u, ref[i].p, ref[i + 1].p, r.x);
    worst = std::max(worst, std::abs(value - r.u));
  }
  return worst;
}

}  // namespace jetode
