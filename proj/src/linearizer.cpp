#include "jetode/linearizer.hpp"

#include <stdexcept>

#include "jetode/errors.hpp"

namespace jetode {

namespace {

const RationalForm kP = RationalForm::variable(slot(Var::P));

bool free_of_pq(const RationalForm& r) { return !r.contains(slot(Var::P)) && !r.contains(slot(Var::Q)); }

LogRational scaled(LogRational value, const Rational& c) {
  value.rational *= RationalForm(c);
  for (auto& [v, coeff] : value.logs) coeff *= RationalForm(c);
  return value;
}

void drop_zero_logs(LogRational& value) {
  std::erase_if(value.logs, [](const auto& entry) { return entry.second.is_zero(); });
}

struct Checked {
  Verification verification;
  PointTransformation transformation;
};

RationalForm rational_total_derivative(const JetContext& ctx, const RationalForm& e) {
  return total_derivative(ctx, e);
}

}  // namespace

LogRational LogRational::derivative(Var v) const {
  LogRational d;
  d.rational = rational.derivative(slot(v));
  for (const auto& [w, coeff] : logs) {
    RationalForm c = coeff.derivative(slot(v));
    if (!c.is_zero()) d.logs[w] = c;
    if (w == v) d.rational += coeff / RationalForm::variable(slot(v));
  }
  return d;
}

Expression LogRational::to_expression() const {
  std::vector<Expression> terms{embed(rational)};
  for (const auto& [v, coeff] : logs) terms.push_back(embed(coeff) * Expression::ln(Expression::variable(v)));
  return Expression::sum(std::move(terms));
}

LogRational operator+(LogRational a, const LogRational& b) {
  a.rational += b.rational;
  for (const auto& [v, coeff] : b.logs) a.logs[v] += coeff;
  drop_zero_logs(a);
  return a;
}

LogRational integrate_laurent(const RationalForm& e, Var v) {
  LogRational result;
  if (e.is_zero()) return result;
  const std::size_t s = slot(v);
  const Polynomial& den = e.den();
  unsigned k = den.terms().front().monomial.exponent(s);
  for (const auto& t : den.terms()) {
    if (t.monomial.exponent(s) != k) {
      throw Error(ErrorKind::IntegrationUnsupported,
                  to_string(embed(e)) + " is not a Laurent polynomial in " + var_name(v));
    }
  }
  Polynomial den0 = *divide_exact(den, Polynomial::variable(s).pow(k));
  const Polynomial& num = e.num();
  for (unsigned j = 0; j <= num.degree(s); ++j) {
    Polynomial nj = num.coefficient(s, j);
    if (nj.is_zero()) continue;
    RationalForm coeff(nj, den0);
    int power = static_cast<int>(j) - static_cast<int>(k);
    if (power == -1) {
      result.logs[v] += coeff;
    } else {
      result.rational += coeff * RationalForm::variable(s).pow(power + 1) / RationalForm(power + 1);
    }
  }
  drop_zero_logs(result);
  return result;
}

Expression integrate_restricted(const RationalForm& e, Var v) { return integrate_laurent(e, v).to_expression(); }

LogRational integrate_closed_form(const RationalForm& a, const RationalForm& b) {
  if (!(a.derivative(slot(Var::U)) == b.derivative(slot(Var::X)))) {
    throw Error(ErrorKind::NotClosed, "(" + to_string(embed(a)) + ") dx + (" + to_string(embed(b)) + ") du is not closed");
  }
  LogRational first = integrate_laurent(a, Var::X);
  LogRational du = first.derivative(Var::U);
  if (du.has_logs()) throw Error(ErrorKind::NotClosed, "logarithmic terms fail to close");
  RationalForm rest = b - du.rational;
  if (rest.contains(slot(Var::X))) throw Error(ErrorKind::NotClosed, "u-component depends on x after integration");
  return first + integrate_laurent(rest, Var::U);
}

Expression RationalJ::kappa_expression() const {
  if (kappa) return Expression(*kappa);
  return Expression::cbrt(Expression(cube));
}

Expression RationalJ::to_expression() const {
  if (kappa) return embed(RationalForm(*kappa) * root);
  return kappa_expression() * embed(root);
}

RationalJ split_J(const InvariantReport& report) {
  if (report.i3_zero()) throw Error(ErrorKind::DegenerateI3, "I3 vanishes identically");
  auto split = cube_root_split(report.I3);
  if (!split) {
    throw Error(ErrorKind::IntegrationUnsupported,
                "I3 = " + to_string(embed(report.I3)) + " is not a constant times a cube");
  }
  return RationalJ{split->constant, rational_cbrt(split->constant), split->root};
}

Expression recover_phi(const InvariantReport& report) {
  RationalJ j = split_J(report);
  const RationalForm& r = j.root;
  RationalForm phi_u = r.derivative(slot(Var::P));
  RationalForm phi_x = r - kP * phi_u;
  if (!free_of_pq(phi_u) || !free_of_pq(phi_x)) {
    throw Error(ErrorKind::NotClosed, "J = " + to_string(j.to_expression()) + " is not of the form D phi");
  }
  LogRational potential = integrate_closed_form(phi_x, phi_u);
  if (j.kappa) return scaled(potential, *j.kappa).to_expression();
  return j.kappa_expression() * potential.to_expression();
}

GaugeFunction recover_a1(const JetContext& ctx, const InvariantReport& report) {
  if (report.i3_zero()) throw Error(ErrorKind::DegenerateI3, "I3 vanishes identically");
  const RationalForm& i3 = report.I3;
  // s4 / (3 J) = D I3 / (3 I3) - f_q / 3.
  RationalForm g = (rational_total_derivative(ctx, i3) / i3 - report.s1) / RationalForm(3);
  RationalForm g1 = g.derivative(slot(Var::Q));
  if (g1.contains(slot(Var::Q))) {
    throw Error(ErrorKind::NotAffineInQ, "D(ln a1) = " + to_string(embed(g)) + " is not affine in u''");
  }
  RationalForm g0 = g - RationalForm::variable(slot(Var::Q)) * g1;

  LogRational h = integrate_laurent(g1, Var::P);
  LogRational hx = h.derivative(Var::X);
  LogRational hu = h.derivative(Var::U);
  if (hx.has_logs() || hu.has_logs()) {
    throw Error(ErrorKind::IntegrationUnsupported, "logarithmic terms of ln a1 do not cancel");
  }
  RationalForm rest = g0 - hx.rational - kP * hu.rational;
  RationalForm c_u = rest.derivative(slot(Var::P));
  RationalForm c_x = rest - kP * c_u;
  if (!free_of_pq(c_u) || !free_of_pq(c_x)) {
    throw Error(ErrorKind::NotClosed, "no a1(x, u, u') solves D(ln a1) = " + to_string(embed(g)));
  }
  h = h + integrate_closed_form(c_x, c_u);

  if (!h.rational.is_constant()) {
    throw Error(ErrorKind::IntegrationUnsupported,
                "a1 = exp(" + to_string(h.to_expression()) + ") is not algebraic");
  }
  std::vector<Expression> factors;
  for (const auto& [v, coeff] : h.logs) {
    if (!coeff.is_constant()) {
      throw Error(ErrorKind::IntegrationUnsupported, "ln a1 has a nonconstant logarithmic coefficient");
    }
    Rational thirds = coeff.constant_value() * 3;
    thirds.canonicalize();
    if (thirds.get_den() != 1 || !thirds.get_num().fits_sint_p()) {
      throw Error(ErrorKind::IntegrationUnsupported, "a1 has a non-integer power of " + std::string(var_name(v)));
    }
    int n = static_cast<int>(thirds.get_num().get_si());
    Expression base = Expression::variable(v);
    factors.push_back(n % 3 == 0 ? pow(base, n / 3) : pow(Expression::cbrt(base), n));
  }
  return GaugeFunction{simplify(Expression::product(std::move(factors)))};
}

Expression recover_psi(const InvariantReport& report, const Expression& phi, const GaugeFunction& a1) {
  RationalJ j = split_J(report);
  Expression rhs = simplify(a1.a1 * j.to_expression());
  if (rhs.depends_on(Var::P) || rhs.depends_on(Var::Q)) {
    throw Error(ErrorKind::RhsNotBase, "a1 J = " + to_string(rhs) + " depends on u' or u''");
  }
  Expression phi_x = diff(phi, Var::X);
  Expression phi_u = diff(phi, Var::U);
  auto integrate = [](const Expression& derivative, Var v) {
    if (derivative.has_formal()) {
      throw Error(ErrorKind::IntegrationUnsupported, "psi derivative " + to_string(derivative) + " is not rational");
    }
    return integrate_restricted(normalize(derivative), v);
  };
  if (exact_zero(phi_u) == true) return integrate(simplify(rhs / phi_x), Var::U);
  if (exact_zero(phi_x) == true) return integrate(simplify(-rhs / phi_u), Var::X);
  throw ManualCompletionNeeded("(" + to_string(phi_x) + ")*psi_u - (" + to_string(phi_u) + ")*psi_x = " +
                               to_string(rhs));
}

PointTransformation make_transformation(const Expression& phi, const Expression& psi, const ZeroTestOptions& zero) {
  Expression jac = simplify(diff(phi, Var::X) * diff(psi, Var::U) - diff(phi, Var::U) * diff(psi, Var::X));
  if (is_zero(jac, zero) == Verdict::Zero) {
    throw Error(ErrorKind::DegenerateJacobian, "phi_x psi_u - phi_u psi_x vanishes identically");
  }
  return PointTransformation{phi, psi, jac};
}

Verification verify_linearization(const JetContext& ctx, const PointTransformation& t, const Expression& s,
                                  const ZeroTestOptions& zero) {
  Verification v;
  bool rational = ctx.is_rational() && !t.phi.has_formal() && !t.psi.has_formal() && !s.has_formal();
  if (rational) {
    RationalForm dphi = total_derivative(ctx, normalize(t.phi));
    if (dphi.is_zero()) throw Error(ErrorKind::DegenerateJacobian, "D phi vanishes identically");
    RationalForm psi = normalize(t.psi);
    RationalForm p1 = total_derivative(ctx, psi) / dphi;
    RationalForm p2 = total_derivative(ctx, p1) / dphi;
    RationalForm p3 = total_derivative(ctx, p2) / dphi;
    RationalForm residual = p3 - normalize(s) * p1 - psi;
    v.residual = embed(residual);
    v.verdict = exact_verdict(residual);
    return v;
  }
  Expression dphi = total_derivative(ctx, t.phi);
  if (is_zero(dphi, zero) == Verdict::Zero) throw Error(ErrorKind::DegenerateJacobian, "D phi vanishes identically");
  Expression p1 = simplify(total_derivative(ctx, t.psi) / dphi);
  Expression p2 = simplify(total_derivative(ctx, p1) / dphi);
  Expression p3 = simplify(total_derivative(ctx, p2) / dphi);
  v.residual = simplify(p3 - s * p1 - t.psi);
  v.verdict = is_zero(v.residual, zero);
  return v;
}

namespace {

Checked search(const JetContext& ctx, const PointTransformation& candidate, const Expression& s,
               const ZeroTestOptions& zero) {
  Expression psi = candidate.psi;
  if (!psi.has_formal()) {
    RationalForm r = normalize(psi);
    if (!r.is_zero() && sgn(r.num().leading_coefficient()) < 0) psi = embed(-r);
  }
  Expression phi = candidate.phi;
  Expression minus_phi = phi.has_formal() ? simplify(-phi) : embed(-normalize(phi));
  Expression minus_psi = psi.has_formal() ? simplify(-psi) : embed(-normalize(psi));
  const std::pair<Expression, Expression> orbit[4] = {
      {phi, psi}, {phi, minus_psi}, {minus_phi, psi}, {minus_phi, minus_psi}};
  std::vector<std::string> residuals;
  for (const auto& [f, g] : orbit) {
    PointTransformation t = make_transformation(f, g, zero);
    Verification v = verify_linearization(ctx, t, s, zero);
    if (v.verdict == Verdict::Zero) return Checked{v, t};
    residuals.push_back("phi = " + to_string(f) + ", psi = " + to_string(g) + ": residual " + to_string(v.residual) +
                        " (" + to_string(v.verdict) + ")");
  }
  throw NoGaugeWorks(std::move(residuals));
}

}  // namespace

PointTransformation gauge_search(const JetContext& ctx, const PointTransformation& candidate, const Expression& s,
                                 const ZeroTestOptions& zero) {
  return search(ctx, candidate, s, zero).transformation;
}

Linearization linearize(const JetContext& ctx, const Classification& c, const ZeroTestOptions& zero) {
  if (c.outcome != Outcome::FivePointLinearizable) {
    throw std::invalid_argument("linearize requires a FivePointLinearizable classification");
  }
  Expression s = *c.s_expression();
  Expression phi = recover_phi(c.report);
  GaugeFunction a1 = recover_a1(ctx, c.report);
  Expression psi = recover_psi(c.report, phi, a1);
  Checked found = search(ctx, make_transformation(phi, psi, zero), s, zero);
  return Linearization{found.transformation, a1, found.verification.residual, found.verification.verdict};
}

}  // namespace jetode
