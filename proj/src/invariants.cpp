#include "jetode/invariants.hpp"

#include <stdexcept>

#include "jetode/errors.hpp"

namespace jetode {

namespace {

constexpr std::size_t kX = 0, kU = 1, kP = 2, kQ = 3;

struct Derivatives {
  explicit Derivatives(const JetContext& c) : ctx(c), f(c.rational_f()) {}

  RationalForm d(const RationalForm& e, std::size_t v) const { return e.derivative(v); }
  RationalForm D(const RationalForm& e) const { return total_derivative(ctx, e); }

  const JetContext& ctx;
  const RationalForm& f;
};

RationalForm wuenschmann(const Derivatives& d) {
  RationalForm fq = d.d(d.f, kQ);
  RationalForm fp = d.d(d.f, kP);
  RationalForm fu = d.d(d.f, kU);
  RationalForm dfq = d.D(fq);
  return RationalForm(4) * fq.pow(3) + RationalForm(18) * fq * (fp - dfq) + RationalForm(9) * d.D(dfq) +
         RationalForm(54) * fu - RationalForm(27) * d.D(fp);
}

RationalForm seventh(const Derivatives& d) {
  RationalForm fq = d.d(d.f, kQ);
  RationalForm fp = d.d(d.f, kP);
  RationalForm fqq = d.d(fq, kQ);
  return fqq * (fq * fq + RationalForm(9) * fp - RationalForm(3) * d.D(fq)) - RationalForm(9) * d.d(fp, kP) +
         RationalForm(18) * d.d(fq, kU) - RationalForm(6) * fq * d.d(fp, kQ);
}

NamedInvariant named(std::string name, const RationalForm& r) {
  return {std::move(name), embed(r), exact_verdict(r)};
}

std::string describe_locus(const RationalForm& i3) {
  std::string note;
  if (!i3.num().is_constant()) note = "I3 vanishes where " + to_string(embed(RationalForm(i3.num()))) + " = 0";
  if (!i3.den().is_constant()) {
    if (!note.empty()) note += "; ";
    note += "I3 is singular where " + to_string(embed(RationalForm(i3.den()))) + " = 0";
  }
  return note;
}

}  // namespace

bool KData::constant() const {
  for (Verdict v : verdicts) {
    if (v != Verdict::Zero) return false;
  }
  return true;
}

std::optional<Rational> KData::cube() const {
  if (!constant()) return std::nullopt;
  RationalForm c = N.pow(3) / (RationalForm(27) * I3.pow(8));
  if (!c.is_constant()) return std::nullopt;
  return c.constant_value();
}

std::optional<Rational> KData::exact() const {
  auto c = cube();
  if (!c) return std::nullopt;
  return rational_cbrt(*c);
}

const NamedInvariant& InvariantReport::entry(const std::string& name) const {
  for (const auto& e : table) {
    if (e.name == name) return e;
  }
  throw std::out_of_range("no invariant named " + name);
}

std::array<NamedInvariant, 4> seven_point_set(const JetContext& ctx) {
  Derivatives d(ctx);
  RationalForm fqq = d.d(d.d(d.f, kQ), kQ);
  return {named("f_qqq", d.d(fqq, kQ)), named("f_qq^2 + 6 f_pqq", fqq * fqq + RationalForm(6) * d.d(fqq, kP)),
          named("W", wuenschmann(d)), named("I7", seventh(d))};
}

std::array<NamedInvariant, 2> contact_set(const JetContext& ctx) {
  Derivatives d(ctx);
  RationalForm f4 = d.f;
  for (int i = 0; i < 4; ++i) f4 = d.d(f4, kQ);
  return {named("f_qqqq", f4), named("W", wuenschmann(d))};
}

InvariantReport compute_invariants(const JetContext& ctx) {
  Derivatives d(ctx);
  InvariantReport r;
  r.f = d.f;
  RationalForm fq = d.d(d.f, kQ);
  RationalForm fp = d.d(d.f, kP);
  RationalForm fu = d.d(d.f, kU);
  RationalForm dfq = d.D(fq);
  r.s1 = fq;
  r.s2 = RationalForm(2) * fq * fq + RationalForm(9) * fp - RationalForm(3) * dfq;
  r.s3 = d.d(fq, kQ);
  r.I1 = d.d(r.s3, kQ);
  r.I2 = r.s3 * r.s3 + RationalForm(6) * d.d(r.s3, kP);
  r.I3 = (RationalForm(2) * r.s1 * r.s2 - RationalForm(3) * d.D(r.s2) + RationalForm(54) * fu) / RationalForm(54);
  r.I7 = seventh(d);
  r.contact_set = contact_set(ctx);
  r.point7_set = seven_point_set(ctx);

  r.table.push_back(named("I1", r.I1));
  r.table.push_back(named("I2", r.I2));
  r.table.push_back(named("I3", r.I3));

  if (!r.i3_zero()) {
    const RationalForm& i3 = r.I3;
    RationalForm i3p = d.d(i3, kP);
    RationalForm di3 = d.D(i3);
    r.torsion_conditions = {
        d.d(i3, kQ),
        r.s3 * i3 - RationalForm(2) * i3p,
        RationalForm(3) * i3 * (d.d(i3, kU) - d.D(i3p)) + RationalForm(2) * i3p * di3,
    };

    KData k;
    k.I3 = i3;
    RationalForm a = fq * fq + RationalForm(3) * fp - RationalForm(3) * dfq;
    k.N = a * i3 * i3 + RationalForm(2) * i3 * d.D(di3) - RationalForm(Rational(7, 3)) * di3 * di3;
    const std::size_t order[4] = {kQ, kP, kU, kX};
    for (int i = 0; i < 4; ++i) {
      std::size_t z = order[i];
      k.conditions[i] = RationalForm(3) * d.d(k.N, z) * i3 - RationalForm(8) * k.N * d.d(i3, z);
      k.verdicts[i] = exact_verdict(k.conditions[i]);
    }

    // Simplification only pays off when I3 is a cube up to a constant;
    // otherwise the formal quotients are kept as built.
    bool cube = cube_root_split(i3).has_value();
    auto finish = [cube](const Expression& e) { return cube ? simplify(e) : e; };
    Expression j = finish(Expression::cbrt(embed(i3)));
    r.J = j;
    r.s4 = finish(embed(di3) / pow(j, 2) - j * embed(fq));
    r.I4 = finish(embed(r.torsion_conditions[0]) / (Expression(3) * pow(j, 2)));
    r.I5 = finish(embed(r.torsion_conditions[1]) / pow(j, 2));
    r.I6 = finish(embed(r.torsion_conditions[2]) / (Expression(9) * pow(j, 5)));
    r.I8 = finish(embed(k.N) / (Expression(3) * pow(j, 4)));
    r.K = finish(embed(k.N) / (Expression(3) * pow(j, 8)));

    r.table.push_back({"I4", r.I4, exact_verdict(r.torsion_conditions[0])});
    r.table.push_back({"I5", r.I5, exact_verdict(r.torsion_conditions[1])});
    r.table.push_back({"I6", r.I6, exact_verdict(r.torsion_conditions[2])});
    r.table.push_back(named("I7", r.I7));
    r.table.push_back({"I8", r.I8, exact_verdict(k.N)});
    const char* names[4] = {"I9", "I10", "I11", "I12"};
    for (int i = 0; i < 4; ++i) {
      r.table.push_back({names[i], finish(embed(k.conditions[i]) / (Expression(9) * pow(j, 11))), k.verdicts[i]});
    }
    r.k = std::move(k);
    std::string note = describe_locus(i3);
    if (!note.empty()) r.singular_locus = note;
  } else {
    r.table.push_back(named("I7", r.I7));
  }
  return r;
}

std::array<Verdict, 3> vanishing_I4_I5_I6(const InvariantReport& report) {
  if (report.i3_zero()) throw Error(ErrorKind::DegenerateI3, "I3 vanishes identically");
  return {exact_verdict(report.torsion_conditions[0]), exact_verdict(report.torsion_conditions[1]),
          exact_verdict(report.torsion_conditions[2])};
}

const KData& k_constancy(const InvariantReport& report) {
  if (report.i3_zero() || !report.k) throw Error(ErrorKind::DegenerateI3, "I3 vanishes identically");
  return *report.k;
}

double evaluate_K(const InvariantReport& report, const JetPoint& point, unsigned precision_bits) {
  const KData& k = k_constancy(report);
  Expression i3 = embed(k.I3);
  Expression value = embed(k.N) / (Expression(3) * pow(Expression::cbrt(i3), 8));
  double i3_value = evaluate(i3, point, precision_bits);
  if (i3_value == 0.0) throw Error(ErrorKind::SingularPoint, "I3 vanishes at the point");
  return evaluate(value, point, precision_bits);
}

}  // namespace jetode
