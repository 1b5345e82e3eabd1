#include "jetode/report.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "jetode/errors.hpp"
#include "jetode/classifier.hpp"
#include "jetode/invariants.hpp"
#include "jetode/linearizer.hpp"
#include "jetode/parser.hpp"

namespace jetode {

using nlohmann::json;

namespace {

json invariant_json(const NamedInvariant& inv) {
  return json{{"name", inv.name}, {"value", to_string(inv.value)}, {"verdict", to_string(inv.verdict)}};
}

json invariant_list(const auto& invariants) {
  json list = json::array();
  for (const auto& inv : invariants) list.push_back(invariant_json(inv));
  return list;
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(15);
  os << v;
  return os.str();
}

void text_invariants(std::ostringstream& out, const char* title, const auto& invariants) {
  out << title << ":\n";
  for (const auto& inv : invariants) {
    std::string name = inv.name;
    name.resize(std::max<std::size_t>(name.size(), 18), ' ');
    std::string verdict = to_string(inv.verdict);
    verdict.resize(9, ' ');
    out << "  " << name << verdict << to_string(inv.value) << '\n';
  }
}

class Stopwatch {
public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void finish(Report& r, const char* command, std::string_view source, const Stopwatch& clock) {
  r.json["schema"] = kReportSchema;
  r.json["command"] = command;
  r.json["input"] = std::string(source);
  r.json["timing"] = json{{"seconds", clock.seconds()}};
  if (!r.json.contains("warnings")) r.json["warnings"] = json::array();
}

void warn(Report& r, const std::string& message, std::ostringstream& text) {
  r.json["warnings"].push_back(message);
  text << "warning: " << message << '\n';
}

// Sampled trajectory through the first nonsingular jet that keeps phi
// monotone; advisory only.
json numeric_corroboration(const JetContext& ctx, const PointTransformation& t, double s,
                           const ZeroTestOptions& zero, std::string& failure) {
  constexpr double kSpan = 0.25;
  constexpr double kStep = 1e-3;
  PointSampler sampler(zero.seed ^ 0x5bd1e995ULL);
  std::string last = "no attempts";
  for (int attempt = 0; attempt < 20; ++attempt) {
    JetPoint ic = sampler.next();
    try {
      Trajectory traj = rk4_solve(ctx, ic, ic.x + kSpan, kStep);
      double residual = numeric_transform_check(ctx, t, s, traj);
      if (!std::isfinite(residual)) {
        last = "nonfinite residual";
        continue;
      }
      return json{{"initial", {ic.x, ic.u, ic.p, ic.q}},
                  {"span", {ic.x, ic.x + kSpan}},
                  {"step", kStep},
                  {"max_residual", residual}};
    } catch (const Error& e) {
      last = e.what();
    }
  }
  failure = "numeric corroboration skipped: " + last;
  return nullptr;
}

}  // namespace

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SyntaxError:
    case ErrorKind::UnsupportedVariable:
    case ErrorKind::NonIntegerExponent:
    case ErrorKind::DivisionByZero:
      return kExitParse;
    case ErrorKind::NonRational:
      return kExitNonRational;
    case ErrorKind::NotClosed:
    case ErrorKind::NoGaugeWorks:
    case ErrorKind::NotAffineInQ:
    case ErrorKind::RhsNotBase:
    case ErrorKind::DegenerateJacobian:
      return kExitInconsistent;
    default:
      return kExitFailure;
  }
}

Report invariants_report(std::string_view f, const RunOptions& options) {
  (void)options;
  Stopwatch clock;
  Report r;
  std::ostringstream text;
  OdeInput input = parse(f);
  JetContext ctx(input.f);
  InvariantReport inv = compute_invariants(ctx);
  r.json["f"] = to_string(input.f);
  r.json["invariants"] = invariant_list(inv.table);
  r.json["point7_set"] = invariant_list(inv.point7_set);
  r.json["contact_set"] = invariant_list(inv.contact_set);
  r.json["auxiliary"] = json{{"s1", to_string(embed(inv.s1))},
                             {"s2", to_string(embed(inv.s2))},
                             {"s3", to_string(embed(inv.s3))}};
  text << "f = " << to_string(input.f) << '\n';
  if (!inv.i3_zero()) {
    const KData& k = *inv.k;
    r.json["auxiliary"]["s4"] = to_string(inv.s4);
    r.json["auxiliary"]["J"] = to_string(inv.J);
    r.json["K"] = json{{"value", to_string(inv.K)}, {"N", to_string(embed(k.N))}, {"constant", k.constant()}};
    if (auto c = k.cube()) r.json["K"]["cubed"] = c->get_str();
    text << "J = " << to_string(inv.J) << '\n';
  }
  text_invariants(text, "invariants", inv.table);
  text_invariants(text, "seven-point set", inv.point7_set);
  text_invariants(text, "contact set", inv.contact_set);
  r.json["warnings"] = json::array();
  if (inv.singular_locus) warn(r, *inv.singular_locus, text);
  r.text = text.str();
  finish(r, "invariants", f, clock);
  return r;
}

Report classify_report(std::string_view f, const RunOptions& options) {
  Stopwatch clock;
  Report r;
  std::ostringstream text;
  OdeInput input = parse(f);
  JetContext ctx(input.f);
  ClassifierOptions copts;
  copts.zero = options.zero;
  copts.contact_only_outcome = options.contact_only_outcome;
  Classification c = classify(ctx, copts);

  r.json["f"] = to_string(input.f);
  r.json["outcome"] = to_string(c.outcome);
  r.json["contact_linearizable"] = c.contact_linearizable;
  r.json["undecided"] = c.undecided;
  r.json["reasons"] = c.reasons;
  r.json["invariants"] = invariant_list(c.report.table);
  r.json["point7_set"] = invariant_list(c.report.point7_set);
  r.json["contact_set"] = invariant_list(c.report.contact_set);
  r.json["warnings"] = json::array();
  r.json["s"] = nullptr;
  r.json["transformation"] = nullptr;
  r.json["numeric"] = nullptr;

  text << "f = " << to_string(input.f) << '\n';
  text << "outcome: " << to_string(c.outcome) << '\n';
  for (const auto& reason : c.reasons) text << "  " << reason << '\n';
  text << "contact-linearizable: " << (c.contact_linearizable ? "yes" : "no") << '\n';
  if (c.singular_locus_note) warn(r, *c.singular_locus_note, text);
  if (c.undecided) {
    warn(r, "some verdicts are undecided", text);
    r.exit_code = kExitUndecided;
  }

  if (c.outcome == Outcome::FivePointLinearizable) {
    Expression s = *c.s_expression();
    r.json["s"] = json{{"expression", to_string(s)}, {"value", *c.s}};
    if (c.exact_s) r.json["s"]["exact"] = c.exact_s->get_str();
    text << "s = " << to_string(s) << " (" << format_double(*c.s) << ")\n";
    text << "canonical form: u''' = s*u' + u\n";
    try {
      Linearization lin = linearize(ctx, c, options.zero);
      const PointTransformation& t = lin.transformation;
      r.json["transformation"] = json{{"phi", to_string(t.phi)},
                                      {"psi", to_string(t.psi)},
                                      {"a1", to_string(lin.a1.a1)},
                                      {"jacobian", to_string(t.jacobian_condition)},
                                      {"residual", to_string(lin.residual)},
                                      {"residual_verdict", to_string(lin.verdict)},
                                      {"residual_zero", lin.verdict == Verdict::Zero}};
      text << "transformation:\n  phi = " << to_string(t.phi) << "\n  psi = " << to_string(t.psi)
           << "\n  a1 = " << to_string(lin.a1.a1) << "\n  residual: " << to_string(lin.residual) << " ("
           << to_string(lin.verdict) << ")\n";
      if (options.numeric) {
        std::string failure;
        json check = numeric_corroboration(ctx, t, *c.s, options.zero, failure);
        r.json["numeric"] = check;
        if (check.is_null()) {
          warn(r, failure, text);
        } else {
          double residual = check["max_residual"];
          text << "numeric check: max |residual| = " << format_double(residual) << '\n';
          if (residual > 1e-6) warn(r, "numeric corroboration residual " + format_double(residual), text);
        }
      }
    } catch (const ManualCompletionNeeded& e) {
      r.json["transformation"] = json{{"manual_pde", e.pde()}};
      text << "transformation: solve " << e.pde() << '\n';
      warn(r, "psi needs manual completion", text);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::IntegrationUnsupported) throw;
      r.json["transformation"] = json{{"unsupported", e.what()}};
      warn(r, e.what(), text);
    }
  }
  r.text = text.str();
  finish(r, "classify", f, clock);
  return r;
}

Report verify_report(std::string_view f, std::string_view phi_text, std::string_view psi_text,
                     std::string_view s_text, const RunOptions& options) {
  Stopwatch clock;
  Report r;
  std::ostringstream text;
  JetContext ctx(parse(f).f);
  Expression phi = parse_expression(phi_text);
  Expression psi = parse_expression(psi_text);
  Expression s = parse_expression(s_text);
  for (const Expression* e : {&phi, &psi}) {
    if (e->depends_on(Var::P) || e->depends_on(Var::Q)) {
      throw Error(ErrorKind::UnsupportedVariable, "phi and psi must depend on x and u only");
    }
  }
  if (s.depends_on(Var::X) || s.depends_on(Var::U) || s.depends_on(Var::P) || s.depends_on(Var::Q)) {
    throw Error(ErrorKind::UnsupportedVariable, "s must be a constant");
  }
  PointTransformation t = make_transformation(phi, psi, options.zero);
  Verification v = verify_linearization(ctx, t, s, options.zero);
  r.json["f"] = to_string(ctx.f());
  r.json["phi"] = to_string(phi);
  r.json["psi"] = to_string(psi);
  r.json["s"] = to_string(s);
  r.json["jacobian"] = to_string(t.jacobian_condition);
  r.json["residual"] = to_string(v.residual);
  r.json["residual_verdict"] = to_string(v.verdict);
  r.json["residual_zero"] = v.verdict == Verdict::Zero;
  text << "residual: " << to_string(v.residual) << " (" << to_string(v.verdict) << ")\n";
  r.exit_code = v.verdict == Verdict::Zero ? kExitOk : v.verdict == Verdict::Unknown ? kExitUndecided : kExitFailure;
  r.text = text.str();
  finish(r, "verify", f, clock);
  return r;
}

Report solve_report(std::string_view f, const JetPoint& ic, double x_end, double step, const RunOptions& options) {
  (void)options;
  Stopwatch clock;
  Report r;
  JetContext ctx(parse(f).f);
  Trajectory traj = rk4_solve(ctx, ic, x_end, step);
  std::ostringstream text;
  text << "x,u,u',u''\n";
  json samples = json::array();
  for (const auto& pt : traj.samples) {
    samples.push_back({pt.x, pt.u, pt.p, pt.q});
    text << format_double(pt.x) << ',' << format_double(pt.u) << ',' << format_double(pt.p) << ','
         << format_double(pt.q) << '\n';
  }
  r.json["f"] = to_string(ctx.f());
  r.json["method"] = traj.method;
  r.json["step"] = traj.step;
  r.json["samples"] = std::move(samples);
  r.text = text.str();
  finish(r, "solve-num", f, clock);
  return r;
}

}  // namespace jetode
