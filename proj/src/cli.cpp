#include "jetode/cli.hpp"

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "jetode/errors.hpp"
#include "jetode/report.hpp"

namespace jetode {

namespace {

struct CommonFlags {
  bool json = false;
  std::uint64_t seed = ZeroTestOptions{}.seed;
  int samples = ZeroTestOptions{}.samples;
  double tol = ZeroTestOptions{}.eps_zero;
  unsigned precision = ZeroTestOptions{}.precision_bits;
  bool no_numeric = false;
  bool contact_outcome = false;

  RunOptions options() const {
    RunOptions o;
    o.zero.seed = seed;
    o.zero.samples = samples;
    o.zero.eps_zero = tol;
    o.zero.eps_nonzero = 1000 * tol;
    o.zero.precision_bits = precision;
    o.zero.confirm_bits = std::max(512u, 4 * precision);
    o.numeric = !no_numeric;
    o.contact_only_outcome = contact_outcome;
    return o;
  }
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_flag("--json", flags.json, "Emit a JSON report");
  cmd->add_option("--sample-seed", flags.seed, "Seed for sampled zero tests");
  cmd->add_option("--zero-samples", flags.samples, "Points per sampled zero test")->check(CLI::PositiveNumber);
  cmd->add_option("--tol", flags.tol, "Zero threshold of the sampled test")->check(CLI::PositiveNumber);
  cmd->add_option("--precision", flags.precision, "Sampling precision in bits")->check(CLI::Range(53u, 65536u));
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Point classification and linearization of u''' = f(x, u, u', u'')", "jetode"};
  app.require_subcommand(1);
  app.allow_windows_style_options(false);

  CommonFlags flags;
  std::string f, phi, psi, s;
  std::vector<double> ic;
  std::vector<double> span;
  double step = 1e-3;

  auto* classify = app.add_subcommand("classify", "Classify and, when possible, linearize");
  classify->add_option("f", f, "Right-hand side f")->required();
  add_common(classify, flags);
  classify->add_flag("--no-numeric", flags.no_numeric, "Skip the numeric corroboration");
  classify->add_flag("--contact-outcome", flags.contact_outcome,
                     "Report contact-only linearizable equations as a separate outcome");

  auto* invariants = app.add_subcommand("invariants", "Print the relative invariants");
  invariants->add_option("f", f, "Right-hand side f")->required();
  add_common(invariants, flags);

  auto* verify = app.add_subcommand("verify", "Check a point transformation to u''' = s*u' + u");
  verify->add_option("f", f, "Right-hand side f")->required();
  verify->add_option("--phi", phi, "New independent variable phi(x, u)")->required();
  verify->add_option("--psi", psi, "New dependent variable psi(x, u)")->required();
  verify->add_option("--s", s, "Canonical parameter s")->required();
  add_common(verify, flags);

  auto* solve = app.add_subcommand("solve-num", "Integrate with fixed-step RK4");
  solve->add_option("f", f, "Right-hand side f")->required();
  solve->add_option("--ic", ic, "Initial jet x0 u0 u0' u0''")->expected(4)->required()->delimiter(',');
  solve->add_option("--span", span, "Interval x0 x1")->expected(2)->required()->delimiter(',');
  solve->add_option("--step", step, "Step size")->check(CLI::PositiveNumber);
  add_common(solve, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream help, message;
    int code = app.exit(e, help, message);
    out << help.str();
    err << message.str();
    return code == 0 ? kExitOk : kExitFailure;
  }

  RunOptions options = flags.options();
  try {
    Report r;
    if (*classify) {
      r = classify_report(f, options);
    } else if (*invariants) {
      r = invariants_report(f, options);
    } else if (*verify) {
      r = verify_report(f, phi, psi, s, options);
    } else {
      if (ic[0] != span[0]) {
        err << "error: --span must start at the initial x\n";
        return kExitFailure;
      }
      r = solve_report(f, JetPoint{ic[0], ic[1], ic[2], ic[3]}, span[1], step, options);
    }
    if (flags.json) {
      out << r.json.dump(2) << '\n';
    } else {
      out << r.text;
    }
    return r.exit_code;
  } catch (const Error& e) {
    int code = exit_code_for(e.kind());
    if (flags.json) {
      nlohmann::json j{{"schema", kReportSchema},
                       {"input", f},
                       {"error", {{"kind", to_string(e.kind())}, {"message", e.what()}}}};
      if (auto* pe = dynamic_cast<const ParseError*>(&e)) j["error"]["position"] = pe->position();
      if (auto* ng = dynamic_cast<const NoGaugeWorks*>(&e)) j["error"]["residuals"] = ng->residuals();
      out << j.dump(2) << '\n';
    }
    err << "error: " << e.what() << '\n';
    return code;
  }
}

}  // namespace jetode
