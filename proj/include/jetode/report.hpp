#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"
#include "jetode/errors.hpp"
#include "jetode/numeric.hpp"

namespace jetode {

inline constexpr int kReportSchema = 1;

struct RunOptions {
  ZeroTestOptions zero;
  /// Corroborate a recovered transformation along a sampled trajectory.
  bool numeric = true;
  bool contact_only_outcome = false;
};

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,  // usage errors, nonzero residual, numeric failure
  kExitParse = 2,
  kExitNonRational = 3,
  kExitInconsistent = 4,
  kExitUndecided = 5,
};

/// A rendered report. Keys of `json` are sorted, so serialization is
/// deterministic apart from the `timing` member.
struct Report {
  nlohmann::json json;
  std::string text;
  int exit_code = kExitOk;
};

/// Errors propagate; map them with exit_code_for.
Report classify_report(std::string_view f, const RunOptions& options);
Report invariants_report(std::string_view f, const RunOptions& options);
Report verify_report(std::string_view f, std::string_view phi, std::string_view psi, std::string_view s,
                     const RunOptions& options);
Report solve_report(std::string_view f, const JetPoint& ic, double x_end, double step, const RunOptions& options);

int exit_code_for(ErrorKind kind);

}  // namespace jetode
