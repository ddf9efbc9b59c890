#pragma once

#include <iosfwd>

#include "confsphere/cli/config.hpp"
#include "confsphere/cli/report.hpp"
#include "confsphere/cli/trace.hpp"

namespace confsphere::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailure = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitDegeneracy = 3;

/// Invariant suite of the configured family.
Report verify_report(const RunConfig& cfg);
/// Residuals of the relations between the T_4 and phase-space quantities,
/// plus the middle-slot identity when cfg.middle_slot is set.
Report relations_report(const RunConfig& cfg);

struct IntegrateResult {
  QuantityTrace trace;
  std::map<std::string, double> drift;
  bool degenerate = false;
  double degenerate_at = 0.0;
};
IntegrateResult integrate_trace(const RunConfig& cfg);
QuantityTrace quantities_trace(const RunConfig& cfg);

/// Each returns the process exit code.  Results go to the resolved output
/// path; console lines go to out, or to err when the data itself is on stdout.
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_integrate(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_relations(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_quantities(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Full command line: parse, apply --config, validate, dispatch, and map
/// exceptions to exit codes.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace confsphere::cli
