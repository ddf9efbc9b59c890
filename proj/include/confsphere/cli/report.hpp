#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "confsphere/cli/config.hpp"

namespace confsphere::cli {

/// %.17g, with the tokens nan, inf and -inf for non-finite values.
std::string format_real(double v);
/// Finite values as JSON numbers, the rest as the strings above.
nlohmann::json json_real(double v);

enum class CheckStatus { Pass, Fail, Vacuous };
const char* status_name(CheckStatus s);

struct CheckRecord {
  std::string name;
  double measured;
  double tolerance;
  CheckStatus status;
  std::string note;
};

class Report {
 public:
  explicit Report(std::string command) : command_(std::move(command)) {}

  /// Pass iff measured <= tol (a NaN measurement fails).
  void check(std::string name, double measured, double tol, std::string note = {});
  void vacuous(std::string name, std::string note);
  void note(std::string text) { notes_.push_back(std::move(text)); }

  bool passed() const;
  const std::vector<CheckRecord>& checks() const noexcept { return checks_; }
  const std::vector<std::string>& notes() const noexcept { return notes_; }
  const std::string& command() const noexcept { return command_; }

  /// name,measured,tolerance,status rows.
  std::string to_csv() const;
  nlohmann::json to_json() const;
  std::string serialize(Format f) const;
  /// One line per check plus the overall verdict.
  void print_summary(std::ostream& os) const;

 private:
  std::string command_;
  std::vector<CheckRecord> checks_;
  std::vector<std::string> notes_;
};

/// Where output goes: --output if given ("-" is stdout), else
/// $CONFSPHERE_OUTPUT_DIR/<command>.<ext>, else stdout.  Empty means stdout.
std::string resolve_output_path(const RunConfig& cfg);
/// Writes text to the resolved path (creating parent directories) or to out.
void write_output(const std::string& path, const std::string& text, std::ostream& out);

}  // namespace confsphere::cli
