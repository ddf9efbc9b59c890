#include "confsphere/cli/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "confsphere/errors.hpp"

namespace confsphere::cli {

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

nlohmann::json json_real(double v) {
  if (std::isfinite(v)) return v;
  return format_real(v);
}

const char* status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass:
      return "PASS";
    case CheckStatus::Fail:
      return "FAIL";
    default:
      return "VACUOUS";
  }
}

void Report::check(std::string name, double measured, double tol, std::string note) {
  const CheckStatus s = measured <= tol ? CheckStatus::Pass : CheckStatus::Fail;
  checks_.push_back({std::move(name), measured, tol, s, std::move(note)});
}

void Report::vacuous(std::string name, std::string note) {
  checks_.push_back({std::move(name), std::nan(""), std::nan(""), CheckStatus::Vacuous, std::move(note)});
}

bool Report::passed() const {
  for (const auto& c : checks_)
    if (c.status == CheckStatus::Fail) return false;
  return true;
}

std::string Report::to_csv() const {
  std::string s = "name,measured,tolerance,status\n";
  for (const auto& c : checks_)
    s += c.name + ',' + format_real(c.measured) + ',' + format_real(c.tolerance) + ',' +
         status_name(c.status) + '\n';
  return s;
}

nlohmann::json Report::to_json() const {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : checks_) {
    nlohmann::json r = {{"name", c.name},
                        {"measured", json_real(c.measured)},
                        {"tolerance", json_real(c.tolerance)},
                        {"status", status_name(c.status)}};
    if (!c.note.empty()) r["note"] = c.note;
    checks.push_back(std::move(r));
  }
  return {{"command", command_},
          {"status", passed() ? "PASS" : "FAIL"},
          {"checks", std::move(checks)},
          {"notes", notes_}};
}

std::string Report::serialize(Format f) const {
  return f == Format::Csv ? to_csv() : to_json().dump(2) + '\n';
}

void Report::print_summary(std::ostream& os) const {
  for (const auto& c : checks_) {
    os << status_name(c.status) << ' ' << c.name;
    if (c.status != CheckStatus::Vacuous)
      os << " measured=" << format_real(c.measured) << " tol=" << format_real(c.tolerance);
    if (!c.note.empty()) os << " (" << c.note << ')';
    os << '\n';
  }
  for (const auto& n : notes_) os << "note: " << n << '\n';
  os << command_ << ": " << (passed() ? "PASS" : "FAIL") << '\n';
}

std::string resolve_output_path(const RunConfig& cfg) {
  if (cfg.output == "-") return {};
  if (!cfg.output.empty()) return cfg.output;
  const char* dir = std::getenv(kOutputDirEnv);
  if (dir && *dir)
    return (std::filesystem::path(dir) / (cfg.command + '.' + format_extension(cfg.format))).string();
  return {};
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  const std::filesystem::path p(path);
  std::error_code ec;
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
  std::ofstream f(p, std::ios::binary);
  if (!f) throw ConfigError("output", "cannot write " + path);
  f << text;
  if (!f) throw Error("failed writing " + path);
}

}  // namespace confsphere::cli
