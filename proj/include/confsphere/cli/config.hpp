#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "confsphere/families.hpp"
#include "confsphere/mercator.hpp"
#include "confsphere/vec.hpp"

namespace confsphere::cli {

enum class Format { Csv, Json };

inline constexpr const char* kOutputDirEnv = "CONFSPHERE_OUTPUT_DIR";

struct RunConfig {
  std::string command;
  int n = 3;

  std::string family;  // "", "circle", "spiral", "transformed"
  std::optional<double> c;
  std::optional<Vec> p0, q0, r0;  // spiral
  std::optional<Vec> x0, u0, a0;  // circle
  std::optional<Vec> b;           // special conformal parameter of "transformed"
  std::optional<double> max_b;    // |B| bound when B is drawn at random

  std::optional<Vec> x, u, p, r;  // explicit phase-space start

  std::optional<double> t0, t1;
  double h = kDefaultStep;
  int stride = kDefaultStride;
  std::optional<int> samples;
  std::uint64_t seed = 42;
  std::map<std::string, double> tolerances;

  std::string output;  // "" = default location, "-" = stdout
  Format format = Format::Csv;
  bool middle_slot = false;
  bool serial = false;

  double window_start() const;
  double window_end() const;
  int sample_count() const;
  bool has_phase_start() const { return x || u || p || r; }
};

/// Parses "1,0,-0.5".  Throws ConfigError(field) on malformed input.
Vec parse_vector(const std::string& field, const std::string& text);

/// Applies a JSON object on top of cfg; keys are the long flag names.
void apply_json(RunConfig& cfg, const std::string& json_text);
void apply_json_file(RunConfig& cfg, const std::string& path);

/// Default tolerance of every check category; `tolerance` applies overrides.
const std::map<std::string, double>& default_tolerances();
double tolerance(const RunConfig& cfg, const std::string& key);

/// Range and consistency checks.  Throws ConfigError naming the field.
void validate(const RunConfig& cfg);

/// The family described by cfg.  Parameters left out are drawn from the
/// seeded sampler, all or nothing per family.
SolutionFamily build_family(const RunConfig& cfg);
PhasePoint build_phase_start(const RunConfig& cfg);

Format parse_format(const std::string& s);
const char* format_extension(Format f);

}  // namespace confsphere::cli
