#include "confsphere/cli/config.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "confsphere/errors.hpp"
#include "confsphere/sampling.hpp"

namespace confsphere::cli {

using nlohmann::json;

double RunConfig::window_start() const {
  if (t0) return *t0;
  return command == "integrate" ? 0.0 : -1.0;
}

double RunConfig::window_end() const {
  if (t1) return *t1;
  return 1.0;
}

int RunConfig::sample_count() const {
  if (samples) return *samples;
  return command == "relations" ? 100 : 21;
}

Vec parse_vector(const std::string& field, const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first == std::string::npos) throw ConfigError(field, "empty vector component in '" + text + "'");
    item = item.substr(first, last - first + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ConfigError(field, "not a number: '" + item + "'");
    }
    if (used != item.size()) throw ConfigError(field, "not a number: '" + item + "'");
    if (!std::isfinite(v)) throw ConfigError(field, "non-finite component");
    out.push_back(v);
  }
  if (out.empty() || text.back() == ',') throw ConfigError(field, "expected comma-separated reals");
  return Vec(std::move(out));
}

namespace {

Vec json_vector(const std::string& key, const json& v) {
  if (v.is_string()) return parse_vector(key, v.get<std::string>());
  if (!v.is_array() || v.empty()) throw ConfigError(key, "expected an array of reals");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) throw ConfigError(key, "expected an array of reals");
    out.push_back(e.get<double>());
  }
  return Vec(std::move(out));
}

double json_real(const std::string& key, const json& v) {
  if (!v.is_number()) throw ConfigError(key, "expected a real number");
  return v.get<double>();
}

long long json_int(const std::string& key, const json& v) {
  if (!v.is_number_integer()) throw ConfigError(key, "expected an integer");
  return v.get<long long>();
}

std::string json_string(const std::string& key, const json& v) {
  if (!v.is_string()) throw ConfigError(key, "expected a string");
  return v.get<std::string>();
}

bool json_bool(const std::string& key, const json& v) {
  if (!v.is_boolean()) throw ConfigError(key, "expected true or false");
  return v.get<bool>();
}

}  // namespace

void apply_json(RunConfig& cfg, const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("config", std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config", "top level must be an object");

  for (const auto& [key, v] : doc.items()) {
    if (key == "n") cfg.n = static_cast<int>(json_int(key, v));
    else if (key == "family") cfg.family = json_string(key, v);
    else if (key == "c") cfg.c = json_real(key, v);
    else if (key == "p0") cfg.p0 = json_vector(key, v);
    else if (key == "q0") cfg.q0 = json_vector(key, v);
    else if (key == "r0") cfg.r0 = json_vector(key, v);
    else if (key == "x0") cfg.x0 = json_vector(key, v);
    else if (key == "u0") cfg.u0 = json_vector(key, v);
    else if (key == "a0") cfg.a0 = json_vector(key, v);
    else if (key == "b") cfg.b = json_vector(key, v);
    else if (key == "max-b") cfg.max_b = json_real(key, v);
    else if (key == "x") cfg.x = json_vector(key, v);
    else if (key == "u") cfg.u = json_vector(key, v);
    else if (key == "p") cfg.p = json_vector(key, v);
    else if (key == "r") cfg.r = json_vector(key, v);
    else if (key == "t0") cfg.t0 = json_real(key, v);
    else if (key == "t1") cfg.t1 = json_real(key, v);
    else if (key == "h") cfg.h = json_real(key, v);
    else if (key == "stride") cfg.stride = static_cast<int>(json_int(key, v));
    else if (key == "samples") cfg.samples = static_cast<int>(json_int(key, v));
    else if (key == "seed") {
      const long long s = json_int(key, v);
      if (s < 0) throw ConfigError(key, "must be non-negative");
      cfg.seed = static_cast<std::uint64_t>(s);
    } else if (key == "tolerances") {
      if (!v.is_object()) throw ConfigError(key, "expected an object of name: value");
      for (const auto& [name, tol] : v.items()) cfg.tolerances[name] = json_real("tolerances." + name, tol);
    } else if (key == "output") cfg.output = json_string(key, v);
    else if (key == "format") cfg.format = parse_format(json_string(key, v));
    else if (key == "middle-slot") cfg.middle_slot = json_bool(key, v);
    else if (key == "serial") cfg.serial = json_bool(key, v);
    else throw ConfigError(key, "unknown configuration key");
  }
}

void apply_json_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  apply_json(cfg, ss.str());
}

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> table = {
      {"delta3", 1e-9},
      {"delta4", 1e-8},
      {"delta5", 1e-6},
      {"alpha", 1e-9},
      {"mercator_C", 1e-10},
      {"q_spread", 1e-8},
      {"q_value", 1e-8},
      {"kappa1", 1e-8},
      {"circle_residual", 1e-10},
      {"circle_delta4", 1e-9},
      {"circle_q_spread", 1e-9},
      {"noether_agreement", 1e-9},
      {"noether_spread", 1e-8},
      {"hamiltonian_spread", 1e-9},
      {"closed_form", 1e-9},
      {"spiral_derivatives", 1e-12},
      {"spiral_tractor", 1e-10},
      {"relation", 1e-10},
      {"middle_slot", 1e-9},
  };
  return table;
}

double tolerance(const RunConfig& cfg, const std::string& key) {
  if (auto it = cfg.tolerances.find(key); it != cfg.tolerances.end()) return it->second;
  return default_tolerances().at(key);
}

namespace {

void check_dim(const std::optional<Vec>& v, const char* field, int n) {
  if (v && v->dim() != n)
    throw ConfigError(field, "expected " + std::to_string(n) + " components, got " +
                                 std::to_string(v->dim()));
}

}  // namespace

void validate(const RunConfig& cfg) {
  static const std::vector<std::string> commands = {"verify", "integrate", "relations", "quantities"};
  if (std::find(commands.begin(), commands.end(), cfg.command) == commands.end())
    throw ConfigError("command", "unknown subcommand '" + cfg.command + "'");
  if (cfg.n < 2) throw ConfigError("n", "dimension must be at least 2");
  if (!(cfg.h > 0.0) || !std::isfinite(cfg.h)) throw ConfigError("h", "step must be positive");
  if (cfg.stride < 1) throw ConfigError("stride", "must be at least 1");
  const double a = cfg.window_start(), z = cfg.window_end();
  if (!std::isfinite(a)) throw ConfigError("t0", "must be finite");
  if (!std::isfinite(z)) throw ConfigError("t1", "must be finite");
  if (!(z > a)) throw ConfigError("t1", "window must satisfy t1 > t0");
  const int min_samples = cfg.command == "verify" ? 2 : 1;
  if (cfg.sample_count() < min_samples)
    throw ConfigError("samples", "must be at least " + std::to_string(min_samples));
  if (cfg.c && !std::isfinite(*cfg.c)) throw ConfigError("c", "must be finite");
  if (cfg.max_b && !(*cfg.max_b >= 0.0)) throw ConfigError("max-b", "must be non-negative");

  for (const auto& [name, tol] : cfg.tolerances) {
    if (!default_tolerances().count(name)) throw ConfigError("tol", "unknown tolerance '" + name + "'");
    if (!(tol >= 0.0) || !std::isfinite(tol)) throw ConfigError("tol", name + " must be finite and >= 0");
  }

  check_dim(cfg.p0, "p0", cfg.n);
  check_dim(cfg.q0, "q0", cfg.n);
  check_dim(cfg.r0, "r0", cfg.n);
  check_dim(cfg.x0, "x0", cfg.n);
  check_dim(cfg.u0, "u0", cfg.n);
  check_dim(cfg.a0, "a0", cfg.n);
  check_dim(cfg.b, "b", cfg.n);
  check_dim(cfg.x, "x", cfg.n);
  check_dim(cfg.u, "u", cfg.n);
  check_dim(cfg.p, "p", cfg.n);
  check_dim(cfg.r, "r", cfg.n);

  if (!cfg.family.empty() && cfg.family != "circle" && cfg.family != "spiral" &&
      cfg.family != "transformed")
    throw ConfigError("family", "expected circle, spiral or transformed");
  if (!cfg.family.empty() && cfg.has_phase_start())
    throw ConfigError("family", "give either a family or a phase-space start, not both");

  if (cfg.command == "verify" && cfg.family.empty())
    throw ConfigError("family", "verify needs a solution family");
  if ((cfg.command == "integrate" || cfg.command == "quantities") && cfg.family.empty() &&
      !cfg.has_phase_start())
    throw ConfigError("family", cfg.command + " needs a family or a phase-space start (x, u, p, r)");

  if (cfg.command == "integrate") {
    const double steps = (z - a) / cfg.h;
    if (std::abs(steps - std::round(steps)) > 1e-9 * std::max(1.0, steps))
      throw ConfigError("h", "t1 - t0 must be an integer multiple of h");
  }
}

namespace {

template <std::size_t K>
bool all_or_none(const std::array<std::pair<const char*, const std::optional<Vec>*>, K>& fields,
                 const std::string& family) {
  std::size_t given = 0;
  for (const auto& f : fields) given += f.second->has_value();
  if (given == 0) return false;
  if (given == K) return true;
  for (const auto& f : fields)
    if (!f.second->has_value())
      throw ConfigError(f.first, family + " parameters must be given together or not at all");
  return true;
}

LogSpiral build_spiral(const RunConfig& cfg, Sampler& rng) {
  const bool given = all_or_none<3>({{{"p0", &cfg.p0}, {"q0", &cfg.q0}, {"r0", &cfg.r0}}}, "spiral");
  if (cfg.c && *cfg.c == 0.0)
    throw ConfigError("c", "c = 0 gives Delta_4 = -c^2 = 0, outside the Delta_4 != 0 class of spirals");
  LogSpiral s = rng.spiral(cfg.n);
  if (given) {
    try {
      s = make_log_spiral(cfg.c.value_or(1.0), *cfg.p0, *cfg.q0, *cfg.r0);
    } catch (const DomainError& e) {
      throw ConfigError(std::string(e.what()).find("P0 must") != std::string::npos ? "p0" : "q0",
                        e.what());
    }
  } else if (cfg.c) {
    s.c = *cfg.c;
  }
  return s;
}

}  // namespace

SolutionFamily build_family(const RunConfig& cfg) {
  Sampler rng(cfg.seed);
  if (cfg.family == "circle") {
    if (cfg.c) throw ConfigError("c", "not a circle parameter");
    const bool given =
        all_or_none<3>({{{"x0", &cfg.x0}, {"u0", &cfg.u0}, {"a0", &cfg.a0}}}, "circle");
    if (!given) return rng.circle(cfg.n);
    try {
      return make_circle(*cfg.x0, *cfg.u0, *cfg.a0);
    } catch (const DomainError& e) {
      throw ConfigError(std::string(e.what()).find("|U0|") != std::string::npos ? "u0" : "a0",
                        e.what());
    }
  }
  if (cfg.family == "spiral") {
    if (cfg.b) throw ConfigError("b", "only the transformed family takes b");
    return build_spiral(cfg, rng);
  }
  if (cfg.family == "transformed") {
    const LogSpiral base = build_spiral(cfg, rng);
    const double a = cfg.window_start(), z = cfg.window_end();
    if (!cfg.b) {
      try {
        return rng.transform(base, cfg.max_b.value_or(0.3), a, z);
      } catch (const DomainError& e) {
        throw ConfigError("max-b", e.what());
      }
    }
    TransformedSpiral ts = make_transformed_spiral(base, *cfg.b);
    for (int k = 0; k <= 200; ++k)
      if (std::abs(transformed_denominator(ts, a + (z - a) * k / 200.0)) < 1e-3)
        throw ConfigError("b", "the special conformal map sends part of the window to infinity");
    return ts;
  }
  throw ConfigError("family", "no solution family given");
}

PhasePoint build_phase_start(const RunConfig& cfg) {
  for (const auto& [name, v] : {std::pair{"x", &cfg.x}, {"u", &cfg.u}, {"p", &cfg.p}, {"r", &cfg.r}})
    if (!v->has_value()) throw ConfigError(name, "a phase-space start needs x, u, p and r");
  PhasePoint pt{*cfg.x, *cfg.u, *cfg.p, *cfg.r};
  if (norm_sq(pt.U) < kDegeneracyThreshold) throw ConfigError("u", "velocity must be nonzero");
  return pt;
}

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::Csv;
  if (s == "json") return Format::Json;
  throw ConfigError("format", "expected csv or json");
}

const char* format_extension(Format f) { return f == Format::Csv ? "csv" : "json"; }

}  // namespace confsphere::cli
