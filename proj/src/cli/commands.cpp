#include "confsphere/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "confsphere/batch.hpp"
#include "confsphere/errors.hpp"
#include "confsphere/multilinear.hpp"
#include "confsphere/sampling.hpp"

namespace confsphere::cli {

namespace {

Exec exec_of(const RunConfig& cfg) { return cfg.serial ? Exec::Serial : Exec::Parallel; }

std::vector<double> sample_times(const RunConfig& cfg) {
  const int m = cfg.sample_count();
  const double a = cfg.window_start(), z = cfg.window_end();
  std::vector<double> ts(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) ts[k] = m == 1 ? a : a + (z - a) * k / (m - 1);
  return ts;
}

/// Tracks (max - min) / (1 + max|v|) of a scalar over samples.
struct Spread {
  double lo = INFINITY, hi = -INFINITY, mag = 0.0;
  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    mag = std::max(mag, std::abs(v));
  }
  double value() const { return hi >= lo ? (hi - lo) / (1.0 + mag) : 0.0; }
};

double rel_diff(double a, double b) { return std::abs(a - b) / (1.0 + std::abs(b)); }

double rel_diff(const Vec& a, const Vec& b) { return max_abs_diff(a, b) / (1.0 + max_abs(b)); }

double max_spread(const std::map<std::vector<int>, Spread>& s) {
  double w = 0.0;
  for (const auto& [k, v] : s) w = std::max(w, v.value());
  return w;
}

struct FamilyData {
  SolutionFamily family;
  std::vector<double> ts;
  std::vector<CurveJet> jets;
  std::vector<GramInvariants> gram;
};

void gram_checks(Report& rep, const RunConfig& cfg, const FamilyData& d, double delta4, double a1,
                 double a2) {
  double e3 = 0, e4 = 0, e5 = 0, ea1 = 0, ea2 = 0;
  for (const auto& g : d.gram) {
    e3 = std::max(e3, std::abs(g.delta3 + 1.0));
    e4 = std::max(e4, std::abs(g.delta4 - delta4));
    double m = 1.0;
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) m = std::max(m, std::abs(g.gram(i, j)));
    e5 = std::max(e5, std::abs(g.delta5) / std::pow(m, 5));
    ea1 = std::max(ea1, std::abs(g.alpha1 - a1));
    ea2 = std::max(ea2, std::abs(g.alpha2 - a2));
  }
  rep.check("delta3", e3, tolerance(cfg, "delta3"), "|Delta_3 + 1|");
  rep.check(delta4 == 0.0 ? "circle_delta4" : "delta4", e4,
            tolerance(cfg, delta4 == 0.0 ? "circle_delta4" : "delta4"),
            "|Delta_4 - (" + format_real(delta4) + ")|");
  rep.check("delta5", e5, tolerance(cfg, "delta5"), "|Delta_5| / max(1, max|M_5|)^5");
  if (!std::isnan(a1)) {
    rep.check("alpha1", ea1, tolerance(cfg, "alpha"), "|alpha_1 - (" + format_real(a1) + ")|");
    rep.check("alpha2", ea2, tolerance(cfg, "alpha"), "|alpha_2 - (" + format_real(a2) + ")|");
  }
}

void q_checks(Report& rep, const RunConfig& cfg, const FamilyData& d, const IndexedQuantities* expect) {
  std::map<std::vector<int>, Spread> spreads;
  double worst = 0.0;
  for (const auto& jet : d.jets)
    for (const auto& [key, v] : q_quantities(jet)) {
      spreads[key].add(v);
      if (expect) {
        auto it = expect->find(key);
        worst = std::max(worst, rel_diff(v, it == expect->end() ? 0.0 : it->second));
      }
    }
  rep.check("q_spread", max_spread(spreads), tolerance(cfg, "q_spread"), "all T_4 quantities");
  if (expect) rep.check("q_value", worst, tolerance(cfg, "q_value"), "against the spiral constants");
}

void noether_checks(Report& rep, const RunConfig& cfg, const FamilyData& d) {
  Sampler rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
  const int n = family_dim(d.family);
  double agree = 0.0, phase = 0.0;
  Spread h;
  std::vector<Spread> spreads(4);
  std::vector<KillingField> fields;
  for (int kind = 0; kind < 4; ++kind) fields.push_back(rng.killing_field(kind, n));
  for (const auto& jet : d.jets) {
    const PhasePoint p = phase_from_jet(jet);
    const EQuantities e = e_quantities(p);
    h.add(hamiltonian(p));
    for (int kind = 0; kind < 4; ++kind) {
      const double fc = f_closed(fields[kind], jet);
      agree = std::max(agree, rel_diff(f_generic(fields[kind], jet), fc));
      phase = std::max(phase, rel_diff(f_from_e(fields[kind], e), fc));
      spreads[kind].add(fc);
    }
  }
  rep.check("noether_agreement", agree, tolerance(cfg, "noether_agreement"),
            "generic vs closed form, four generator types");
  rep.check("noether_phase", phase, tolerance(cfg, "noether_agreement"),
            "phase-space E pairing vs closed form");
  for (int kind = 0; kind < 4; ++kind)
    rep.check(std::string("noether_spread_") + killing_name(fields[kind]), spreads[kind].value(),
              tolerance(cfg, "noether_spread"));
  rep.check("hamiltonian_spread", h.value(), tolerance(cfg, "hamiltonian_spread"));
}

void spiral_suite(Report& rep, const RunConfig& cfg, const FamilyData& d, const LogSpiral& s) {
  const double c = s.c, p2 = norm_sq(s.P0);
  const int n = s.P0.dim();
  gram_checks(rep, cfg, d, -c * c, c * c - 1.0, c * c * c * c - c * c + 1.0);

  double der = 0.0, C = 0.0, tr = 0.0, aa = 0.0;
  Spread k1;
  double k1err = 0.0;
  const double k1_expect = -(c * c - 1.0) / (2.0 * c);
  for (const auto& jet : d.jets) {
    const SpiralDerivatives sd = spiral_closed_derivatives(s, jet.t);
    der = std::max({der, rel_diff(jet.U(), sd.U), rel_diff(jet.A(), sd.A), rel_diff(jet.A1(), sd.A1)});
    C = std::max(C, max_abs(mercator_C(jet)));
    const Vec printed = spiral_acceleration_tractor(s, jet.t);
    tr = std::max(tr, rel_diff(canonical_tractors(jet, 3)[2], printed));
    aa = std::max(aa, std::abs(tractor_metric(printed, printed) - (c * c - 1.0)));
    const double k = kappa1(jet);
    k1.add(k);
    k1err = std::max(k1err, std::abs(k - k1_expect));
  }
  rep.check("spiral_derivatives", der, tolerance(cfg, "spiral_derivatives"), "jets vs closed-form U, A, A'");
  rep.check("mercator_C", C, tolerance(cfg, "mercator_C"), "max |C|");
  rep.check("spiral_tractor", tr, tolerance(cfg, "spiral_tractor"), "acceleration tractor vs closed form");
  rep.check("spiral_tractor_norm", aa, tolerance(cfg, "spiral_tractor"), "<A, A> = c^2 - 1");
  rep.check("kappa1", k1err, tolerance(cfg, "kappa1"), "kappa_1 = -(c^2 - 1) / (2c)");
  rep.check("kappa1_spread", k1.value(), tolerance(cfg, "kappa1"));

  IndexedQuantities expect;
  for (const auto& ij : increasing_tuples(0, n, 2))
    expect[{0, ij[0] + 1, ij[1] + 1, n + 1}] = c / p2 * eps({ij[0], ij[1]}, s.P0, s.Q0);
  for (const auto& I : increasing_tuples(0, n, 3))
    expect[{0, I[0] + 1, I[1] + 1, I[2] + 1}] = c / p2 * eps({I[0], I[1], I[2]}, s.P0, s.Q0, s.R0);
  q_checks(rep, cfg, d, &expect);
  noether_checks(rep, cfg, d);

  Sampler rng(cfg.seed ^ 0x5851f42d4c957f2dULL);
  const Vec T = rng.uniform_vec(n);
  const double a = rng.uniform(-1.0, 1.0);
  double ft = 0.0, fd = 0.0;
  for (const auto& jet : d.jets) {
    ft = std::max(ft, std::abs(f_closed(Translation{T}, jet)));
    fd = std::max(fd, std::abs(f_closed(Dilatation{a}, jet) + a));
  }
  rep.check("spiral_F_T", ft, tolerance(cfg, "closed_form"), "F_T = 0");
  rep.check("spiral_F_D", fd, tolerance(cfg, "closed_form"), "F_D = -a");
}

void circle_suite(Report& rep, const RunConfig& cfg, const FamilyData& d) {
  gram_checks(rep, cfg, d, 0.0, std::nan(""), std::nan(""));
  double res = 0.0, oracle = 0.0;
  std::map<std::vector<int>, Spread> spreads;
  std::vector<Spread> C(static_cast<std::size_t>(family_dim(d.family)));
  for (const auto& jet : d.jets) {
    res = std::max(res, max_abs(circle_residual(jet)));
    const IndexedQuantities q = q_circle_quantities(jet);
    const IndexedQuantities o = circle_pairing_oracle(jet);
    for (const auto& [key, v] : q) {
      spreads[key].add(v);
      oracle = std::max(oracle, rel_diff(v, o.at(key)));
    }
    const Vec c = mercator_C(jet);
    for (int i = 0; i < c.dim(); ++i) C[i].add(c[i]);
  }
  double cs = 0.0;
  for (const auto& s : C) cs = std::max(cs, s.value());
  rep.check("circle_residual", res, tolerance(cfg, "circle_residual"), "max |third-order residual|");
  rep.check("circle_q_spread", max_spread(spreads), tolerance(cfg, "circle_q_spread"), "T_3 quantities");
  rep.check("circle_q_oracle", oracle, tolerance(cfg, "closed_form"), "pairings with constant sections");
  rep.check("mercator_C_spread", cs, tolerance(cfg, "mercator_C"));
  rep.vacuous("kappa1", "undefined on conformal circles (Delta_4 = 0); traces carry nan");

  const int n = family_dim(d.family);
  Sampler rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
  double circ = 0.0;
  for (int kind = 0; kind < 4; ++kind) {
    const KillingField V = rng.killing_field(kind, n);
    for (const auto& jet : d.jets) circ = std::max(circ, rel_diff(f_circle_form(V, jet), f_closed(V, jet)));
  }
  noether_checks(rep, cfg, d);
  rep.check("noether_circle_form", circ, tolerance(cfg, "noether_agreement"),
            "second derivative form vs closed form");
}

void transformed_suite(Report& rep, const RunConfig& cfg, const FamilyData& d, const TransformedSpiral& ts) {
  const double c = ts.base.c;
  const int n = ts.B.dim();
  gram_checks(rep, cfg, d, -c * c, c * c - 1.0, c * c * c * c - c * c + 1.0);
  q_checks(rep, cfg, d, nullptr);
  noether_checks(rep, cfg, d);

  Sampler rng(cfg.seed ^ 0x5851f42d4c957f2dULL);
  const Vec T = rng.uniform_vec(n);
  const Rotation R = std::get<Rotation>(rng.killing_field(1, n));
  const double a = rng.uniform(-1.0, 1.0);
  const Vec S = rng.uniform_vec(n);
  const TransformedConserved cf = transformed_conserved_report(ts, T, R, a, S);
  double eC = 0.0, eF = 0.0, eY = 0.0;
  for (const auto& jet : d.jets) {
    eC = std::max(eC, rel_diff(mercator_C(jet), cf.C));
    eY = std::max(eY, rel_diff(special_conformal_vector(jet), cf.Y));
    eF = std::max({eF, rel_diff(f_closed(Translation{T}, jet), cf.F_T), rel_diff(f_closed(R, jet), cf.F_R),
                   rel_diff(f_closed(Dilatation{a}, jet), cf.F_D),
                   rel_diff(f_closed(SpecialConformal{S}, jet), cf.F_S)});
  }
  rep.check("transformed_C", eC, tolerance(cfg, "closed_form"), "C vs closed form");
  rep.check("transformed_Y", eY, tolerance(cfg, "closed_form"), "Y vs closed form");
  rep.check("transformed_F", eF, tolerance(cfg, "closed_form"), "F_T, F_R, F_D, F_S vs closed forms");
  double k1 = 0.0;
  Spread k;
  for (const auto& jet : d.jets) {
    const double v = kappa1(jet);
    k.add(v);
    k1 = std::max(k1, std::abs(v + (c * c - 1.0) / (2.0 * c)));
  }
  rep.check("kappa1", k1, tolerance(cfg, "kappa1"), "kappa_1 = -(c^2 - 1) / (2c)");
}

}  // namespace

Report verify_report(const RunConfig& cfg) {
  validate(cfg);
  FamilyData d{build_family(cfg), sample_times(cfg), {}, {}};
  if (family_dim(d.family) != cfg.n) throw ConfigError("n", "family dimension differs from n");
  d.jets = family_jets(d.family, d.ts, kTraceJetOrder, exec_of(cfg));
  d.gram = parallel_map(d.jets.size(), [&](std::size_t i) { return gram_invariants(d.jets[i], 5); },
                        exec_of(cfg));

  Report rep("verify");
  rep.note(std::string("family ") + family_name(d.family) + ", n = " + std::to_string(cfg.n) + ", " +
           std::to_string(d.ts.size()) + " samples on [" + format_real(cfg.window_start()) + ", " +
           format_real(cfg.window_end()) + "]");
  if (const auto* s = std::get_if<LogSpiral>(&d.family)) spiral_suite(rep, cfg, d, *s);
  else if (std::holds_alternative<Circle>(d.family)) circle_suite(rep, cfg, d);
  else transformed_suite(rep, cfg, d, std::get<TransformedSpiral>(d.family));
  return rep;
}

Report relations_report(const RunConfig& cfg) {
  validate(cfg);
  Sampler rng(cfg.seed);
  std::vector<PhasePoint> pts;
  for (int k = 0; k < cfg.sample_count(); ++k) pts.push_back(rng.phase_point(cfg.n));
  const std::vector<RelationReport> rs = relation_all(pts, exec_of(cfg));

  Report rep("relations");
  rep.note("n = " + std::to_string(cfg.n) + ", " + std::to_string(pts.size()) +
           " random phase points, residual / (1 + operand magnitude)");
  const double tol = tolerance(cfg, "relation");
  auto fold = [&](const char* name, IdentityResidual RelationReport::*m, const char* absent) {
    double worst = 0.0;
    bool vac = true;
    for (const auto& r : rs) {
      const IdentityResidual& x = r.*m;
      if (x.vacuous) continue;
      vac = false;
      worst = std::max(worst, x.residual / (1.0 + x.scale));
    }
    if (vac) rep.vacuous(name, absent);
    else rep.check(name, worst, tol);
  };
  fold("relation_Q_0ijN", &RelationReport::q0ijN, "no index pairs");
  fold("relation_Q_0ijk", &RelationReport::q0ijk, "rank-3 family absent for n < 3");
  fold("relation_Q_ijkN", &RelationReport::qijkN, "rank-3 family absent for n < 3");
  fold("relation_Q_ijkl", &RelationReport::qijkl, "rank-4 family absent for n < 4");

  if (cfg.middle_slot) {
    std::vector<CurveJet> jets;
    for (int k = 0; k < cfg.sample_count(); ++k) jets.push_back(enforce_stationary_alpha1(rng.curve_jet(cfg.n, 4)));
    double worst = 0.0;
    for (const auto& m : middle_slot_all(jets, exec_of(cfg)))
      worst = std::max(worst, m.identity_defect / (1.0 + m.scale));
    rep.check("middle_slot", worst, tolerance(cfg, "middle_slot"),
              "mercator expansion + tractor slot / u on jets with alpha_1' = 0");
  }
  return rep;
}

IntegrateResult integrate_trace(const RunConfig& cfg) {
  validate(cfg);
  const double t0 = cfg.window_start();
  PhasePoint start;
  if (cfg.has_phase_start()) {
    start = build_phase_start(cfg);
  } else {
    const SolutionFamily f = build_family(cfg);
    if (family_dim(f) != cfg.n) throw ConfigError("n", "family dimension differs from n");
    start = phase_from_jet(eval_jet(f, t0));
  }
  IntegrateResult out;
  Trajectory traj;
  try {
    traj = integrate(start, cfg.window_end() - t0, cfg.h, cfg.stride);
  } catch (const TrajectoryDegeneracy& e) {
    traj = e.partial();
    out.degenerate = true;
    out.degenerate_at = t0 + e.t();
  }
  if (!traj.points.empty()) out.trace = trace_from_trajectory(traj, t0);
  else out.trace.columns = trace_columns(cfg.n);
  if (out.degenerate)
    out.trace.notes.insert("velocity degenerated at t = " + format_real(out.degenerate_at) +
                           "; trace is partial");
  out.drift = max_relative_drift(out.trace);
  return out;
}

QuantityTrace quantities_trace(const RunConfig& cfg) {
  validate(cfg);
  if (cfg.has_phase_start()) {
    const PhasePoint p = build_phase_start(cfg);
    QuantityTrace tr;
    tr.columns = trace_columns(cfg.n);
    tr.rows.push_back(trace_row(cfg.window_start(), p, curve_jet_from_phase(p, kTraceJetOrder), tr.notes));
    return tr;
  }
  const SolutionFamily f = build_family(cfg);
  if (family_dim(f) != cfg.n) throw ConfigError("n", "family dimension differs from n");
  return trace_from_family(f, sample_times(cfg));
}

namespace {

int emit_report(const RunConfig& cfg, const Report& rep, std::ostream& out, std::ostream& err) {
  const std::string path = resolve_output_path(cfg);
  write_output(path, rep.serialize(cfg.format), out);
  rep.print_summary(path.empty() ? err : out);
  return rep.passed() ? kExitPass : kExitCheckFailure;
}

}  // namespace

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return emit_report(cfg, verify_report(cfg), out, err);
}

int cmd_relations(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return emit_report(cfg, relations_report(cfg), out, err);
}

int cmd_integrate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const IntegrateResult r = integrate_trace(cfg);
  const std::string path = resolve_output_path(cfg);
  std::string text;
  if (cfg.format == Format::Csv) {
    text = r.trace.to_csv();
  } else {
    nlohmann::json j = r.trace.to_json();
    nlohmann::json drift = nlohmann::json::object();
    for (const auto& [k, v] : r.drift) drift[k] = json_real(v);
    j["max_relative_drift"] = std::move(drift);
    j["step"] = cfg.h;
    j["method"] = "rk4";
    j["partial"] = r.degenerate;
    text = j.dump(2) + '\n';
  }
  write_output(path, text, out);
  std::ostream& log = path.empty() ? err : out;
  log << "max relative drift:";
  for (std::size_t c = r.trace.columns.empty() ? 0 : r.trace.column("H"); c < r.trace.columns.size(); ++c) {
    const auto& name = r.trace.columns[c];
    log << ' ' << name << '=' << format_real(r.drift.count(name) ? r.drift.at(name) : std::nan(""));
  }
  log << '\n';
  for (const auto& n : r.trace.notes) log << "note: " << n << '\n';
  if (r.degenerate) {
    log << "integrate: degenerate velocity at t = " << format_real(r.degenerate_at) << '\n';
    return kExitDegeneracy;
  }
  return kExitPass;
}

int cmd_quantities(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const QuantityTrace tr = quantities_trace(cfg);
  const std::string path = resolve_output_path(cfg);
  write_output(path, cfg.format == Format::Csv ? tr.to_csv() : tr.to_json().dump(2) + '\n', out);
  std::ostream& log = path.empty() ? err : out;
  for (const auto& n : tr.notes) log << "note: " << n << '\n';
  log << "quantities: " << tr.rows.size() << " rows\n";
  return kExitPass;
}

namespace {

const std::vector<std::string> kVectorKeys = {"p0", "q0", "r0", "x0", "u0", "a0", "b", "x", "u", "p", "r"};
const std::vector<std::string> kRealKeys = {"c", "max-b", "t0", "t1", "h"};
const std::vector<std::string> kIntKeys = {"n", "stride", "samples", "seed"};
const std::vector<std::string> kStringKeys = {"family", "output", "format"};

bool contains(const std::vector<std::string>& v, const std::string& k) {
  return std::find(v.begin(), v.end(), k) != v.end();
}

nlohmann::json flag_value(const std::string& key, const std::string& text) {
  if (contains(kVectorKeys, key) || contains(kStringKeys, key)) return text;
  std::size_t used = 0;
  try {
    if (contains(kIntKeys, key)) {
      const long long v = std::stoll(text, &used);
      if (used == text.size()) return v;
    } else {
      const double v = std::stod(text, &used);
      if (used == text.size()) return v;
    }
  } catch (const std::exception&) {
  }
  throw ConfigError(key, "cannot parse '" + text + "'");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Conserved quantities of curves on the flat conformal sphere"};
  app.name("confsphere");
  app.require_subcommand(1);
  app.set_help_flag("--help", "print help and exit");

  std::map<std::string, std::string> raw;
  std::string config_path;
  std::vector<std::string> tols;
  bool middle_slot = false, serial = false;

  auto opt = [&](CLI::App* sub, const std::string& key, const std::string& help) {
    sub->add_option_function<std::string>("--" + key, [&raw, key](const std::string& v) { raw[key] = v; }, help);
  };
  auto common = [&](CLI::App* sub) {
    opt(sub, "n", "dimension of the ambient space");
    opt(sub, "seed", "seed for random parameters and sample points");
    opt(sub, "output", "output file ('-' for stdout; default $" + std::string(kOutputDirEnv) + "/<command>.<format>)");
    opt(sub, "format", "csv or json");
    sub->add_option("--config", config_path, "JSON file whose keys override the flags");
  };
  auto family = [&](CLI::App* sub) {
    opt(sub, "family", "circle, spiral or transformed");
    opt(sub, "c", "spiral rate c");
    opt(sub, "p0", "spiral P0 (comma-separated)");
    opt(sub, "q0", "spiral Q0");
    opt(sub, "r0", "spiral centre R0");
    opt(sub, "x0", "circle point X0");
    opt(sub, "u0", "circle unit velocity U0");
    opt(sub, "a0", "circle acceleration A0, orthogonal to U0");
    opt(sub, "b", "special conformal parameter of the transformed spiral");
    opt(sub, "max-b", "bound on |b| when it is drawn at random (default 0.3)");
    opt(sub, "t0", "window start");
    opt(sub, "t1", "window end");
  };
  auto phase = [&](CLI::App* sub) {
    opt(sub, "x", "initial position");
    opt(sub, "u", "initial velocity");
    opt(sub, "p", "initial momentum conjugate to x");
    opt(sub, "r", "initial momentum conjugate to u");
  };
  auto tol = [&](CLI::App* sub) {
    sub->add_option("--tol", tols, "tolerance override name=value (repeatable)");
    sub->add_flag("--serial", serial, "run the serial reference kernels");
  };

  CLI::App* verify = app.add_subcommand("verify", "run the invariant suite of a solution family");
  common(verify);
  family(verify);
  opt(verify, "samples", "number of sample times (default 21)");
  tol(verify);

  CLI::App* integ = app.add_subcommand("integrate", "integrate Hamilton's equations and trace the quantities");
  common(integ);
  family(integ);
  phase(integ);
  opt(integ, "h", "RK4 step (default 1e-3)");
  opt(integ, "stride", "record every stride-th step (default 10)");

  CLI::App* rel = app.add_subcommand("relations", "check the algebraic identities at random points");
  common(rel);
  opt(rel, "samples", "number of random points (default 100)");
  rel->add_flag("--middle-slot", middle_slot, "also check the middle-slot identity on constrained jets");
  tol(rel);

  CLI::App* quant = app.add_subcommand("quantities", "tabulate the quantities along a family");
  common(quant);
  family(quant);
  phase(quant);
  opt(quant, "samples", "number of sample times (default 21)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << (verify->parsed() ? verify->help() : integ->parsed() ? integ->help()
            : rel->parsed() ? rel->help() : quant->parsed() ? quant->help() : app.help());
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  }

  RunConfig cfg;
  try {
    for (CLI::App* sub : {verify, integ, rel, quant})
      if (sub->parsed()) cfg.command = sub->get_name();
    nlohmann::json flags = nlohmann::json::object();
    for (const auto& [key, text] : raw) flags[key] = flag_value(key, text);
    for (const auto& t : tols) {
      const auto eq = t.find('=');
      if (eq == std::string::npos) throw ConfigError("tol", "expected name=value, got '" + t + "'");
      flags["tolerances"][t.substr(0, eq)] = flag_value("tol", t.substr(eq + 1));
    }
    if (middle_slot) flags["middle-slot"] = true;
    if (serial) flags["serial"] = true;
    apply_json(cfg, flags.dump());
    if (!config_path.empty()) apply_json_file(cfg, config_path);

    if (cfg.command == "verify") return cmd_verify(cfg, out, err);
    if (cfg.command == "integrate") return cmd_integrate(cfg, out, err);
    if (cfg.command == "relations") return cmd_relations(cfg, out, err);
    return cmd_quantities(cfg, out, err);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const DegeneracyError& e) {
    err << "degeneracy at t = " << format_real(e.t()) << ": " << e.what() << '\n';
    return kExitDegeneracy;
  } catch (const std::exception& e) {
    err << "runtime error: " << e.what() << '\n';
    return kExitDegeneracy;
  }
}

}  // namespace confsphere::cli
