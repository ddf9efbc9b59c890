// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "confsphere/families.hpp"
#include "confsphere/mercator.hpp"
#include "confsphere/multilinear.hpp"
#include "confsphere/sampling.hpp"
#include "confsphere/symmetries.hpp"
#include "confsphere/tractor.hpp"

using namespace confsphere;

namespace {

namespace tol {
constexpr double kDelta3 = 1e-9;
constexpr double kDelta4 = 1e-8;
constexpr double kDelta5 = 1e-6;
constexpr double kAlpha = 1e-9;
constexpr double kMercatorC = 1e-10;
constexpr double kQSpread = 1e-8;
constexpr double kQValue = 1e-8;
constexpr double kSpiralSeconds = 1.0;

constexpr double kCircleResidual = 1e-10;
constexpr double kCircleDelta4 = 1e-9;
constexpr double kOrderLo = 1.8, kOrderHi = 2.2;
constexpr double kCircleQSpread = 1e-9;

constexpr double kDrift = 1e-8;
constexpr double kMomentum = 1e-12;
constexpr double kHalvingLo = 12.0, kHalvingHi = 20.0;
constexpr double kHamiltonSeconds = 5.0;

constexpr double kRelations = 1e-10;

constexpr double kNoetherAgreement = 1e-9;
constexpr double kNoetherSpread = 1e-8;
constexpr double kLoxodrome = 1e-10;

constexpr double kOracle = 1e-10;
constexpr double kClosedForm = 1e-10;
constexpr double kSpiralDerivatives = 1e-12;
constexpr double kRoundTrip = 1e-12;

constexpr double kMiddleSlot = 1e-9;
constexpr double kPoisson = 1e-6;
constexpr double kTractorNorm = 1e-10;
constexpr double kKappa = 1e-8;
}  // namespace tol

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;

  void need(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double rel_diff(const Vec& a, const Vec& b) { return max_abs_diff(a, b) / std::max(1.0, max_abs(b)); }
double rel_diff(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

std::vector<double> window(int samples) {
  std::vector<double> ts;
  for (int k = 0; k < samples; ++k) ts.push_back(-1.0 + 2.0 * k / (samples - 1));
  return ts;
}

/// max |q(t) - q(t0)| / (1 + |q(t0)|) over keys and samples.
double spread(const std::vector<IndexedQuantities>& qs) {
  double w = 0.0;
  for (const auto& q : qs)
    for (const auto& [k, v] : qs.front()) w = std::max(w, std::abs(q.at(k) - v) / (1.0 + std::abs(v)));
  return w;
}

Outcome spiral_suite() {
  Outcome o;
  const auto start = Clock::now();
  const LogSpiral s = make_log_spiral(2.0, Vec{1, 0, 0}, Vec{0, 1, 0}, Vec{0.3, -0.2, 0.5});
  double d3 = 0, d4 = 0, d5 = 0, a1 = 0, a2 = 0, C = 0;
  std::vector<IndexedQuantities> qs;
  for (double t : window(21)) {
    const CurveJet jet = eval_jet(s, t, 6);
    const GramInvariants g = gram_invariants(jet, 5);
    double m5 = 1.0;
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) m5 = std::max(m5, std::abs(g.gram(i, j)));
    d3 = std::max(d3, std::abs(g.delta3 + 1.0));
    d4 = std::max(d4, std::abs(g.delta4 + 4.0));
    d5 = std::max(d5, std::abs(g.delta5) / std::pow(m5, 5));
    a1 = std::max(a1, std::abs(g.alpha1 - 3.0));
    a2 = std::max(a2, std::abs(g.alpha2 - 13.0));
    C = std::max(C, max_abs(mercator_C(jet)));
    qs.push_back(q_quantities(jet));
  }
  double qv = 0.0;
  for (const auto& [k, v] : qs.front()) {
    const double want = k == std::vector<int>{0, 1, 2, 4} ? 2.0 : q_family(k, 3) == QFamily::ZeroIJN ? 0.0 : v;
    qv = std::max(qv, std::abs(v - want));
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  o.need(d3 <= tol::kDelta3, "delta3 " + fmt(d3));
  o.need(d4 <= tol::kDelta4, "delta4 " + fmt(d4));
  o.need(d5 <= tol::kDelta5, "delta5 " + fmt(d5));
  o.need(a1 <= tol::kAlpha && a2 <= tol::kAlpha, "alpha " + fmt(std::max(a1, a2)));
  o.need(C <= tol::kMercatorC, "C " + fmt(C));
  o.need(spread(qs) <= tol::kQSpread, "Q spread " + fmt(spread(qs)));
  o.need(qv <= tol::kQValue, "Q_0ijN value " + fmt(qv));
  o.need(secs < tol::kSpiralSeconds, "runtime " + fmt(secs) + " s");
  if (o.pass)
    o.detail = "max|delta4+4| " + fmt(d4) + ", delta5 " + fmt(d5) + ", C " + fmt(C) + ", Q spread " + fmt(spread(qs)) +
               ", " + fmt(secs) + " s";
  return o;
}

Outcome circle_suite() {
  Outcome o;
  Sampler rng(2);
  const Circle c = rng.circle(3);
  double res = 0, d4 = 0;
  std::vector<IndexedQuantities> qs;
  for (double t : window(21)) {
    const CurveJet jet = eval_jet(c, t, 6);
    res = std::max(res, max_abs(circle_residual(jet)));
    d4 = std::max(d4, std::abs(gram_invariants(jet, 4).delta4));
    qs.push_back(q_circle_quantities(jet));
  }
  const CurveSampler f = [&](double t) { return eval_jet(c, t, 4); };
  const double e1 = parallel_defect(f, 0.3, 0.1, ParallelTarget::T3);
  const double e2 = parallel_defect(f, 0.3, 0.05, ParallelTarget::T3);
  const double e3 = parallel_defect(f, 0.3, 0.025, ParallelTarget::T3);
  const double p1 = std::log2(e1 / e2), p2 = std::log2(e2 / e3);
  auto in_band = [](double p) { return p >= tol::kOrderLo && p <= tol::kOrderHi; };
  o.need(res <= tol::kCircleResidual, "residual " + fmt(res));
  o.need(d4 <= tol::kCircleDelta4, "delta4 " + fmt(d4));
  o.need(in_band(p1) && in_band(p2), "T3 orders " + fmt(p1) + ", " + fmt(p2));
  o.need(spread(qs) <= tol::kCircleQSpread, "quantity spread " + fmt(spread(qs)));
  if (o.pass)
    o.detail = "residual " + fmt(res) + ", |delta4| " + fmt(d4) + ", T3 orders " + fmt(p1) + "/" + fmt(p2) +
               ", spread " + fmt(spread(qs));
  return o;
}

std::vector<double> observables(const PhasePoint& p) {
  std::vector<double> v = {hamiltonian(p)};
  const EQuantities e = e_quantities(p);
  v.push_back(e.E_D);
  for (int i = 0; i < 3; ++i) {
    v.push_back(e.E_T[i]);
    v.push_back(e.E_S[i]);
    for (int j = i + 1; j < 3; ++j) v.push_back(e.E_R(i, j));
  }
  for (const auto& [k, q] : q_phase(p)) v.push_back(q);
  return v;
}

Outcome hamiltonian_conservation() {
  Outcome o;
  const auto start = Clock::now();
  Sampler rng(3);
  double drift = 0, mom = 0, coarse = 0, fine = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const PhasePoint p0 = rng.phase_point(3);
    const std::vector<double> ref = observables(p0);
    for (const PhasePoint& p : integrate(p0, 1.0, 1e-3, 10).points) {
      const std::vector<double> v = observables(p);
      for (std::size_t k = 0; k < v.size(); ++k) drift = std::max(drift, std::abs(v[k] - ref[k]) / (1 + std::abs(ref[k])));
      mom = std::max(mom, max_abs_diff(p.P, p0.P));
    }
    auto h_drift = [&](double h) {
      double w = 0.0;
      for (const PhasePoint& p : integrate(p0, 1.0, h, 1).points)
        w = std::max(w, std::abs(hamiltonian(p) - ref[0]) / (1 + std::abs(ref[0])));
      return w;
    };
    coarse = std::max(coarse, h_drift(0.02));
    fine = std::max(fine, h_drift(0.01));
  }
  const double ratio = coarse / fine;
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  o.need(drift <= tol::kDrift, "drift " + fmt(drift));
  o.need(mom <= tol::kMomentum, "momentum " + fmt(mom));
  o.need(ratio >= tol::kHalvingLo && ratio <= tol::kHalvingHi, "halving ratio " + fmt(ratio));
  o.need(secs < tol::kHamiltonSeconds, "runtime " + fmt(secs) + " s");
  if (o.pass)
    o.detail = "max drift " + fmt(drift) + ", momentum " + fmt(mom) + ", halving ratio " + fmt(ratio) + ", " +
               fmt(secs) + " s";
  return o;
}

Outcome relations() {
  Outcome o;
  Sampler rng(4);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const RelationReport r = relation_check(rng.phase_point(4));
    for (const IdentityResidual* x : {&r.q0ijN, &r.q0ijk, &r.qijkN, &r.qijkl}) {
      o.need(!x->vacuous, "vacuous relation in n = 4");
      worst = std::max(worst, x->residual / (1.0 + x->scale));
    }
  }
  o.need(worst <= tol::kRelations, "scaled residual " + fmt(worst));
  if (o.pass) o.detail = "max scaled residual " + fmt(worst);
  return o;
}

Outcome noether() {
  Outcome o;
  Sampler rng(5);
  double agree = 0, spr = 0;
  for (int trial = 0; trial < 3; ++trial) {
    const std::vector<SolutionFamily> fams = {rng.spiral(3), rng.circle(3), rng.transformed_spiral(3, 0.3, -1, 1)};
    for (const SolutionFamily& f : fams)
      for (int kind = 0; kind < 4; ++kind) {
        const KillingField V = rng.killing_field(kind, 3);
        double f0 = 0.0;
        bool first = true;
        for (double t : window(21)) {
          const CurveJet jet = eval_jet(f, t, 4);
          const double g = f_generic(V, jet), c = f_closed(V, jet);
          if (first) f0 = c, first = false;
          agree = std::max(agree, std::abs(g - c) / (1 + std::abs(c)));
          spr = std::max(spr, std::abs(c - f0) / (1 + std::abs(f0)));
        }
      }
  }
  double lox = 0.0;
  for (double c : {0.5, 1.5, 2.5}) {
    const LogSpiral s = make_log_spiral(c, Vec{1, 0}, Vec{0, 1}, Vec{0, 0});
    for (double t : window(5)) lox = std::max(lox, std::abs(f_closed(Rotation::basis(2, 0, 1), eval_jet(s, t, 4)) - c));
  }
  o.need(agree <= tol::kNoetherAgreement, "generic vs closed " + fmt(agree));
  o.need(spr <= tol::kNoetherSpread, "spread " + fmt(spr));
  o.need(lox <= tol::kLoxodrome, "loxodrome F_R " + fmt(lox));
  if (o.pass) o.detail = "agreement " + fmt(agree) + ", spread " + fmt(spr) + ", loxodrome " + fmt(lox);
  return o;
}

Outcome oracles() {
  Outcome o;
  Sampler rng(6);
  double orc = 0, cf = 0, sd = 0, rt = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const CurveJet jet = rng.curve_jet(3 + trial % 3, 4);
    const IndexedQuantities a = normalized_pairing_oracle(jet), b = q_quantities(jet);
    for (const auto& [k, v] : b) orc = std::max(orc, rel_diff(a.at(k), v));
  }
  for (int trial = 0; trial < 100; ++trial) {
    const CurveJet jet = rng.curve_jet(2 + trial % 4, 4);
    const GramInvariants g = gram_invariants(jet, 4);
    const Alpha1Delta4 c = closed_form_alpha1_delta4(jet);
    cf = std::max({cf, rel_diff(c.alpha1, g.alpha1), rel_diff(c.delta4, g.delta4)});
    const PhasePoint p = phase_from_jet(jet);
    const Acceleration acc = accel_from_phase(p);
    rt = std::max({rt, rel_diff(acc.A, jet.A()), rel_diff(acc.A1, jet.A1())});
  }
  for (int trial = 0; trial < 50; ++trial) {
    const LogSpiral s = rng.spiral(3);
    const double t = rng.uniform(-1, 1);
    const CurveJet jet = eval_jet(s, t, 3);
    const SpiralDerivatives d = spiral_closed_derivatives(s, t);
    sd = std::max({sd, rel_diff(d.U, jet.U()), rel_diff(d.A, jet.A()), rel_diff(d.A1, jet.A1())});
  }
  o.need(orc <= tol::kOracle, "pairing oracle " + fmt(orc));
  o.need(cf <= tol::kClosedForm, "closed-form alpha1/delta4 " + fmt(cf));
  o.need(sd <= tol::kSpiralDerivatives, "spiral derivatives " + fmt(sd));
  o.need(rt <= tol::kRoundTrip, "phase round trip " + fmt(rt));
  if (o.pass)
    o.detail = "pairing (per-family frozen signs) " + fmt(orc) + ", alpha1/delta4 " + fmt(cf) + ", spiral " + fmt(sd) +
               ", round trip " + fmt(rt);
  return o;
}

Outcome middle_slot() {
  Outcome o;
  Sampler rng(7);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const MiddleSlotResiduals m = middle_slot_residuals(enforce_stationary_alpha1(rng.curve_jet(2 + trial % 4, 4)));
    worst = std::max(worst, m.identity_defect / (1 + m.scale));
  }
  o.need(worst <= tol::kMiddleSlot, "defect " + fmt(worst));
  if (o.pass) o.detail = "max scaled defect " + fmt(worst);
  return o;
}

Outcome poisson() {
  Outcome o;
  Sampler rng(8);
  std::vector<PhasePoint> pts;
  for (int k = 0; k < 50; ++k) pts.push_back(rng.phase_point(3));
  const PhaseFunction H = [](const PhasePoint& p) { return hamiltonian(p); };
  double withH = 0.0;
  for (const auto& [name, f] : reduced_functions())
    for (const auto& p : pts) withH = std::max(withH, std::abs(poisson_bracket_fd(f, H, p)));
  const BracketTable t = involutivity_check(pts);
  double inv = 0.0;
  for (int a = 0; a < t.max_abs.rows(); ++a)
    for (int b = 0; b < t.max_abs.cols(); ++b) inv = std::max(inv, t.max_abs(a, b));
  o.need(withH <= tol::kPoisson, "{f,H} " + fmt(withH));
  o.need(inv <= tol::kPoisson, "involutive set " + fmt(inv));
  if (o.pass) o.detail = "max |{f,H}| " + fmt(withH) + ", involutive set " + fmt(inv);
  return o;
}

Outcome spiral_tractor() {
  Outcome o;
  Sampler rng(9);
  double nrm = 0.0, kap = 0.0;
  std::vector<LogSpiral> spirals = {make_log_spiral(2.0, Vec{1, 0, 0}, Vec{0, 1, 0}, Vec{0.3, -0.2, 0.5})};
  for (int k = 0; k < 4; ++k) spirals.push_back(rng.spiral(3));
  for (const LogSpiral& s : spirals) {
    const double c = s.c;
    for (double t : window(21)) {
      const Vec A = spiral_acceleration_tractor(s, t);
      nrm = std::max(nrm, std::abs(tractor_metric(A, A) - (c * c - 1)));
      kap = std::max(kap, std::abs(kappa1(eval_jet(s, t, 6)) + (c * c - 1) / (2 * c)));
    }
  }
  o.need(nrm <= tol::kTractorNorm, "<A,A> " + fmt(nrm));
  o.need(kap <= tol::kKappa, "kappa1 " + fmt(kap));
  if (o.pass) o.detail = "<A,A> deviation " + fmt(nrm) + ", kappa1 deviation " + fmt(kap);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"spiral invariant suite", spiral_suite},
      {"circle suite", circle_suite},
      {"Hamiltonian conservation", hamiltonian_conservation},
      {"phase-space relations (n = 4)", relations},
      {"Noether cross-check", noether},
      {"oracle equivalences", oracles},
      {"middle-slot identity", middle_slot},
      {"Poisson suite", poisson},
      {"spiral tractor and kappa1", spiral_tractor},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s criterion %zu: %s (%s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    failed += !o.pass;
  }
  return failed ? 1 : 0;
}
