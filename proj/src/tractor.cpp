#include "confsphere/tractor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "confsphere/errors.hpp"
#include "confsphere/mercator.hpp"

namespace confsphere {

namespace {

// Appends zero derivative levels.  Used only where the stored result does not
// depend on the missing level (e.g. e_0 slots annihilated by T in a wedge).
CurveJet padded(const CurveJet& jet, int k) {
  if (jet.levels() >= k) return jet;
  CurveJet p = jet;
  while (p.levels() < k) p.derivs.emplace_back(static_cast<std::size_t>(jet.dim()));
  return p;
}

Jet det_jet(const std::vector<std::vector<Jet>>& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  Jet r(m[0][0].order());
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<Jet>> minor;
    minor.reserve(n - 1);
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Jet> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(m[i][c]);
      minor.push_back(std::move(row));
    }
    const Jet term = m[0][j] * det_jet(minor);
    if (j % 2 == 0)
      r += term;
    else
      r -= term;
  }
  return r;
}

struct Invariants {
  double u, u2, UA, AA, UA1, AA1, A1A1;
};

Invariants invariants(const CurveJet& jet) {
  const Vec& U = jet.U();
  const Vec& A = jet.A();
  const Vec& A1 = jet.A1();
  const double u2 = norm_sq(U);
  if (!(u2 > 0.0)) throw DomainError("velocity vanishes (u = 0)");
  return {std::sqrt(u2), u2, dot(U, A), dot(A, A), dot(U, A1), dot(A, A1), dot(A1, A1)};
}

}  // namespace

std::vector<JetVec> canonical_tractor_jets(const JetVec& position, int count) {
  if (count < 1 || count > 5) throw DomainError("tractor count must be 1..5");
  if (position.order() < count)
    throw JetOrderError(std::to_string(count) + " tractors need a position jet of order " +
                        std::to_string(count));
  const int n = position.dim();
  const JetVec U = shift(position);
  const Jet u2 = dot(U, U);
  if (!(u2.value() > 0.0)) throw DomainError("velocity vanishes (u = 0)");

  JetVec T(n + 2, U.order());
  T[0] = recip(sqrt(u2));
  std::vector<JetVec> seq{T};
  for (int k = 1; k < count; ++k) {
    const JetVec& cur = seq.back();
    const int o = cur.order() - 1;
    const JetVec Ut = U.truncated(o);
    const Jet w0 = cur[0].truncated(o);
    JetVec nxt(n + 2, o);
    nxt[0] = shift(cur[0]);
    nxt[n + 1] = shift(cur[n + 1]);
    for (int i = 0; i < n; ++i) {
      nxt[1 + i] = shift(cur[1 + i]) + w0 * Ut[i];
      nxt[n + 1] -= cur[1 + i].truncated(o) * Ut[i];
    }
    seq.push_back(std::move(nxt));
  }
  return seq;
}

std::vector<Vec> canonical_tractors(const CurveJet& jet, int count) {
  jet.require(count, "canonical_tractors");
  std::vector<Vec> out;
  for (const JetVec& t : canonical_tractor_jets(jet.position_jet().truncated(count), count))
    out.push_back(t.value());
  return out;
}

GramInvariants gram_invariants(const CurveJet& jet, int max_ell) {
  if (max_ell < 3 || max_ell > 5) throw DomainError("max_ell must be 3, 4 or 5");
  jet.require(max_ell, "gram_invariants");
  const auto seq = canonical_tractor_jets(jet.position_jet(), max_ell);

  GramInvariants g;
  g.gram = Matrix(max_ell, max_ell);
  for (int a = 0; a < max_ell; ++a)
    for (int b = 0; b < max_ell; ++b)
      g.gram(a, b) = tractor_metric(seq[a].value(), seq[b].value());

  const Jet a1 = tractor_metric(seq[2], seq[2]);
  g.alpha1 = a1.value();
  if (a1.order() >= 1) g.alpha1_rate = a1[1];

  Matrix m3(3, 3);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) m3(a, b) = g.gram(a, b);
  g.delta3 = det(m3);

  if (max_ell >= 4) {
    g.alpha2 = g.gram(3, 3);
    const int o = seq[3].order();
    std::vector<std::vector<Jet>> m4(4);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        m4[a].push_back(tractor_metric(seq[a].truncated(o), seq[b].truncated(o)));
    const Jet d4 = det_jet(m4);
    g.delta4 = d4.value();
    if (o >= 1) g.delta4_rate = d4.derivative(1);
    if (o >= 2) g.delta4_rate2 = d4.derivative(2);
  }
  if (max_ell == 5) g.delta5 = det(g.gram);
  return g;
}

double circle_band(double alpha1) { return 1e-9 * (1.0 + alpha1 * alpha1); }

bool is_conformal_circle(const GramInvariants& g) {
  return std::abs(g.delta4) <= circle_band(g.alpha1);
}

Alpha1Delta4 closed_form_alpha1_delta4(const CurveJet& jet) {
  const Invariants s = invariants(jet);
  const double u2 = s.u2, u4 = u2 * u2, u6 = u4 * u2, u8 = u4 * u4;
  const double UA2 = s.UA * s.UA;
  const double a1 = -6.0 * UA2 / u4 + 2.0 * s.UA1 / u2 + 3.0 * s.AA / u2;
  const double d4 = 9.0 * UA2 * UA2 / u8 - 6.0 * UA2 * s.UA1 / u6 - 9.0 * UA2 * s.AA / u6 +
                    6.0 * s.UA * s.AA1 / u4 + s.UA1 * s.UA1 / u4 - s.A1A1 / u2;
  return {a1, d4};
}

double alpha1_rate_closed_form(const CurveJet& jet) {
  const Invariants s = invariants(jet);
  const double UA2 = dot(jet.U(), jet.A2());
  const double u2 = s.u2, u4 = u2 * u2, u6 = u4 * u2;
  return 24.0 * s.UA * s.UA * s.UA / u6 - 18.0 * s.UA * s.AA / u4 - 16.0 * s.UA * s.UA1 / u4 +
         8.0 * s.AA1 / u2 + 2.0 * UA2 / u2;
}

CurveJet enforce_stationary_alpha1(CurveJet jet) {
  jet.require(4, "enforce_stationary_alpha1");
  const double rate = alpha1_rate_closed_form(jet);
  // alpha_1' is affine in <U,A''> with slope 2/u^2.
  jet.derivs[4] -= (rate / 2.0) * jet.U();
  return jet;
}

QFamily q_family(const std::vector<int>& key, int n) {
  const int N = n + 1;
  if (key.size() != 4) throw DomainError("Q key must have 4 indices");
  const bool zero = key.front() == 0;
  const bool inf = key.back() == N;
  if (zero && inf) return QFamily::ZeroIJN;
  if (zero) return QFamily::ZeroIJK;
  if (inf) return QFamily::IJKN;
  return QFamily::IJKL;
}

namespace {

std::string joined(const std::vector<int>& key, int n) {
  std::string s;
  for (int i : key)
    if (i != 0 && i != n + 1) s += std::to_string(i);
  return s;
}

}  // namespace

std::string q_label(const std::vector<int>& key, int n) {
  static const char* names[] = {"Q_0ijN_", "Q_0ijk_", "Q_ijkN_", "Q_ijkl_"};
  return names[static_cast<int>(q_family(key, n))] + joined(key, n);
}

std::string circle_label(const std::vector<int>& key, int n) {
  if (key.size() != 3) throw DomainError("circle quantity key must have 3 indices");
  const bool zero = key.front() == 0;
  const bool inf = key.back() == n + 1;
  const char* name = zero ? (inf ? "Q_0iN_" : "Q_0ij_") : (inf ? "Q_ijN_" : "Q_ijk_");
  return name + joined(key, n);
}

double pairing_normalization(QFamily f) {
  switch (f) {
    case QFamily::ZeroIJN:
      return 1.0;
    case QFamily::ZeroIJK:
      return 1.0;
    case QFamily::IJKN:
      return -1.0;
    case QFamily::IJKL:
      return 1.0;
  }
  return 1.0;
}

IndexedQuantities q_quantities(const CurveJet& jet, bool scale_by_delta4) {
  jet.require(3, "q_quantities");
  const Invariants s = invariants(jet);
  const Vec& X = jet.X();
  const Vec& U = jet.U();
  const Vec& A = jet.A();
  const Vec& A1 = jet.A1();
  const int n = jet.dim();
  const int N = n + 1;
  const double u2 = s.u2, u4 = u2 * u2;
  const double XX = norm_sq(X);

  double scale = 1.0;
  if (scale_by_delta4) {
    const Alpha1Delta4 cf = closed_form_alpha1_delta4(jet);
    if (!(cf.delta4 < -circle_band(cf.alpha1)))
      throw UndefinedInvariantError("(-Delta_4)^(-1/2) scaling needs Delta_4 < 0");
    scale = 1.0 / std::sqrt(-cf.delta4);
  }

  IndexedQuantities q;
  for (const auto& ij : increasing_tuples(0, n, 2)) {
    const int i = ij[0], j = ij[1];
    double v = 3.0 * s.UA * eps({i, j}, U, A) / u4 - eps({i, j}, U, A1) / u2;
    for (int l = 0; l < n; ++l) v += eps({i, j, l}, U, A, A1) * X[l] / u4;
    q[{0, i + 1, j + 1, N}] = scale * v;
  }
  for (const auto& ijk : increasing_tuples(0, n, 3)) {
    const int i = ijk[0], j = ijk[1], k = ijk[2];
    const double uaa = eps({i, j, k}, U, A, A1);
    double v = 3.0 * s.UA * eps({i, j, k}, X, U, A) / u4 - eps({i, j, k}, X, U, A1) / u2 +
               0.5 * XX * uaa / u4;
    for (int l = 0; l < n; ++l) v += eps({i, j, k, l}, X, U, A, A1) * X[l] / u4;
    q[{0, i + 1, j + 1, k + 1}] = scale * v;
    q[{i + 1, j + 1, k + 1, N}] = scale * uaa / u4;
  }
  for (const auto& I : increasing_tuples(0, n, 4))
    q[{I[0] + 1, I[1] + 1, I[2] + 1, I[3] + 1}] = scale * epsilon(I, std::vector<const Vec*>{&X, &U, &A, &A1}) / u4;
  return q;
}

WedgeTractor parallel_section(const Vec& X, const std::vector<int>& idx) {
  const Matrix rho = algebraic_action(X);
  const WedgeTractor w = WedgeTractor::basis(X.dim() + 2, idx);
  const WedgeTractor r1 = act(rho, w);
  const WedgeTractor r2 = act(rho, r1);
  return w - r1 + 0.5 * r2;
}

WedgeTractor t4_wedge(const CurveJet& jet) {
  jet.require(3, "t4_wedge");
  return wedge(canonical_tractors(padded(jet, 4), 4));
}

WedgeTractor t3_wedge(const CurveJet& jet) {
  jet.require(2, "t3_wedge");
  return wedge(canonical_tractors(padded(jet, 3), 3));
}

WedgeTractor t4_closed_form(const CurveJet& jet) {
  jet.require(3, "t4_closed_form");
  const Invariants s = invariants(jet);
  const Vec& U = jet.U();
  const Vec& A = jet.A();
  const Vec& A1 = jet.A1();
  const int n = jet.dim();
  const double u2 = s.u2, u4 = u2 * u2;
  WedgeTractor w(n + 2, 4);
  for (const auto& I : increasing_tuples(0, n, 3))
    w.add({0, I[0] + 1, I[1] + 1, I[2] + 1}, eps({I[0], I[1], I[2]}, U, A, A1) / u4);
  for (const auto& I : increasing_tuples(0, n, 2))
    w.add({0, I[0] + 1, I[1] + 1, n + 1},
          -3.0 * s.UA * eps({I[0], I[1]}, U, A) / u4 + eps({I[0], I[1]}, U, A1) / u2);
  return w;
}

WedgeTractor t3_closed_form(const CurveJet& jet) {
  jet.require(2, "t3_closed_form");
  const Vec& U = jet.U();
  const Vec& A = jet.A();
  const int n = jet.dim();
  const double u2 = jet.u_sq();
  if (!(u2 > 0.0)) throw DomainError("velocity vanishes (u = 0)");
  const double u = std::sqrt(u2);
  WedgeTractor w(n + 2, 3);
  for (const auto& I : increasing_tuples(0, n, 2))
    w.add({0, I[0] + 1, I[1] + 1}, eps({I[0], I[1]}, U, A) / (u2 * u));
  for (int i = 0; i < n; ++i) w.add({0, i + 1, n + 1}, -U[i] / u);
  return w;
}

IndexedQuantities parallel_section_pairing_oracle(const CurveJet& jet) {
  const WedgeTractor T4 = t4_wedge(jet);
  const int n = jet.dim();
  IndexedQuantities out;
  for (const auto& I : increasing_tuples(0, n + 2, 4))
    out[I] = wedge_pair(parallel_section(jet.X(), I), T4);
  return out;
}

IndexedQuantities normalized_pairing_oracle(const CurveJet& jet) {
  IndexedQuantities out = parallel_section_pairing_oracle(jet);
  for (auto& [k, v] : out) v *= pairing_normalization(q_family(k, jet.dim()));
  return out;
}

IndexedQuantities q_circle_quantities(const CurveJet& jet) {
  jet.require(2, "q_circle_quantities");
  const Vec& X = jet.X();
  const Vec& U = jet.U();
  const Vec& A = jet.A();
  const int n = jet.dim();
  const int N = n + 1;
  const double u2 = jet.u_sq();
  if (!(u2 > 0.0)) throw DomainError("velocity vanishes (u = 0)");
  const double u = std::sqrt(u2), u3 = u2 * u;
  const double XX = norm_sq(X);

  IndexedQuantities q;
  for (int i = 0; i < n; ++i) {
    double v = U[i] / u;
    for (int k = 0; k < n; ++k)
      if (k != i) v += eps({i, k}, U, A) * X[k] / u3;
    q[{0, i + 1, N}] = v;
  }
  for (const auto& ij : increasing_tuples(0, n, 2)) {
    const int i = ij[0], j = ij[1];
    const double ua = eps({i, j}, U, A);
    double v = -eps({i, j}, X, U) / u + 0.5 * XX * ua / u3;
    for (int k = 0; k < n; ++k)
      if (k != i && k != j) v -= eps({i, j, k}, X, U, A) * X[k] / u3;
    q[{0, i + 1, j + 1}] = v;
    q[{i + 1, j + 1, N}] = ua / u3;
  }
  for (const auto& I : increasing_tuples(0, n, 3))
    q[{I[0] + 1, I[1] + 1, I[2] + 1}] = eps({I[0], I[1], I[2]}, X, U, A) / u3;
  return q;
}

IndexedQuantities circle_pairing_oracle(const CurveJet& jet) {
  const WedgeTractor T3 = t3_wedge(jet);
  IndexedQuantities out;
  for (const auto& I : increasing_tuples(0, jet.dim() + 2, 3))
    out[I] = wedge_pair(parallel_section(jet.X(), I), T3);
  return out;
}

double kappa1(const CurveJet& jet) {
  jet.require(6, "kappa1");
  const GramInvariants g = gram_invariants(jet, 4);
  const double d4 = g.delta4;
  if (!(d4 < -circle_band(g.alpha1)))
    throw UndefinedInvariantError("kappa_1 is undefined unless Delta_4 < 0");
  const double d4p = *g.delta4_rate;
  const double d4pp = *g.delta4_rate2;
  return -0.5 * std::pow(-d4, -2.5) *
         (g.alpha1 * d4 * d4 - 0.5 * d4 * d4pp + 9.0 / 16.0 * d4p * d4p);
}

MiddleSlotResiduals middle_slot_residuals(const CurveJet& jet) {
  jet.require(4, "middle_slot_residuals");
  const Invariants s = invariants(jet);
  const Vec& U = jet.U();
  const Vec& A = jet.A();
  const Vec& A1 = jet.A1();
  const Vec& A2 = jet.A2();
  const double u = s.u, u2 = s.u2, u3 = u2 * u, u4 = u2 * u2;
  const double UA = s.UA, AA = s.AA, UA1 = s.UA1, AA1 = s.AA1;

  Vec slot = ((6.0 * UA * AA / u4 - 4.0 * AA1 / u2) / u) * U +
             ((-12.0 * UA * UA / u4 + 4.0 * UA1 / u2 + 3.0 * AA / u2) / u) * A +
             (4.0 * UA / u3) * A1 - (1.0 / u) * A2;
  Vec merc = mercator_expansion(jet);
  const Vec slot_u = slot / u;
  const double defect = max_abs(merc + slot_u);
  const double scale = std::max(max_abs(merc), max_abs(slot_u));
  return {std::move(slot), std::move(merc), defect, scale};
}

Vec tractor_middle_slot(const CurveJet& jet) {
  jet.require(4, "tractor_middle_slot");
  const auto seq = canonical_tractors(padded(jet, 5), 5);
  const double a1 = tractor_metric(seq[2], seq[2]);
  const int n = jet.dim();
  Vec out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[i] = -(seq[4][1 + i] + a1 * seq[2][1 + i]);
  return out;
}

double parallel_defect(const CurveSampler& sample, double t, double h, ParallelTarget target) {
  if (!(h > 0.0)) throw DomainError("finite-difference step must be positive");
  auto at = [&](double s, Vec* U) {
    const CurveJet j = sample(s);
    if (U) *U = j.U();
    if (target == ParallelTarget::T3) return t3_wedge(j);
    WedgeTractor w = t4_wedge(j);
    if (target == ParallelTarget::T4Normalized) {
      const Alpha1Delta4 cf = closed_form_alpha1_delta4(j);
      if (!(cf.delta4 < 0.0)) throw UndefinedInvariantError("normalized T_4 needs Delta_4 < 0");
      w *= 1.0 / std::sqrt(-cf.delta4);
    }
    return w;
  };
  Vec U;
  const WedgeTractor w0 = at(t, &U);
  const WedgeTractor wp = at(t + h, nullptr);
  const WedgeTractor wm = at(t - h, nullptr);
  const WedgeTractor d = (1.0 / (2.0 * h)) * (wp - wm) + act(algebraic_action(U), w0);
  return d.max_abs();
}

}  // namespace confsphere
