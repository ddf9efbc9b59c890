#include <cmath>

#include "confsphere/errors.hpp"
#include "confsphere/families.hpp"
#include "confsphere/mercator.hpp"
#include "confsphere/multilinear.hpp"
#include "confsphere/sampling.hpp"
#include "confsphere/tractor.hpp"
#include "support.hpp"

using namespace confsphere;
using testing::rel;

namespace {

CurveJet straight_line(int n, int levels) {
  std::vector<Vec> d(levels + 1, Vec(n));
  d[1][0] = 1.0;
  return CurveJet(0.0, d);
}

/// Polynomial path with the given Taylor data at 0, sampled anywhere.
CurveSampler polynomial_path(CurveJet at0, int order) {
  return [at0 = std::move(at0), order](double t) {
    const int n = at0.dim();
    const Jet s = Jet::variable(t, order);
    JetVec x(n, order);
    Jet pw = Jet::constant(1.0, order);
    double fact = 1.0;
    for (int k = 0; k <= at0.levels(); ++k) {
      if (k > 0) {
        pw = pw * s;
        fact *= k;
      }
      for (int i = 0; i < n; ++i) x[i] += (at0.derivs[k][i] / fact) * pw;
    }
    return CurveJet::from_position_jet(x, t);
  };
}

double rel_map(const IndexedQuantities& a, const IndexedQuantities& b) {
  double w = 0.0;
  for (const auto& [k, v] : b) {
    auto it = a.find(k);
    REQUIRE(it != a.end());
    w = std::max(w, std::abs(it->second - v) / std::max(1.0, std::abs(v)));
  }
  CHECK(a.size() == b.size());
  return w;
}

LogSpiral planar_spiral() { return make_log_spiral(1.0, Vec{1, 0}, Vec{0, 1}, Vec{0, 0}); }

}  // namespace

TEST_CASE("straight line tractors") {
  const auto tr = canonical_tractors(straight_line(3, 3), 3);
  CHECK(tr[0] == Vec{1, 0, 0, 0, 0});
  CHECK(tr[1] == Vec{0, 1, 0, 0, 0});
  CHECK(tr[2] == Vec{0, 0, 0, 0, -1});
}

TEST_CASE("acceleration tractor of the planar spiral") {
  const auto tr = canonical_tractors(eval_jet(planar_spiral(), 0.0, 3), 3);
  CHECK(tr[2][0] == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-14));
}

TEST_CASE("recurrence matches the displayed U and A tractors") {
  Sampler rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 3;
    const CurveJet jet = rng.curve_jet(n, 3);
    const Vec &U = jet.U(), &A = jet.A(), &A1 = jet.A1();
    const double u = std::sqrt(jet.u_sq()), ua = dot(U, A);
    Vec Ut(n + 2), At(n + 2);
    Ut[0] = -ua / std::pow(u, 3);
    At[0] = 3 * ua * ua / std::pow(u, 5) - (dot(A, A) + dot(U, A1)) / std::pow(u, 3);
    for (int i = 0; i < n; ++i) {
      Ut[1 + i] = U[i] / u;
      At[1 + i] = -2 * ua * U[i] / std::pow(u, 3) + A[i] / u;
    }
    At[n + 1] = -u;
    const auto tr = canonical_tractors(jet, 3);
    CHECK(rel(tr[1], Ut) <= 1e-12);
    CHECK(rel(tr[2], At) <= 1e-12);
  }
}

TEST_CASE("tractor count needs enough jet levels") {
  Sampler rng(22);
  CHECK_THROWS_AS(canonical_tractors(rng.curve_jet(3, 2), 3), JetOrderError);
  CHECK_THROWS_AS(gram_invariants(rng.curve_jet(3, 4), 5), JetOrderError);
  std::vector<Vec> d = {Vec{0, 0}, Vec{0, 0}, Vec{1, 0}, Vec{0, 0}};
  CHECK_THROWS_AS(canonical_tractors(CurveJet(0.0, d), 3), DomainError);
}

TEST_CASE("Gram invariants of spirals") {
  for (double c : {0.5, 1.0, 2.0, 3.0}) {
    const LogSpiral s = make_log_spiral(c, Vec{1, 0, 0}, Vec{0, 1, 0}, Vec{0.3, -0.2, 0.5});
    const GramInvariants g = gram_invariants(eval_jet(s, 0.4, 6), 5);
    CHECK(g.delta3 == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(g.alpha1 == doctest::Approx(c * c - 1.0).epsilon(1e-12));
    CHECK(g.alpha2 == doctest::Approx(c * c * c * c - c * c + 1.0).epsilon(1e-12));
    CHECK(g.delta4 == doctest::Approx(-c * c).epsilon(1e-12));
    CHECK(std::abs(g.delta5) <= 1e-9);
    REQUIRE(g.delta4_rate);
    CHECK(std::abs(*g.delta4_rate) <= 1e-9);
  }
}

TEST_CASE("closed forms of alpha_1 and Delta_4") {
  const Alpha1Delta4 planar = closed_form_alpha1_delta4(eval_jet(planar_spiral(), 0.0, 3));
  CHECK(planar.delta4 == doctest::Approx(-1.0).epsilon(1e-14));
  const LogSpiral s2 = make_log_spiral(2.0, Vec{1, 0, 0}, Vec{0, 1, 0}, Vec{0, 0, 0});
  CHECK(closed_form_alpha1_delta4(eval_jet(s2, 0.3, 3)).alpha1 == doctest::Approx(3.0).epsilon(1e-12));
  const Alpha1Delta4 line = closed_form_alpha1_delta4(straight_line(3, 3));
  CHECK(line.alpha1 == 0.0);
  CHECK(line.delta4 == 0.0);

  Sampler rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const CurveJet jet = rng.curve_jet(2 + trial % 4, 4);
    const GramInvariants g = gram_invariants(jet, 4);
    const Alpha1Delta4 cf = closed_form_alpha1_delta4(jet);
    CHECK(rel(cf.alpha1, g.alpha1) <= 1e-10);
    CHECK(rel(cf.delta4, g.delta4) <= 1e-10);
    REQUIRE(g.alpha1_rate);
    CHECK(rel(alpha1_rate_closed_form(jet), *g.alpha1_rate) <= 1e-10);
  }
}

TEST_CASE("circle family has Delta_4 = 0") {
  Sampler rng(24);
  for (int trial = 0; trial < 20; ++trial) {
    const Circle c = rng.circle(2 + trial % 3);
    const GramInvariants g = gram_invariants(eval_jet(c, rng.uniform(-1, 1), 6), 5);
    CHECK(std::abs(g.delta4) <= 1e-9);
    CHECK(is_conformal_circle(g));
  }
  const LogSpiral s = planar_spiral();
  CHECK_FALSE(is_conformal_circle(gram_invariants(eval_jet(s, 0.0, 6), 4)));
}

TEST_CASE("property: Delta_3 = -1, Delta_4 <= 0 and the M pattern") {
  Sampler rng(25);
  for (int trial = 0; trial < 100; ++trial) {
    const CurveJet jet = rng.curve_jet(2 + trial % 4, 6);
    const GramInvariants g = gram_invariants(jet, 5);
    const double a1 = g.alpha1, s = 1.0 + a1 * a1;
    CHECK(std::abs(g.delta3 + 1.0) <= 1e-10);
    CHECK(g.delta4 <= 1e-10 * s);
    REQUIRE(g.alpha1_rate);
    const double r = *g.alpha1_rate;
    const Matrix& M = g.gram;
    const double scale = 1.0 + std::abs(a1) + std::abs(r);
    CHECK(std::abs(M(0, 0)) <= 1e-10);
    CHECK(std::abs(M(0, 1)) <= 1e-10);
    CHECK(std::abs(M(0, 2) + 1.0) <= 1e-10);
    CHECK(std::abs(M(0, 3)) <= 1e-10);
    CHECK(std::abs(M(0, 4) - a1) <= 1e-10 * scale);
    CHECK(std::abs(M(1, 1) - 1.0) <= 1e-10);
    CHECK(std::abs(M(1, 3) + a1) <= 1e-10 * scale);
    CHECK(std::abs(M(1, 4) + 1.5 * r) <= 1e-10 * scale);
    CHECK(std::abs(M(2, 3) - 0.5 * r) <= 1e-10 * scale);
  }
}

TEST_CASE("A' = -alpha_1 U - alpha_1'/2 T on circles") {
  Sampler rng(26);
  for (int trial = 0; trial < 20; ++trial) {
    const Circle c = rng.circle(3);
    const CurveJet jet = eval_jet(c, rng.uniform(-1, 1), 6);
    const auto tr = canonical_tractors(jet, 4);
    const GramInvariants g = gram_invariants(jet, 4);
    const Vec lhs = tr[3] + g.alpha1 * tr[1] + (0.5 * *g.alpha1_rate) * tr[0];
    CHECK(max_abs(lhs) <= 1e-9);
  }
}

TEST_CASE("T_4 and T_3 closed forms match the wedges") {
  Sampler rng(27);
  for (int trial = 0; trial < 50; ++trial) {
    const CurveJet jet = rng.curve_jet(2 + trial % 4, 4);
    const WedgeTractor w4 = t4_wedge(jet);
    CHECK((w4 - t4_closed_form(jet)).max_abs() <= 1e-10 * std::max(1.0, w4.max_abs()));
    const WedgeTractor w3 = t3_wedge(jet);
    CHECK((w3 - t3_closed_form(jet)).max_abs() <= 1e-10 * std::max(1.0, w3.max_abs()));
  }
}

TEST_CASE("Q quantities: examples") {
  const LogSpiral s = make_log_spiral(2.0, Vec{1, 0, 0}, Vec{0, 1, 0}, Vec{0.3, -0.2, 0.5});
  const IndexedQuantities q = q_quantities(eval_jet(s, 0.7, 4));
  const int N = 4;
  CHECK(q.at({0, 1, 2, N}) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::abs(q.at({0, 1, 3, N})) <= 1e-12);
  CHECK(std::abs(q.at({0, 2, 3, N})) <= 1e-12);
  CHECK(q.at({0, 1, 2, 3}) == doctest::Approx(2.0 * 0.5).epsilon(1e-12));
  CHECK(std::abs(q.at({1, 2, 3, N})) <= 1e-12);
  CHECK(q.size() == 5);

  const IndexedQuantities planar = q_quantities(eval_jet(planar_spiral(), 0.0, 4));
  CHECK(planar.at({0, 1, 2, 3}) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(planar.size() == 1);

  for (const auto& [k, v] : q_quantities(straight_line(4, 3))) CHECK(v == 0.0);
  CHECK(q_quantities(straight_line(4, 3)).size() == 6 + 4 + 4 + 1);
}

TEST_CASE("Q scaling by (-Delta_4)^(-1/2)") {
  const LogSpiral s = make_log_spiral(2.0, Vec{1, 0, 0}, Vec{0, 1, 0}, Vec{0.3, -0.2, 0.5});
  const CurveJet jet = eval_jet(s, 0.2, 4);
  const IndexedQuantities a = q_quantities(jet), b = q_quantities(jet, true);
  for (const auto& [k, v] : a) CHECK(b.at(k) == doctest::Approx(v / 2.0).epsilon(1e-12));
  Sampler rng(28);
  CHECK_THROWS_AS(q_quantities(eval_jet(rng.circle(3), 0.0, 4), true), UndefinedInvariantError);
}

TEST_CASE("labels") {
  CHECK(q_label({0, 1, 2, 4}, 3) == "Q_0ijN_12");
  CHECK(q_label({0, 1, 2, 3}, 3) == "Q_0ijk_123");
  CHECK(q_label({1, 2, 3, 4}, 3) == "Q_ijkN_123");
  CHECK(q_label({1, 2, 3, 4}, 4) == "Q_ijkl_1234");
  CHECK(circle_label({0, 2, 3}, 2) == "Q_0iN_2");
  CHECK(circle_label({1, 2, 3}, 2) == "Q_ijN_12");
  CHECK(circle_label({0, 1, 2}, 2) == "Q_0ij_12");
  CHECK(circle_label({1, 2, 3}, 3) == "Q_ijk_123");
}

TEST_CASE("frozen pairing normalization reproduces a fit on one seeded jet") {
  Sampler rng(29);
  const CurveJet jet = rng.curve_jet(5, 4);
  const IndexedQuantities raw = parallel_section_pairing_oracle(jet);
  const IndexedQuantities q = q_quantities(jet);
  std::map<QFamily, double> fitted;
  for (const auto& [k, v] : q) {
    const QFamily f = q_family(k, 5);
    if (!fitted.count(f) && std::abs(v) > 1e-3) fitted[f] = raw.at(k) / v;
  }
  REQUIRE(fitted.size() == 4);
  for (const auto& [f, ratio] : fitted) {
    CHECK(std::abs(std::abs(ratio) - 1.0) <= 1e-12);
    CHECK(std::abs(ratio - pairing_normalization(f)) <= 1e-12);
  }
}

TEST_CASE("normalized pairing oracle equals the Q quantities") {
  Sampler rng(30);
  for (int trial = 0; trial < 50; ++trial) {
    const CurveJet jet = rng.curve_jet(3 + trial % 3, 4);
    CHECK(rel_map(normalized_pairing_oracle(jet), q_quantities(jet)) <= 1e-10);
  }
}

TEST_CASE("parallel section at the origin is the bare basis element") {
  for (const auto& I : increasing_tuples(0, 6, 4)) {
    const WedgeTractor w = parallel_section(Vec(4), I);
    CHECK((w - WedgeTractor::basis(6, I)).max_abs() == 0.0);
  }
  Sampler rng(31);
  CurveJet jet = rng.curve_jet(4, 4);
  jet.derivs[0] = Vec(4);
  const IndexedQuantities raw = parallel_section_pairing_oracle(jet);
  const WedgeTractor T4 = t4_wedge(jet);
  for (const auto& I : increasing_tuples(1, 5, 3)) {
    const std::vector<int> key = {I[0], I[1], I[2], 5};
    CHECK(raw.at(key) == doctest::Approx(wedge_pair(WedgeTractor::basis(6, key), T4)));
  }
}

TEST_CASE("three-dimensional quantities from cross and triple products") {
  Sampler rng(32);
  for (int trial = 0; trial < 30; ++trial) {
    const CurveJet jet = rng.curve_jet(3, 4);
    const Vec &X = jet.X(), &U = jet.U(), &A = jet.A(), &A1 = jet.A1();
    const double u2 = jet.u_sq(), u4 = u2 * u2, ua = dot(U, A);
    const double uaa1 = eps({0, 1, 2}, U, A, A1);
    const Vec cUA1 = cross(U, A1), cUA = cross(U, A);
    const IndexedQuantities raw = parallel_section_pairing_oracle(jet);
    // e_{0ijN} pairs with the cross product component k complementary to (i, j).
    const int pairs[3][3] = {{1, 2, 2}, {1, 3, 1}, {2, 3, 0}};
    for (const auto& p : pairs) {
      const int k = p[2];
      const double sign = k == 1 ? -1.0 : 1.0;
      const double want = sign * (u4 == 0 ? 0 : (X[k] * uaa1 / u4 - cUA1[k] / u2 + 3 * ua * cUA[k] / u4));
      CHECK(raw.at({0, p[0], p[1], 4}) == doctest::Approx(want).epsilon(1e-10));
    }
    const double q0123 = 3 * ua * eps({0, 1, 2}, X, U, A) / u4 - eps({0, 1, 2}, X, U, A1) / u2 +
                         0.5 * norm_sq(X) * uaa1 / u4;
    CHECK(raw.at({0, 1, 2, 3}) == doctest::Approx(q0123).epsilon(1e-10));
    CHECK(raw.at({1, 2, 3, 4}) == doctest::Approx(-uaa1 / u4).epsilon(1e-10));
  }
}

TEST_CASE("circle quantities: examples and oracle") {
  const IndexedQuantities line = q_circle_quantities(straight_line(3, 2));
  CHECK(line.at({0, 1, 4}) == 1.0);
  for (const auto& [k, v] : line)
    if (k != std::vector<int>{0, 1, 4}) CHECK(v == 0.0);

  for (double t : {-0.7, 0.0, 0.4, 1.3}) {
    const CurveJet unit(t, {Vec{std::cos(t), std::sin(t)}, Vec{-std::sin(t), std::cos(t)},
                            Vec{-std::cos(t), -std::sin(t)}});
    CHECK(q_circle_quantities(unit).at({1, 2, 3}) == doctest::Approx(1.0).epsilon(1e-14));
  }

  Sampler rng(33);
  for (int trial = 0; trial < 50; ++trial) {
    const CurveJet jet = rng.curve_jet(2 + trial % 4, 3);
    CHECK(rel_map(circle_pairing_oracle(jet), q_circle_quantities(jet)) <= 1e-10);
  }
  for (int trial = 0; trial < 5; ++trial) {
    const Circle c = rng.circle(3);
    const IndexedQuantities q0 = q_circle_quantities(eval_jet(c, -1.0, 3));
    for (int k = 0; k <= 20; ++k) {
      const IndexedQuantities q = q_circle_quantities(eval_jet(c, -1.0 + 0.1 * k, 3));
      for (const auto& [key, v] : q0) CHECK(std::abs(q.at(key) - v) <= 1e-9 * (1 + std::abs(v)));
    }
  }
}

TEST_CASE("kappa_1") {
  CHECK(std::abs(kappa1(eval_jet(planar_spiral(), 0.3, 6))) <= 1e-12);
  for (double c : {0.5, 2.0, 3.0}) {
    const LogSpiral s = make_log_spiral(c, Vec{0, 2, 0}, Vec{2, 0, 0}, Vec{1, 1, 1});
    for (double t = -1.0; t <= 1.0; t += 0.25)
      CHECK(kappa1(eval_jet(s, t, 6)) == doctest::Approx(-(c * c - 1) / (2 * c)).epsilon(1e-10));
  }
  Sampler rng(34);
  CHECK_THROWS_AS(kappa1(eval_jet(rng.circle(3), 0.0, 6)), UndefinedInvariantError);
  CHECK_THROWS_AS(kappa1(rng.curve_jet(3, 5)), JetOrderError);
}

TEST_CASE("middle slot identity") {
  Sampler rng(35);
  SUBCASE("spirals") {
    for (int trial = 0; trial < 10; ++trial) {
      const MiddleSlotResiduals m = middle_slot_residuals(eval_jet(rng.spiral(3), rng.uniform(-1, 1), 4));
      CHECK(m.identity_defect <= 1e-9 * (1 + m.scale));
      CHECK(max_abs(m.mercator_expansion) <= 1e-9);
      CHECK(max_abs(m.tractor_slot) <= 1e-9);
    }
  }
  SUBCASE("alpha_1' constrained random jets") {
    for (int trial = 0; trial < 100; ++trial) {
      const CurveJet jet = enforce_stationary_alpha1(rng.curve_jet(2 + trial % 4, 4));
      CHECK(std::abs(alpha1_rate_closed_form(jet)) <= 1e-12 * (1 + max_abs(jet.A2())));
      const MiddleSlotResiduals m = middle_slot_residuals(jet);
      CHECK(m.identity_defect <= 1e-9 * (1 + m.scale));
    }
  }
  SUBCASE("unconstrained jets violate it") {
    int violated = 0;
    for (int trial = 0; trial < 20; ++trial) {
      const MiddleSlotResiduals m = middle_slot_residuals(rng.curve_jet(3, 4));
      violated += m.identity_defect > 1e-6;
    }
    CHECK(violated >= 18);
  }
  SUBCASE("straight line") {
    const MiddleSlotResiduals m = middle_slot_residuals(straight_line(3, 4));
    CHECK(max_abs(m.mercator_expansion) == 0.0);
    CHECK(max_abs(m.tractor_slot) == 0.0);
  }
  SUBCASE("pipeline slot differs from the closed form by 2 alpha_1' U / u") {
    for (int trial = 0; trial < 20; ++trial) {
      const CurveJet jet = rng.curve_jet(3, 4);
      const Vec want = middle_slot_residuals(jet).tractor_slot +
                       (2.0 * alpha1_rate_closed_form(jet) / std::sqrt(jet.u_sq())) * jet.U();
      CHECK(rel(tractor_middle_slot(jet), want) <= 1e-10);
    }
  }
}

TEST_CASE("parallel transport of T_3 and T_4") {
  Sampler rng(36);
  SUBCASE("circle: T_3 defect decays like h^2") {
    const Circle c = rng.circle(3);
    const CurveSampler f = [&](double t) { return eval_jet(c, t, 4); };
    const double d1 = parallel_defect(f, 0.2, 0.1, ParallelTarget::T3);
    const double d2 = parallel_defect(f, 0.2, 0.05, ParallelTarget::T3);
    const double d3 = parallel_defect(f, 0.2, 0.025, ParallelTarget::T3);
    CHECK(std::log2(d1 / d2) == doctest::Approx(2.0).epsilon(0.1));
    CHECK(std::log2(d2 / d3) == doctest::Approx(2.0).epsilon(0.1));
  }
  SUBCASE("spiral: normalized T_4 is parallel") {
    for (int trial = 0; trial < 5; ++trial) {
      const LogSpiral s = rng.spiral(3);
      const CurveSampler f = [&](double t) { return eval_jet(s, t, 4); };
      for (double h : {0.1, 0.05}) CHECK(parallel_defect(f, 0.1, h, ParallelTarget::T4Normalized) <= 1e-10);
    }
  }
  SUBCASE("random polynomial path: T_3 defect stays away from zero") {
    const CurveSampler f = polynomial_path(rng.curve_jet(3, 4), 4);
    const double d1 = parallel_defect(f, 0.0, 1e-2, ParallelTarget::T3);
    const double d2 = parallel_defect(f, 0.0, 1e-3, ParallelTarget::T3);
    CHECK(d2 > 1e-3);
    CHECK(d2 == doctest::Approx(d1).epsilon(0.05));
  }
}
