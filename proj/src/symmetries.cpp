#include "confsphere/symmetries.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "confsphere/errors.hpp"
#include "confsphere/multilinear.hpp"

namespace confsphere {

template <class... F>
struct overloaded : F... {
  using F::operator()...;
};
template <class... F>
overloaded(F...) -> overloaded<F...>;

Rotation::Rotation(const Matrix& R) : R_(R) {
  if (R.rows() != R.cols() || R.rows() < 2) throw DimensionError("rotation needs a square matrix");
  const int n = R.rows();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (std::abs(R(i, j) + R(j, i)) > 1e-12)
        throw DomainError("rotation matrix is not antisymmetric");
      R_(i, j) = 0.5 * (R(i, j) - R(j, i));
    }
}

Rotation Rotation::basis(int n, int i, int j) {
  if (i < 0 || j < 0 || i >= n || j >= n || i == j) throw DimensionError("rotation basis index");
  Matrix R(n, n);
  R(i, j) = 1.0;
  R(j, i) = -1.0;
  return Rotation(R);
}

const char* killing_name(const KillingField& V) {
  static const char* names[] = {"T", "R", "D", "S"};
  return names[V.index()];
}

JetVec ckv_eval(const KillingField& V, const JetVec& x) {
  const int n = x.dim();
  return std::visit(
      overloaded{
          [&](const Translation& f) {
            if (f.T.dim() != n) throw DimensionError("translation dimension mismatch");
            return JetVec::constant(f.T, x.order());
          },
          [&](const Rotation& f) {
            if (f.R().rows() != n) throw DimensionError("rotation dimension mismatch");
            JetVec v(n, x.order());
            for (int i = 0; i < n; ++i)
              for (int j = 0; j < n; ++j) v[i] += f.R()(j, i) * x[j];
            return v;
          },
          [&](const Dilatation& f) { return f.a * x; },
          [&](const SpecialConformal& f) {
            if (f.S.dim() != n) throw DimensionError("special conformal dimension mismatch");
            const Jet xx = dot(x, x);
            const Jet sx = dot(x, f.S);
            JetVec v(n, x.order());
            for (int i = 0; i < n; ++i) v[i] = f.S[i] * xx - 2.0 * sx * x[i];
            return v;
          },
      },
      V);
}

Vec ckv_eval(const KillingField& V, const Vec& x) {
  return ckv_eval(V, JetVec::constant(x, 0)).value();
}

double conformal_factor(const KillingField& V, const Vec& x) {
  const int n = x.dim();
  double div = 0.0;
  for (int i = 0; i < n; ++i) {
    JetVec xi = JetVec::constant(x, 1);
    xi[i][1] = 1.0;
    div += ckv_eval(V, xi)[i][1];
  }
  return div / n;
}

double f_generic(const KillingField& V, const CurveJet& jet) {
  jet.require(3, "f_generic");
  const JetVec X = jet.position_jet();
  const int L = X.order();
  const JetVec U = shift(X);
  const Jet u2 = dot(U, U);
  if (!(u2.value() > 0.0)) throw DomainError("velocity vanishes (u = 0)");
  const JetVec W = U / u2;
  const JetVec Vj = ckv_eval(V, X);
  const JetVec Vp = shift(Vj);
  const double t1 = shift(dot(W, Vp)).value();
  const double t2 = dot(shift(W), Vp.truncated(L - 2)).value();
  return t1 + t2 - dot(mercator_C(jet), Vj.value());
}

Vec special_conformal_vector(const CurveJet& jet) {
  const Vec& X = jet.X();
  const Vec& U = jet.U();
  const Vec& A = jet.A();
  const Vec C = mercator_C(jet);
  const double u2 = norm_sq(U);
  return (dot(U, X) / u2) * A - (1.0 + dot(A, X) / u2) * U + (dot(U, A) / u2 + dot(C, X)) * X -
         (0.5 * norm_sq(X)) * C;
}

double f_closed(const KillingField& V, const CurveJet& jet) {
  jet.require(3, "f_closed");
  const Vec& X = jet.X();
  const Vec& U = jet.U();
  const Vec& A = jet.A();
  const Vec C = mercator_C(jet);
  const double u2 = norm_sq(U);
  return std::visit(overloaded{
                        [&](const Translation& f) { return -dot(C, f.T); },
                        [&](const Rotation& f) {
                          const Matrix& R = f.R();
                          double s = 0.0;
                          for (int i = 0; i < R.rows(); ++i)
                            for (int j = 0; j < R.cols(); ++j)
                              s += R(i, j) * (U[i] * A[j] / u2 + C[i] * X[j]);
                          return s;
                        },
                        [&](const Dilatation& f) { return -f.a * (dot(U, A) / u2 + dot(C, X)); },
                        [&](const SpecialConformal& f) {
                          return 2.0 * dot(f.S, special_conformal_vector(jet));
                        },
                    },
                    V);
}

double f_circle_form(const KillingField& V, const CurveJet& jet) {
  jet.require(3, "f_circle_form");
  const JetVec X = jet.position_jet();
  const JetVec U = shift(X);
  const Jet u2 = dot(U, U);
  if (!(u2.value() > 0.0)) throw DomainError("velocity vanishes (u = 0)");
  const JetVec W = U / u2;
  return dot(W, ckv_eval(V, X).truncated(W.order())).derivative(2);
}

EQuantities e_quantities(const PhasePoint& p) {
  const int n = p.dim();
  EQuantities e{p.P, Matrix(n, n), 0.0, Vec()};
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double v = eps({i, j}, p.X, p.P) + eps({i, j}, p.U, p.R);
      e.E_R(i, j) = v;
      e.E_R(j, i) = -v;
    }
  e.E_D = dot(p.X, p.P) + dot(p.U, p.R);
  e.E_S = norm_sq(p.X) * p.P + (2.0 * dot(p.X, p.U)) * p.R - (2.0 * e.E_D) * p.X -
          (2.0 * (1.0 + dot(p.X, p.R))) * p.U;
  return e;
}

double f_from_e(const KillingField& V, const EQuantities& e) {
  return std::visit(overloaded{
                        [&](const Translation& f) { return dot(f.T, e.E_T); },
                        [&](const Rotation& f) {
                          double s = 0.0;
                          const int n = f.R().rows();
                          for (int i = 0; i < n; ++i)
                            for (int j = i + 1; j < n; ++j) s += f.R()(i, j) * e.E_R(i, j);
                          return s;
                        },
                        [&](const Dilatation& f) { return f.a * e.E_D; },
                        [&](const SpecialConformal& f) { return dot(f.S, e.E_S); },
                    },
                    V);
}

IndexedQuantities q_phase(const PhasePoint& p) {
  const Vec &X = p.X, &U = p.U, &P = p.P, &R = p.R;
  const int n = p.dim();
  const int N = n + 1;
  const double UR = dot(U, R);
  const double XX = norm_sq(X);
  IndexedQuantities q;
  for (const auto& ij : increasing_tuples(0, n, 2)) {
    const int i = ij[0], j = ij[1];
    double v = -UR * eps({i, j}, U, R) + eps({i, j}, U, P);
    for (int k = 0; k < n; ++k) v -= eps({i, j, k}, U, R, P) * X[k];
    q[{0, i + 1, j + 1, N}] = v;
  }
  for (const auto& ijk : increasing_tuples(0, n, 3)) {
    const int i = ijk[0], j = ijk[1], k = ijk[2];
    const double urp = eps({i, j, k}, U, R, P);
    double v = UR * eps({i, j, k}, X, U, R) + eps({i, j, k}, U, X, P) + 0.5 * XX * urp;
    for (int l = 0; l < n; ++l) v += eps({i, j, k, l}, X, U, R, P) * X[l];
    q[{0, i + 1, j + 1, k + 1}] = -v;
    q[{i + 1, j + 1, k + 1, N}] = -urp;
  }
  for (const auto& I : increasing_tuples(0, n, 4))
    q[{I[0] + 1, I[1] + 1, I[2] + 1, I[3] + 1}] =
        -epsilon(I, std::vector<const Vec*>{&X, &U, &R, &P});
  return q;
}

namespace {

void accumulate(IdentityResidual& r, double lhs, double rhs) {
  r.vacuous = false;
  r.residual = std::max(r.residual, std::abs(lhs - rhs));
  r.scale = std::max({r.scale, std::abs(lhs), std::abs(rhs)});
}

}  // namespace

RelationReport relation_check(const PhasePoint& p) {
  const int n = p.dim();
  const int N = n + 1;
  const IndexedQuantities q = q_phase(p);
  const EQuantities e = e_quantities(p);
  RelationReport rep;

  for (const auto& ij : increasing_tuples(0, n, 2)) {
    const int i = ij[0], j = ij[1];
    const double rhs = 0.5 * eps({i, j}, e.E_T, e.E_S) - e.E_D * e.E_R(i, j);
    accumulate(rep.q0ijN, q.at({0, i + 1, j + 1, N}), rhs);
  }
  if (n >= 3) {
    const DenseTensor ER = DenseTensor::from(e.E_R);
    const DenseTensor RS = antisymmetrize(outer(ER, DenseTensor::from(e.E_S)));
    const DenseTensor RT = antisymmetrize(outer(ER, DenseTensor::from(e.E_T)));
    for (const auto& I : increasing_tuples(0, n, 3)) {
      const std::vector<int> key{I[0] + 1, I[1] + 1, I[2] + 1};
      accumulate(rep.q0ijk, q.at({0, key[0], key[1], key[2]}), 1.5 * RS.at(I));
      accumulate(rep.qijkN, q.at({key[0], key[1], key[2], N}), -3.0 * RT.at(I));
    }
  }
  if (n >= 4) {
    const DenseTensor RST = antisymmetrize(
        outer(outer(DenseTensor::from(e.E_R), DenseTensor::from(e.E_S)), DenseTensor::from(e.E_T)));
    for (const auto& I : increasing_tuples(0, n, 4))
      accumulate(rep.qijkl, e.E_D * q.at({I[0] + 1, I[1] + 1, I[2] + 1, I[3] + 1}), 6.0 * RST.at(I));
  }
  return rep;
}

IndexedQuantities q4_quotient(const PhasePoint& p) {
  const int n = p.dim();
  const EQuantities e = e_quantities(p);
  if (!(std::abs(e.E_D) > kQuotientThreshold))
    throw DomainError("quotient form needs |E_D| > 1e-8");
  IndexedQuantities q;
  if (n < 4) return q;
  const DenseTensor RST = antisymmetrize(
      outer(outer(DenseTensor::from(e.E_R), DenseTensor::from(e.E_S)), DenseTensor::from(e.E_T)));
  for (const auto& I : increasing_tuples(0, n, 4))
    q[{I[0] + 1, I[1] + 1, I[2] + 1, I[3] + 1}] = 6.0 * RST.at(I) / e.E_D;
  return q;
}

Vec pack_rotation(const Matrix& E_R) {
  if (E_R.rows() != 3 || E_R.cols() != 3) throw DimensionError("rotation packing needs n = 3");
  return Vec{E_R(1, 2), -E_R(0, 2), E_R(0, 1)};
}

ThreeDReduction three_d_reduction(const PhasePoint& p) {
  if (p.dim() != 3) throw DimensionError("three-dimensional reduction needs n = 3");
  const EQuantities e = e_quantities(p);
  const Vec ER = pack_rotation(e.E_R);
  return {0.5 * cross(e.E_T, e.E_S) - e.E_D * ER, 0.5 * dot(ER, e.E_S), -dot(e.E_T, ER),
          0.5 * (norm_sq(ER) - dot(e.E_T, e.E_S) - e.E_D * e.E_D)};
}

std::vector<NamedPhaseFunction> e_functions(int n) {
  std::vector<NamedPhaseFunction> f;
  for (int i = 0; i < n; ++i)
    f.emplace_back("E_T_" + std::to_string(i + 1),
                   [i](const PhasePoint& p) { return p.P[i]; });
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      f.emplace_back("E_R_" + std::to_string(i + 1) + std::to_string(j + 1),
                     [i, j](const PhasePoint& p) {
                       return eps({i, j}, p.X, p.P) + eps({i, j}, p.U, p.R);
                     });
  f.emplace_back("E_D", [](const PhasePoint& p) { return dot(p.X, p.P) + dot(p.U, p.R); });
  for (int i = 0; i < n; ++i)
    f.emplace_back("E_S_" + std::to_string(i + 1),
                   [i](const PhasePoint& p) { return e_quantities(p).E_S[i]; });
  return f;
}

std::vector<NamedPhaseFunction> reduced_functions() {
  std::vector<NamedPhaseFunction> f = e_functions(3);
  for (int i = 0; i < 3; ++i)
    f.emplace_back("Q1_" + std::to_string(i + 1),
                   [i](const PhasePoint& p) { return three_d_reduction(p).Q1[i]; });
  f.emplace_back("Q2", [](const PhasePoint& p) { return three_d_reduction(p).Q2; });
  f.emplace_back("Q3", [](const PhasePoint& p) { return three_d_reduction(p).Q3; });
  return f;
}

BracketTable involutivity_check(const std::vector<PhasePoint>& samples) {
  std::vector<NamedPhaseFunction> f;
  for (int i = 0; i < 3; ++i)
    f.emplace_back("E_T_" + std::to_string(i + 1), [i](const PhasePoint& p) { return p.P[i]; });
  f.emplace_back("Q3", [](const PhasePoint& p) { return three_d_reduction(p).Q3; });
  f.emplace_back("H", [](const PhasePoint& p) { return hamiltonian(p); });

  BracketTable table{{}, Matrix(5, 5)};
  for (const auto& [name, fn] : f) table.names.push_back(name);
  for (const PhasePoint& p : samples) {
    if (p.dim() != 3) throw DimensionError("involutivity check needs n = 3");
    for (int a = 0; a < 5; ++a)
      for (int b = a + 1; b < 5; ++b) {
        const double v = std::abs(poisson_bracket_fd(f[a].second, f[b].second, p));
        table.max_abs(a, b) = std::max(table.max_abs(a, b), v);
        table.max_abs(b, a) = table.max_abs(a, b);
      }
  }
  return table;
}

}  // namespace confsphere
