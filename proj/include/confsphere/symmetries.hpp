#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "confsphere/curve.hpp"
#include "confsphere/jet.hpp"
#include "confsphere/mercator.hpp"
#include "confsphere/tractor.hpp"
#include "confsphere/vec.hpp"

namespace confsphere {

struct Translation {
  Vec T;
};

/// Infinitesimal rotation x -> R^T x with R antisymmetric.
class Rotation {
 public:
  /// Rejects matrices with |R + R^T| > 1e-12 and removes any smaller
  /// symmetric part.
  explicit Rotation(const Matrix& R);
  /// R_ij = 1 = -R_ji (0-based i < j).
  static Rotation basis(int n, int i, int j);
  const Matrix& R() const noexcept { return R_; }

 private:
  Matrix R_;
};

struct Dilatation {
  double a;
};

struct SpecialConformal {
  Vec S;
};

using KillingField = std::variant<Translation, Rotation, Dilatation, SpecialConformal>;

const char* killing_name(const KillingField& V);

Vec ckv_eval(const KillingField& V, const Vec& x);
JetVec ckv_eval(const KillingField& V, const JetVec& x);
/// (1/n) div V at x, computed from first-order jets.
double conformal_factor(const KillingField& V, const Vec& x);

/// Noether quantity d/dt<W,V'> + <W',V'> - <C,V>, W = U/u^2, with every
/// derivative taken by jet composition.
double f_generic(const KillingField& V, const CurveJet& jet);
/// The closed forms of the Noether quantity for each generator type.
double f_closed(const KillingField& V, const CurveJet& jet);
/// d^2/dt^2 <W,V>; equals the Noether quantity on conformal circles.
double f_circle_form(const KillingField& V, const CurveJet& jet);
/// Vector Y with F_S = 2<S,Y>.
Vec special_conformal_vector(const CurveJet& jet);

struct EQuantities {
  Vec E_T;
  Matrix E_R;  // antisymmetric n x n
  double E_D;
  Vec E_S;
};
EQuantities e_quantities(const PhasePoint& p);
/// Pairing of the phase-space quantities with the generator's parameters.
double f_from_e(const KillingField& V, const EQuantities& e);

/// The T_4 quantities rewritten in phase variables.
IndexedQuantities q_phase(const PhasePoint& p);

struct IdentityResidual {
  double residual = 0.0;
  double scale = 0.0;
  bool vacuous = true;

  bool within(double tol) const { return residual <= tol * (1.0 + scale); }
};

/// Residuals of the four relations expressing the T_4 quantities through
/// E_T, E_R, E_D, E_S.  The rank-4 relation is checked multiplied by E_D.
struct RelationReport {
  IdentityResidual q0ijN, q0ijk, qijkN, qijkl;
};
RelationReport relation_check(const PhasePoint& p);

inline constexpr double kQuotientThreshold = 1e-8;
/// Q^{ijkl} = 6 E_R^[ij E_S^k E_T^l] / E_D; DomainError when |E_D| <= 1e-8.
IndexedQuantities q4_quotient(const PhasePoint& p);

/// (E_R^23, -E_R^13, E_R^12)
Vec pack_rotation(const Matrix& E_R);

struct ThreeDReduction {
  Vec Q1;
  double Q2;
  double Q3;
  double H_from_E;
};
ThreeDReduction three_d_reduction(const PhasePoint& p);

using NamedPhaseFunction = std::pair<std::string, PhaseFunction>;
/// E_T_i, E_R_ij, E_D, E_S_i as phase functions.
std::vector<NamedPhaseFunction> e_functions(int n);
/// E components, Q1 components, Q2, Q3 (n = 3).
std::vector<NamedPhaseFunction> reduced_functions();

struct BracketTable {
  std::vector<std::string> names;
  Matrix max_abs;
};
/// max over samples of |{f_a, f_b}| for f in {E_T^1, E_T^2, E_T^3, Q_3, H}.
BracketTable involutivity_check(const std::vector<PhasePoint>& samples);

}  // namespace confsphere
