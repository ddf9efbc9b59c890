#pragma once

#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "confsphere/curve.hpp"
#include "confsphere/jet.hpp"
#include "confsphere/multilinear.hpp"

namespace confsphere {

/// Quantities keyed by tractor index tuples: 0 is e_0, 1..n are e_i, n+1 is e_N.
using IndexedQuantities = std::map<std::vector<int>, double>;

/// Tractor sequence T, U, A, A', A'' (first `count`) as jets in t.  The k-th
/// tractor has order position.order() - k; count tractors need order >= count.
std::vector<JetVec> canonical_tractor_jets(const JetVec& position, int count);
std::vector<Vec> canonical_tractors(const CurveJet& jet, int count);

struct GramInvariants {
  Matrix gram;
  double alpha1 = 0.0;
  double alpha2 = std::numeric_limits<double>::quiet_NaN();
  double delta3 = 0.0;
  double delta4 = std::numeric_limits<double>::quiet_NaN();
  double delta5 = std::numeric_limits<double>::quiet_NaN();
  std::optional<double> alpha1_rate;
  std::optional<double> delta4_rate;
  std::optional<double> delta4_rate2;
};

/// Gram matrix of the first max_ell canonical tractors and its invariants.
/// Derivatives of alpha_1 and Delta_4 are filled in whenever the jet carries
/// enough levels (alpha_1' needs 4, Delta_4' 5, Delta_4'' 6).
GramInvariants gram_invariants(const CurveJet& jet, int max_ell = 5);

/// Band used to call a curve a conformal circle: |Delta_4| <= band.
double circle_band(double alpha1);
bool is_conformal_circle(const GramInvariants& g);

struct Alpha1Delta4 {
  double alpha1;
  double delta4;
};
/// Polynomial expressions of alpha_1 and Delta_4 in U, A, A'.
Alpha1Delta4 closed_form_alpha1_delta4(const CurveJet& jet);
/// alpha_1' as a polynomial in U, A, A', A''.
double alpha1_rate_closed_form(const CurveJet& jet);
/// Moves A'' along U so that alpha_1' vanishes.
CurveJet enforce_stationary_alpha1(CurveJet jet);

enum class QFamily { ZeroIJN, ZeroIJK, IJKN, IJKL };
QFamily q_family(const std::vector<int>& key, int n);
/// "Q_0ijN_12", "Q_0ijk_123", "Q_ijkN_123", "Q_ijkl_1234".
std::string q_label(const std::vector<int>& key, int n);
/// "Q_0iN_1", "Q_0ij_12", "Q_ijN_12", "Q_ijk_123".
std::string circle_label(const std::vector<int>& key, int n);

/// Frozen per-family constant mapping raw section pairings to q_quantities.
double pairing_normalization(QFamily f);

/// First integrals of the curve derived from T_4 (families of rank 3 and 4
/// appear only for n >= 3 and n >= 4).  With scale_by_delta4 each value is
/// multiplied by (-Delta_4)^(-1/2).
IndexedQuantities q_quantities(const CurveJet& jet, bool scale_by_delta4 = false);

/// w - rho(X) w + rho(X)^2 w / 2 for the basis element e_idx: the parallel
/// extension of the constant k-vector through the point X.
WedgeTractor parallel_section(const Vec& X, const std::vector<int>& idx);

/// Raw pairings <parallel_section(X, I), T_4> over every 4-index I.
IndexedQuantities parallel_section_pairing_oracle(const CurveJet& jet);
/// The same with pairing_normalization applied.
IndexedQuantities normalized_pairing_oracle(const CurveJet& jet);

WedgeTractor t4_wedge(const CurveJet& jet);
WedgeTractor t4_closed_form(const CurveJet& jet);
WedgeTractor t3_wedge(const CurveJet& jet);
WedgeTractor t3_closed_form(const CurveJet& jet);

/// First integrals of conformal circles derived from T_3.
IndexedQuantities q_circle_quantities(const CurveJet& jet);
IndexedQuantities circle_pairing_oracle(const CurveJet& jet);

/// Relative invariant from Delta_4, its first two derivatives and alpha_1.
/// Needs X through X^(6); throws UndefinedInvariantError unless Delta_4 < -band.
double kappa1(const CurveJet& jet);

struct MiddleSlotResiduals {
  Vec tractor_slot;
  Vec mercator_expansion;
  double identity_defect;
  /// max-norm of the operands mercator_expansion and tractor_slot / u
  double scale;
};
/// Middle slot of the fourth-derivative tractor equation versus the expanded
/// Mercator operator.  The identity holds when alpha_1' = 0.
MiddleSlotResiduals middle_slot_residuals(const CurveJet& jet);
/// -(A'' + alpha_1 A) restricted to the e_i slots, from the tractor pipeline.
Vec tractor_middle_slot(const CurveJet& jet);

enum class ParallelTarget { T3, T4, T4Normalized };
using CurveSampler = std::function<CurveJet(double)>;
/// max-norm of the central-difference tractor covariant derivative of the
/// chosen wedge at t.
double parallel_defect(const CurveSampler& sample, double t, double h, ParallelTarget target);

}  // namespace confsphere
