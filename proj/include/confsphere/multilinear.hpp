#pragma once

#include <initializer_list>
#include <map>
#include <span>
#include <vector>

#include "confsphere/jet.hpp"
#include "confsphere/vec.hpp"

namespace confsphere {

/// eps^{idx}(cols...): determinant of the m x m matrix whose row r holds
/// component idx[r] of every column vector.  Indices are 0-based.
double epsilon(std::span<const int> idx, std::span<const Vec* const> cols);

template <class... V>
double eps(std::initializer_list<int> idx, const V&... cols) {
  const Vec* c[] = {&cols...};
  return epsilon(std::span<const int>(idx.begin(), idx.size()),
                 std::span<const Vec* const>(c, sizeof...(V)));
}

/// Parity of the permutation sorting `idx` ascending (+1/-1), or 0 when an
/// index repeats.  `idx` is sorted in place.
int sort_with_sign(std::vector<int>& idx);

/// All strictly increasing m-tuples drawn from [lo, hi).
std::vector<std::vector<int>> increasing_tuples(int lo, int hi, int m);

/// Dense array of rank m over R^n, indexed 0-based.
class DenseTensor {
 public:
  DenseTensor(int dim, int rank);
  static DenseTensor from(const Vec& v);
  static DenseTensor from(const Matrix& m);

  int dim() const noexcept { return dim_; }
  int rank() const noexcept { return rank_; }
  double& at(std::span<const int> idx);
  double at(std::span<const int> idx) const;
  double operator()(std::initializer_list<int> idx) const {
    return at(std::span<const int>(idx.begin(), idx.size()));
  }
  std::span<const double> data() const noexcept { return a_; }

 private:
  std::size_t offset(std::span<const int> idx) const;
  int dim_;
  int rank_;
  std::vector<double> a_;
};

/// Tensor product, slots of a first.
DenseTensor outer(const DenseTensor& a, const DenseTensor& b);

/// Averages over signed permutations of the listed slots (1/m! included, so
/// this is a projection).  Throws DomainError on a malformed slot list.
DenseTensor antisymmetrize(const DenseTensor& t, std::vector<int> slots);
DenseTensor antisymmetrize(const DenseTensor& t);

/// Tractors live in R^{n+2} ordered e_0, e_1..e_n, e_N (N = n+1).
double tractor_metric(const Vec& a, const Vec& b);
Jet tractor_metric(const JetVec& a, const JetVec& b);

/// The algebraic action of v in R^n on tractors:
/// e_0 -> v^i e_i, e_i -> -v^i e_N, e_N -> 0.  Column a is the image of e_a.
Matrix algebraic_action(const Vec& v);

/// Element of the k-th exterior power of R^{n+2}, stored sparsely over
/// strictly increasing index tuples in {0, ..., N}.
class WedgeTractor {
 public:
  WedgeTractor(int ambient, int rank);
  /// e_{idx[0]} ^ ... ^ e_{idx[k-1]}; idx need not be sorted.
  static WedgeTractor basis(int ambient, std::vector<int> idx);

  int ambient() const noexcept { return ambient_; }
  int rank() const noexcept { return rank_; }
  double coeff(const std::vector<int>& idx) const;
  /// Adds value * e_idx, reordering idx with the matching sign.
  void add(std::vector<int> idx, double value);
  const std::map<std::vector<int>, double>& terms() const noexcept { return c_; }
  double max_abs() const;

  WedgeTractor& operator+=(const WedgeTractor& b);
  WedgeTractor& operator-=(const WedgeTractor& b);
  WedgeTractor& operator*=(double s);

 private:
  int ambient_;
  int rank_;
  std::map<std::vector<int>, double> c_;
};

WedgeTractor operator+(WedgeTractor a, const WedgeTractor& b);
WedgeTractor operator-(WedgeTractor a, const WedgeTractor& b);
WedgeTractor operator*(double s, WedgeTractor a);

/// v_1 ^ ... ^ v_k with coefficient on I equal to the determinant of rows I.
WedgeTractor wedge(const std::vector<Vec>& tractors);

/// <v_1^...^v_k, w_1^...^w_k> = det(<v_a, w_b>) under the tractor metric,
/// extended bilinearly.
double wedge_pair(const WedgeTractor& a, const WedgeTractor& b);

/// Extension of a linear map on tractors to k-vectors as a derivation.
WedgeTractor act(const Matrix& rho, const WedgeTractor& w);

}  // namespace confsphere
