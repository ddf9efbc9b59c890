#pragma once

#include <vector>

#include "confsphere/vec.hpp"

namespace confsphere {

inline constexpr int kDefaultJetOrder = 6;

/// Truncated Taylor expansion of a scalar function of t about a fixed point.
/// Coefficient k holds f^(k)/k!, so products are plain Cauchy products.
/// Operands must share one order; there is no silent promotion.
class Jet {
 public:
  explicit Jet(int order = 0);
  explicit Jet(std::vector<double> coeffs);

  static Jet constant(double value, int order);
  /// The identity function t expanded about t0.
  static Jet variable(double t0, int order);

  int order() const noexcept { return static_cast<int>(c_.size()) - 1; }
  double operator[](int k) const { return c_[k]; }
  double& operator[](int k) { return c_[k]; }
  const std::vector<double>& coeffs() const noexcept { return c_; }
  double value() const noexcept { return c_[0]; }
  /// k-th derivative at the expansion point, k! * coeffs[k].
  double derivative(int k) const;

  Jet truncated(int order) const;

  Jet& operator+=(const Jet& b);
  Jet& operator-=(const Jet& b);
  Jet& operator*=(const Jet& b);
  Jet& operator/=(const Jet& b);
  Jet& operator+=(double s);
  Jet& operator-=(double s);
  Jet& operator*=(double s);
  Jet& operator/=(double s);

 private:
  std::vector<double> c_;
};

Jet operator+(Jet a, const Jet& b);
Jet operator-(Jet a, const Jet& b);
Jet operator*(const Jet& a, const Jet& b);
Jet operator/(const Jet& a, const Jet& b);
Jet operator-(Jet a);
Jet operator+(Jet a, double s);
Jet operator+(double s, Jet a);
Jet operator-(Jet a, double s);
Jet operator-(double s, Jet a);
Jet operator*(Jet a, double s);
Jet operator*(double s, Jet a);
Jet operator/(Jet a, double s);
Jet operator/(double s, const Jet& a);

Jet recip(const Jet& a);
Jet sqrt(const Jet& a);
Jet exp(const Jet& a);
Jet sin(const Jet& a);
Jet cos(const Jet& a);
/// Integer power; negative exponents go through recip.
Jet powi(const Jet& a, int k);
/// d/dt, lowering the order by one.  Throws JetOrderError at order 0.
Jet shift(const Jet& a);

/// R^n-valued jet: n scalar jets of one common order.
class JetVec {
 public:
  JetVec() = default;
  JetVec(int dim, int order);
  explicit JetVec(std::vector<Jet> comps);

  static JetVec constant(const Vec& v, int order);
  /// Jet with the given derivatives d[0] = value, d[1] = first derivative, ...
  static JetVec from_derivatives(const std::vector<Vec>& d);

  int dim() const noexcept { return static_cast<int>(c_.size()); }
  int order() const noexcept { return c_.empty() ? -1 : c_.front().order(); }
  const Jet& operator[](int i) const { return c_[i]; }
  Jet& operator[](int i) { return c_[i]; }
  auto begin() const noexcept { return c_.begin(); }
  auto end() const noexcept { return c_.end(); }

  Vec value() const;
  Vec derivative(int k) const;
  JetVec truncated(int order) const;

  JetVec& operator+=(const JetVec& b);
  JetVec& operator-=(const JetVec& b);

 private:
  std::vector<Jet> c_;
};

JetVec operator+(JetVec a, const JetVec& b);
JetVec operator-(JetVec a, const JetVec& b);
JetVec operator*(const Jet& s, const JetVec& v);
JetVec operator*(double s, JetVec v);
JetVec operator/(const JetVec& v, const Jet& s);
Jet dot(const JetVec& a, const JetVec& b);
Jet dot(const JetVec& a, const Vec& b);
JetVec shift(const JetVec& v);

}  // namespace confsphere
