#include "confsphere/jet.hpp"

#include <cmath>
#include <string>

#include "confsphere/errors.hpp"

namespace confsphere {

namespace {

void same_order(const Jet& a, const Jet& b, const char* op) {
  if (a.order() != b.order())
    throw JetOrderError(std::string(op) + ": jet orders differ (" + std::to_string(a.order()) +
                        " vs " + std::to_string(b.order()) + ")");
}

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

Jet::Jet(int order) {
  if (order < 0) throw JetOrderError("negative jet order");
  c_.assign(static_cast<std::size_t>(order) + 1, 0.0);
}

Jet::Jet(std::vector<double> coeffs) : c_(std::move(coeffs)) {
  if (c_.empty()) throw JetOrderError("jet needs at least one coefficient");
}

Jet Jet::constant(double value, int order) {
  Jet j(order);
  j.c_[0] = value;
  return j;
}

Jet Jet::variable(double t0, int order) {
  Jet j(order);
  j.c_[0] = t0;
  if (order >= 1) j.c_[1] = 1.0;
  return j;
}

double Jet::derivative(int k) const {
  if (k < 0 || k > order())
    throw JetOrderError("derivative " + std::to_string(k) + " exceeds jet order " +
                        std::to_string(order()));
  return factorial(k) * c_[k];
}

Jet Jet::truncated(int o) const {
  if (o > order()) throw JetOrderError("cannot truncate a jet to a higher order");
  return Jet(std::vector<double>(c_.begin(), c_.begin() + o + 1));
}

Jet& Jet::operator+=(const Jet& b) {
  same_order(*this, b, "+");
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += b.c_[k];
  return *this;
}

Jet& Jet::operator-=(const Jet& b) {
  same_order(*this, b, "-");
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= b.c_[k];
  return *this;
}

Jet& Jet::operator*=(const Jet& b) { return *this = *this * b; }
Jet& Jet::operator/=(const Jet& b) { return *this = *this / b; }

Jet& Jet::operator+=(double s) {
  c_[0] += s;
  return *this;
}

Jet& Jet::operator-=(double s) {
  c_[0] -= s;
  return *this;
}

Jet& Jet::operator*=(double s) {
  for (double& x : c_) x *= s;
  return *this;
}

Jet& Jet::operator/=(double s) {
  for (double& x : c_) x /= s;
  return *this;
}

Jet operator+(Jet a, const Jet& b) { return a += b; }
Jet operator-(Jet a, const Jet& b) { return a -= b; }

Jet operator*(const Jet& a, const Jet& b) {
  same_order(a, b, "*");
  const int o = a.order();
  Jet r(o);
  for (int k = 0; k <= o; ++k) {
    double s = 0.0;
    for (int i = 0; i <= k; ++i) s += a[i] * b[k - i];
    r[k] = s;
  }
  return r;
}

Jet operator/(const Jet& a, const Jet& b) {
  same_order(a, b, "/");
  if (b[0] == 0.0) throw SingularJetError("division by a jet with zero constant term");
  const int o = a.order();
  Jet q(o);
  for (int k = 0; k <= o; ++k) {
    double s = a[k];
    for (int i = 1; i <= k; ++i) s -= b[i] * q[k - i];
    q[k] = s / b[0];
  }
  return q;
}

Jet operator-(Jet a) { return a *= -1.0; }
Jet operator+(Jet a, double s) { return a += s; }
Jet operator+(double s, Jet a) { return a += s; }
Jet operator-(Jet a, double s) { return a -= s; }
Jet operator-(double s, Jet a) { return (a *= -1.0) += s; }
Jet operator*(Jet a, double s) { return a *= s; }
Jet operator*(double s, Jet a) { return a *= s; }
Jet operator/(Jet a, double s) { return a /= s; }
Jet operator/(double s, const Jet& a) { return recip(a) *= s; }

Jet recip(const Jet& a) { return Jet::constant(1.0, a.order()) / a; }

Jet sqrt(const Jet& a) {
  if (!(a[0] > 0.0)) throw SingularJetError("sqrt of a jet with non-positive constant term");
  const int o = a.order();
  Jet r(o);
  r[0] = std::sqrt(a[0]);
  for (int k = 1; k <= o; ++k) {
    double s = a[k];
    for (int i = 1; i < k; ++i) s -= r[i] * r[k - i];
    r[k] = s / (2.0 * r[0]);
  }
  return r;
}

Jet exp(const Jet& a) {
  const int o = a.order();
  Jet r(o);
  r[0] = std::exp(a[0]);
  for (int k = 1; k <= o; ++k) {
    double s = 0.0;
    for (int i = 1; i <= k; ++i) s += i * a[i] * r[k - i];
    r[k] = s / k;
  }
  return r;
}

namespace {

void sincos(const Jet& a, Jet& s, Jet& c) {
  const int o = a.order();
  s = Jet(o);
  c = Jet(o);
  s[0] = std::sin(a[0]);
  c[0] = std::cos(a[0]);
  for (int k = 1; k <= o; ++k) {
    double ss = 0.0, cc = 0.0;
    for (int i = 1; i <= k; ++i) {
      ss += i * a[i] * c[k - i];
      cc -= i * a[i] * s[k - i];
    }
    s[k] = ss / k;
    c[k] = cc / k;
  }
}

}  // namespace

Jet sin(const Jet& a) {
  Jet s, c;
  sincos(a, s, c);
  return s;
}

Jet cos(const Jet& a) {
  Jet s, c;
  sincos(a, s, c);
  return c;
}

Jet powi(const Jet& a, int k) {
  if (k < 0) return powi(recip(a), -k);
  Jet r = Jet::constant(1.0, a.order());
  Jet base = a;
  while (k > 0) {
    if (k & 1) r = r * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return r;
}

Jet shift(const Jet& a) {
  const int o = a.order();
  if (o < 1) throw JetOrderError("cannot differentiate an order-0 jet");
  Jet r(o - 1);
  for (int k = 0; k < o; ++k) r[k] = (k + 1) * a[k + 1];
  return r;
}

JetVec::JetVec(int dim, int order) : c_(static_cast<std::size_t>(dim), Jet(order)) {}

JetVec::JetVec(std::vector<Jet> comps) : c_(std::move(comps)) {
  for (const Jet& j : c_)
    if (j.order() != c_.front().order())
      throw JetOrderError("vector jet components must share one order");
}

JetVec JetVec::constant(const Vec& v, int order) {
  JetVec r(v.dim(), order);
  for (int i = 0; i < v.dim(); ++i) r.c_[i][0] = v[i];
  return r;
}

JetVec JetVec::from_derivatives(const std::vector<Vec>& d) {
  if (d.empty()) throw JetOrderError("no derivative levels given");
  const int n = d.front().dim();
  const int o = static_cast<int>(d.size()) - 1;
  JetVec r(n, o);
  for (int k = 0; k <= o; ++k) {
    if (d[k].dim() != n) throw DimensionError("derivative levels differ in dimension");
    const double f = factorial(k);
    for (int i = 0; i < n; ++i) r.c_[i][k] = d[k][i] / f;
  }
  return r;
}

Vec JetVec::value() const {
  Vec v(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] = c_[i][0];
  return v;
}

Vec JetVec::derivative(int k) const {
  Vec v(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] = c_[i].derivative(k);
  return v;
}

JetVec JetVec::truncated(int o) const {
  std::vector<Jet> r;
  r.reserve(c_.size());
  for (const Jet& j : c_) r.push_back(j.truncated(o));
  return JetVec(std::move(r));
}

JetVec& JetVec::operator+=(const JetVec& b) {
  if (dim() != b.dim()) throw DimensionError("vector jet sum: dimension mismatch");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += b.c_[i];
  return *this;
}

JetVec& JetVec::operator-=(const JetVec& b) {
  if (dim() != b.dim()) throw DimensionError("vector jet difference: dimension mismatch");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= b.c_[i];
  return *this;
}

JetVec operator+(JetVec a, const JetVec& b) { return a += b; }
JetVec operator-(JetVec a, const JetVec& b) { return a -= b; }

JetVec operator*(const Jet& s, const JetVec& v) {
  std::vector<Jet> r;
  r.reserve(static_cast<std::size_t>(v.dim()));
  for (const Jet& j : v) r.push_back(s * j);
  return JetVec(std::move(r));
}

JetVec operator*(double s, JetVec v) {
  for (int i = 0; i < v.dim(); ++i) v[i] *= s;
  return v;
}

JetVec operator/(const JetVec& v, const Jet& s) { return recip(s) * v; }

Jet dot(const JetVec& a, const JetVec& b) {
  if (a.dim() != b.dim()) throw DimensionError("vector jet dot: dimension mismatch");
  Jet s(a.order());
  for (int i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

Jet dot(const JetVec& a, const Vec& b) {
  if (a.dim() != b.dim()) throw DimensionError("vector jet dot: dimension mismatch");
  Jet s(a.order());
  for (int i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

JetVec shift(const JetVec& v) {
  std::vector<Jet> r;
  r.reserve(static_cast<std::size_t>(v.dim()));
  for (const Jet& j : v) r.push_back(shift(j));
  return JetVec(std::move(r));
}

}  // namespace confsphere
