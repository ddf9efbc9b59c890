#include "confsphere/vec.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "confsphere/errors.hpp"

namespace confsphere {

namespace {

void same_size(const Vec& a, const Vec& b, const char* op) {
  if (a.size() != b.size())
    throw DimensionError(std::string(op) + ": dimension mismatch " + std::to_string(a.size()) +
                         " vs " + std::to_string(b.size()));
}

}  // namespace

Vec Vec::basis(std::size_t n, std::size_t i) {
  if (i >= n) throw DimensionError("basis index out of range");
  Vec e(n);
  e[i] = 1.0;
  return e;
}

Vec& Vec::operator+=(const Vec& o) {
  same_size(*this, o, "+");
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
  return *this;
}

Vec& Vec::operator-=(const Vec& o) {
  same_size(*this, o, "-");
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
  return *this;
}

Vec& Vec::operator*=(double s) {
  for (double& x : v_) x *= s;
  return *this;
}

Vec& Vec::operator/=(double s) {
  for (double& x : v_) x /= s;
  return *this;
}

bool Vec::all_finite() const noexcept {
  return std::all_of(v_.begin(), v_.end(), [](double x) { return std::isfinite(x); });
}

Vec operator+(Vec a, const Vec& b) { return a += b; }
Vec operator-(Vec a, const Vec& b) { return a -= b; }
Vec operator-(Vec a) { return a *= -1.0; }
Vec operator*(double s, Vec a) { return a *= s; }
Vec operator*(Vec a, double s) { return a *= s; }
Vec operator/(Vec a, double s) { return a /= s; }

double dot(const Vec& a, const Vec& b) {
  same_size(a, b, "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm_sq(const Vec& a) { return dot(a, a); }
double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

double max_abs(const Vec& a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

double max_abs_diff(const Vec& a, const Vec& b) {
  same_size(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

Vec cross(const Vec& a, const Vec& b) {
  if (a.size() != 3 || b.size() != 3) throw DimensionError("cross product needs 3-vectors");
  return Vec{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Vec Matrix::operator*(const Vec& x) const {
  if (x.dim() != cols_) throw DimensionError("matrix-vector: dimension mismatch");
  Vec y(static_cast<std::size_t>(rows_));
  for (int i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (int j = 0; j < cols_; ++j) s += (*this)(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

Matrix Matrix::operator*(const Matrix& b) const {
  if (cols_ != b.rows_) throw DimensionError("matrix product: dimension mismatch");
  Matrix c(rows_, b.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const double a = (*this)(i, k);
      for (int j = 0; j < b.cols_; ++j) c(i, j) += a * b(k, j);
    }
  return c;
}

Matrix& Matrix::operator+=(const Matrix& b) {
  if (rows_ != b.rows_ || cols_ != b.cols_) throw DimensionError("matrix sum: shape mismatch");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += b.a_[i];
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& x : a_) x *= s;
  return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a += -1.0 * b; }
Matrix operator*(double s, Matrix a) { return a *= s; }

double det(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("determinant of a non-square matrix");
  const int n = m.rows();
  switch (n) {
    case 0:
      return 1.0;
    case 1:
      return m(0, 0);
    case 2:
      return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    case 3:
      return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
             m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
             m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    default:
      break;
  }
  Matrix a = m;
  double d = 1.0;
  for (int k = 0; k < n; ++k) {
    int p = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(p, k))) p = i;
    if (a(p, k) == 0.0) return 0.0;
    if (p != k) {
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      d = -d;
    }
    d *= a(k, k);
    for (int i = k + 1; i < n; ++i) {
      const double f = a(i, k) / a(k, k);
      for (int j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return d;
}

}  // namespace confsphere
