#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace confsphere {

/// Dense real vector in R^n.  Used for positions, velocities, momenta and
/// every vector-valued quantity in the flat coordinates.
class Vec {
 public:
  Vec() = default;
  explicit Vec(std::size_t n, double fill = 0.0) : v_(n, fill) {}
  Vec(std::initializer_list<double> xs) : v_(xs) {}
  explicit Vec(std::vector<double> xs) : v_(std::move(xs)) {}

  static Vec basis(std::size_t n, std::size_t i);

  std::size_t size() const noexcept { return v_.size(); }
  int dim() const noexcept { return static_cast<int>(v_.size()); }
  double& operator[](std::size_t i) { return v_[i]; }
  double operator[](std::size_t i) const { return v_[i]; }
  auto begin() noexcept { return v_.begin(); }
  auto end() noexcept { return v_.end(); }
  auto begin() const noexcept { return v_.begin(); }
  auto end() const noexcept { return v_.end(); }
  std::span<const double> span() const noexcept { return v_; }
  const std::vector<double>& std() const noexcept { return v_; }

  Vec& operator+=(const Vec& o);
  Vec& operator-=(const Vec& o);
  Vec& operator*=(double s);
  Vec& operator/=(double s);

  bool all_finite() const noexcept;

  friend bool operator==(const Vec&, const Vec&) = default;

 private:
  std::vector<double> v_;
};

Vec operator+(Vec a, const Vec& b);
Vec operator-(Vec a, const Vec& b);
Vec operator-(Vec a);
Vec operator*(double s, Vec a);
Vec operator*(Vec a, double s);
Vec operator/(Vec a, double s);

/// Standard Euclidean scalar product; throws DimensionError on mismatch.
double dot(const Vec& a, const Vec& b);
double norm_sq(const Vec& a);
double norm(const Vec& a);
double max_abs(const Vec& a);
/// max_i |a_i - b_i|
double max_abs_diff(const Vec& a, const Vec& b);
Vec cross(const Vec& a, const Vec& b);

/// Row-major dense matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, fill) {}
  static Matrix identity(int n);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  std::span<const double> data() const noexcept { return a_; }

  Matrix transposed() const;
  Vec operator*(const Vec& x) const;
  Matrix operator*(const Matrix& b) const;
  Matrix& operator+=(const Matrix& b);
  Matrix& operator*=(double s);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> a_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(double s, Matrix a);

/// Determinant of a square matrix.  Closed forms up to 3x3, partial-pivot
/// elimination above.
double det(const Matrix& m);

}  // namespace confsphere
