#include "confsphere/multilinear.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "confsphere/errors.hpp"

namespace confsphere {

double epsilon(std::span<const int> idx, std::span<const Vec* const> cols) {
  const int m = static_cast<int>(idx.size());
  if (m != static_cast<int>(cols.size()))
    throw DimensionError("epsilon: rank " + std::to_string(m) + " with " +
                         std::to_string(cols.size()) + " vectors");
  std::vector<std::vector<double>> c(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    const Vec& v = *cols[k];
    for (int r = 0; r < m; ++r) {
      if (idx[r] < 0 || idx[r] >= v.dim()) throw DimensionError("epsilon: index out of range");
      c[k].push_back(v[idx[r]]);
    }
  }
  // Rows and columns are put in a canonical order first, so that permuting
  // either flips the sign exactly.
  int sign = 1;
  std::vector<int> rows(idx.begin(), idx.end());
  std::vector<int> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return rows[a] < rows[b]; });
  for (int r = 1; r < m; ++r)
    if (rows[order[r]] == rows[order[r - 1]]) return 0.0;
  std::vector<int> perm(order);
  sign *= sort_with_sign(perm);
  for (auto& col : c) {
    std::vector<double> sorted(static_cast<std::size_t>(m));
    for (int r = 0; r < m; ++r) sorted[r] = col[order[r]];
    col = std::move(sorted);
  }
  std::vector<int> corder(static_cast<std::size_t>(m));
  std::iota(corder.begin(), corder.end(), 0);
  std::sort(corder.begin(), corder.end(), [&](int a, int b) { return c[a] < c[b]; });
  for (int k = 1; k < m; ++k)
    if (c[corder[k]] == c[corder[k - 1]]) return 0.0;
  std::vector<int> cperm(corder);
  sign *= sort_with_sign(cperm);

  Matrix a(m, m);
  for (int k = 0; k < m; ++k)
    for (int r = 0; r < m; ++r) a(r, k) = c[corder[k]][r];
  return sign * det(a);
}

int sort_with_sign(std::vector<int>& idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i)
    for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
      if (idx[j - 1] == idx[j]) return 0;
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  return sign;
}

std::vector<std::vector<int>> increasing_tuples(int lo, int hi, int m) {
  std::vector<std::vector<int>> out;
  if (m < 0 || hi - lo < m) return out;
  std::vector<int> t(static_cast<std::size_t>(m));
  std::iota(t.begin(), t.end(), lo);
  while (true) {
    out.push_back(t);
    int p = m - 1;
    while (p >= 0 && t[p] == hi - m + p) --p;
    if (p < 0) break;
    ++t[p];
    for (int q = p + 1; q < m; ++q) t[q] = t[q - 1] + 1;
  }
  return out;
}

DenseTensor::DenseTensor(int dim, int rank) : dim_(dim), rank_(rank) {
  if (dim < 1 || rank < 0) throw DimensionError("tensor needs dim >= 1 and rank >= 0");
  std::size_t n = 1;
  for (int r = 0; r < rank; ++r) n *= static_cast<std::size_t>(dim);
  a_.assign(n, 0.0);
}

DenseTensor DenseTensor::from(const Vec& v) {
  DenseTensor t(v.dim(), 1);
  for (int i = 0; i < v.dim(); ++i) t.a_[i] = v[i];
  return t;
}

DenseTensor DenseTensor::from(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("tensor from a non-square matrix");
  DenseTensor t(m.rows(), 2);
  std::copy(m.data().begin(), m.data().end(), t.a_.begin());
  return t;
}

std::size_t DenseTensor::offset(std::span<const int> idx) const {
  if (static_cast<int>(idx.size()) != rank_) throw DimensionError("tensor index has wrong rank");
  std::size_t off = 0;
  for (int i : idx) {
    if (i < 0 || i >= dim_) throw DimensionError("tensor index out of range");
    off = off * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i);
  }
  return off;
}

double& DenseTensor::at(std::span<const int> idx) { return a_[offset(idx)]; }
double DenseTensor::at(std::span<const int> idx) const { return a_[offset(idx)]; }

DenseTensor outer(const DenseTensor& a, const DenseTensor& b) {
  if (a.dim() != b.dim()) throw DimensionError("outer product: dimension mismatch");
  DenseTensor t(a.dim(), a.rank() + b.rank());
  const auto da = a.data();
  const auto db = b.data();
  std::vector<double> out;
  out.reserve(da.size() * db.size());
  for (double x : da)
    for (double y : db) out.push_back(x * y);
  std::vector<int> idx(static_cast<std::size_t>(t.rank()), 0);
  for (double v : out) {
    t.at(idx) = v;
    for (int p = t.rank() - 1; p >= 0; --p) {
      if (++idx[p] < t.dim()) break;
      idx[p] = 0;
    }
  }
  return t;
}

DenseTensor antisymmetrize(const DenseTensor& t, std::vector<int> slots) {
  const int m = static_cast<int>(slots.size());
  if (m > 4) throw DomainError("antisymmetrization over more than 4 slots");
  std::vector<int> check = slots;
  std::sort(check.begin(), check.end());
  if (std::adjacent_find(check.begin(), check.end()) != check.end())
    throw DomainError("antisymmetrization slot repeated");
  for (int s : slots)
    if (s < 0 || s >= t.rank()) throw DomainError("antisymmetrization slot out of range");
  if (m < 2) return t;

  std::vector<int> perm(static_cast<std::size_t>(m));
  std::vector<std::pair<std::vector<int>, int>> perms;
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::vector<int> p = perm;
    perms.emplace_back(perm, sort_with_sign(p));
  } while (std::next_permutation(perm.begin(), perm.end()));
  const double norm = 1.0 / static_cast<double>(perms.size());

  DenseTensor out(t.dim(), t.rank());
  std::vector<int> idx(static_cast<std::size_t>(t.rank()), 0);
  std::vector<int> src;
  const std::size_t total = t.data().size();
  for (std::size_t k = 0; k < total; ++k) {
    double s = 0.0;
    for (const auto& [p, sign] : perms) {
      src = idx;
      for (int a = 0; a < m; ++a) src[slots[a]] = idx[slots[p[a]]];
      s += sign * t.at(src);
    }
    out.at(idx) = s * norm;
    for (int q = t.rank() - 1; q >= 0; --q) {
      if (++idx[q] < t.dim()) break;
      idx[q] = 0;
    }
  }
  return out;
}

DenseTensor antisymmetrize(const DenseTensor& t) {
  std::vector<int> slots(static_cast<std::size_t>(t.rank()));
  std::iota(slots.begin(), slots.end(), 0);
  return antisymmetrize(t, std::move(slots));
}

double tractor_metric(const Vec& a, const Vec& b) {
  if (a.dim() != b.dim() || a.dim() < 3) throw DimensionError("tractor metric: bad operands");
  const int N = a.dim() - 1;
  double s = a[0] * b[N] + a[N] * b[0];
  for (int i = 1; i < N; ++i) s += a[i] * b[i];
  return s;
}

Jet tractor_metric(const JetVec& a, const JetVec& b) {
  if (a.dim() != b.dim() || a.dim() < 3) throw DimensionError("tractor metric: bad operands");
  const int N = a.dim() - 1;
  Jet s = a[0] * b[N] + a[N] * b[0];
  for (int i = 1; i < N; ++i) s += a[i] * b[i];
  return s;
}

Matrix algebraic_action(const Vec& v) {
  const int n = v.dim();
  Matrix m(n + 2, n + 2);
  for (int i = 0; i < n; ++i) {
    m(1 + i, 0) = v[i];
    m(n + 1, 1 + i) = -v[i];
  }
  return m;
}

WedgeTractor::WedgeTractor(int ambient, int rank) : ambient_(ambient), rank_(rank) {
  if (rank < 1 || rank > ambient) throw DimensionError("wedge rank out of range");
}

WedgeTractor WedgeTractor::basis(int ambient, std::vector<int> idx) {
  WedgeTractor w(ambient, static_cast<int>(idx.size()));
  w.add(std::move(idx), 1.0);
  return w;
}

double WedgeTractor::coeff(const std::vector<int>& idx) const {
  auto it = c_.find(idx);
  return it == c_.end() ? 0.0 : it->second;
}

void WedgeTractor::add(std::vector<int> idx, double value) {
  if (static_cast<int>(idx.size()) != rank_) throw DimensionError("wedge index has wrong rank");
  for (int i : idx)
    if (i < 0 || i >= ambient_) throw DimensionError("wedge index out of range");
  const int sign = sort_with_sign(idx);
  if (sign == 0 || value == 0.0) return;
  c_[idx] += sign * value;
}

double WedgeTractor::max_abs() const {
  double m = 0.0;
  for (const auto& [k, v] : c_) m = std::max(m, std::abs(v));
  return m;
}

WedgeTractor& WedgeTractor::operator+=(const WedgeTractor& b) {
  if (b.rank_ != rank_ || b.ambient_ != ambient_) throw DimensionError("wedge sum: shape mismatch");
  for (const auto& [k, v] : b.c_) c_[k] += v;
  return *this;
}

WedgeTractor& WedgeTractor::operator-=(const WedgeTractor& b) {
  if (b.rank_ != rank_ || b.ambient_ != ambient_) throw DimensionError("wedge sum: shape mismatch");
  for (const auto& [k, v] : b.c_) c_[k] -= v;
  return *this;
}

WedgeTractor& WedgeTractor::operator*=(double s) {
  for (auto& [k, v] : c_) v *= s;
  return *this;
}

WedgeTractor operator+(WedgeTractor a, const WedgeTractor& b) { return a += b; }
WedgeTractor operator-(WedgeTractor a, const WedgeTractor& b) { return a -= b; }
WedgeTractor operator*(double s, WedgeTractor a) { return a *= s; }

WedgeTractor wedge(const std::vector<Vec>& tractors) {
  if (tractors.empty() || tractors.size() > 4) throw DimensionError("wedge of 1..4 tractors");
  const int amb = tractors.front().dim();
  for (const Vec& t : tractors)
    if (t.dim() != amb) throw DimensionError("wedge: tractors differ in dimension");
  const int k = static_cast<int>(tractors.size());
  std::vector<const Vec*> cols;
  for (const Vec& t : tractors) cols.push_back(&t);
  WedgeTractor w(amb, k);
  for (auto& idx : increasing_tuples(0, amb, k)) {
    const double c = epsilon(idx, cols);
    if (c != 0.0) w.add(idx, c);
  }
  return w;
}

double wedge_pair(const WedgeTractor& a, const WedgeTractor& b) {
  if (a.rank() != b.rank() || a.ambient() != b.ambient())
    throw DimensionError("wedge pairing: rank or dimension mismatch");
  // The metric pairs e_0 with e_N and e_i with itself, so det(<e_I, e_J>)
  // is nonzero only when J is the image of I under 0 <-> N.
  const int N = a.ambient() - 1;
  double s = 0.0;
  std::vector<int> j;
  for (const auto& [idx, x] : a.terms()) {
    j = idx;
    for (int& v : j) v = v == 0 ? N : (v == N ? 0 : v);
    const int sign = sort_with_sign(j);
    if (sign == 0) continue;
    s += sign * x * b.coeff(j);
  }
  return s;
}

WedgeTractor act(const Matrix& rho, const WedgeTractor& w) {
  if (rho.rows() != w.ambient() || rho.cols() != w.ambient())
    throw DimensionError("action: matrix does not match wedge dimension");
  WedgeTractor out(w.ambient(), w.rank());
  for (const auto& [idx, x] : w.terms())
    for (int p = 0; p < w.rank(); ++p)
      for (int b = 0; b < w.ambient(); ++b) {
        const double c = rho(b, idx[p]);
        if (c == 0.0) continue;
        std::vector<int> j = idx;
        j[p] = b;
        out.add(std::move(j), c * x);
      }
  return out;
}

}  // namespace confsphere
