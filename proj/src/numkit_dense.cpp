#include "osa/numkit/dense.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "osa/errors.hpp"

namespace osa::numkit {

namespace {
bool finite_range(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}
}  // namespace

bool DenseVector::all_finite() const { return finite_range(values_); }

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> row_major)
    : rows_(rows), cols_(cols), values_(std::move(row_major)) {
  detail::require(values_.size() == rows_ * cols_,
                  "DenseMatrix: " + std::to_string(values_.size()) + " entries for " +
                      std::to_string(rows_) + "x" + std::to_string(cols_));
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

bool DenseMatrix::all_finite() const { return finite_range(values_); }

namespace {

// Pairwise summation; halves of equal length share one summation tree, so
// [u, v]·[w, −w] style products cancel exactly when u = v.
double pairwise_dot(const double* a, const double* b, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_dot(a, b, half) + pairwise_dot(a + half, b + half, n - half);
}

}  // namespace

double dot(std::span<const double> a, std::span<const double> b) {
  detail::require(a.size() == b.size(), "dot: length mismatch");
  return pairwise_dot(a.data(), b.data(), a.size());
}

double norm2(std::span<const double> v) { return std::sqrt(dot(v, v)); }

DenseVector matvec(const DenseMatrix& m, std::span<const double> v) {
  detail::require(m.cols() == v.size(), "matvec: shape mismatch");
  DenseVector out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) out[r] = dot(m.row(r), v);
  return out;
}

double quadratic_form(const DenseMatrix& m, std::span<const double> v) {
  detail::require(m.rows() == m.cols() && m.cols() == v.size(), "quadratic_form: shape mismatch");
  double s = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (v[r] == 0.0) continue;
    s += v[r] * dot(m.row(r), v);
  }
  return s;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  detail::require(a.cols() == b.rows(), "matmul: shape mismatch");
  DenseMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

void add_outer(DenseMatrix& m, std::span<const double> v) {
  detail::require(m.rows() == v.size() && m.cols() == v.size(), "add_outer: shape mismatch");
  for (std::size_t r = 0; r < v.size(); ++r) {
    if (v[r] == 0.0) continue;
    auto row = m.row(r);
    for (std::size_t c = 0; c < v.size(); ++c) row[c] += v[r] * v[c];
  }
}

void rank1_inverse_update_in_place(DenseMatrix& inv, std::span<const double> v) {
  detail::require(inv.rows() == inv.cols() && inv.rows() == v.size(),
                  "rank1_inverse_update: dimension mismatch");
  const DenseVector u = matvec(inv, v);
  const double denom = 1.0 + dot(v, u.values());
  if (!(denom > 0.0)) {
    throw DegeneracyError("rank1_inverse_update: non-positive denominator " + std::to_string(denom));
  }
  if (denom == 1.0 && std::all_of(u.begin(), u.end(), [](double x) { return x == 0.0; })) return;
  const double scale = 1.0 / denom;
  const std::size_t n = v.size();
  for (std::size_t r = 0; r < n; ++r) {
    const double ur = u[r] * scale;
    if (ur == 0.0) continue;
    auto row = inv.row(r);
    for (std::size_t c = 0; c < n; ++c) row[c] -= ur * u[c];
  }
}

DenseMatrix rank1_inverse_update(const DenseMatrix& inv, std::span<const double> v) {
  DenseMatrix out = inv;
  rank1_inverse_update_in_place(out, v);
  return out;
}

}  // namespace osa::numkit
