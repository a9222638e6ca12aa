#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace osa::numkit {

class DenseVector {
 public:
  DenseVector() = default;
  explicit DenseVector(std::size_t dim, double fill = 0.0) : values_(dim, fill) {}
  DenseVector(std::initializer_list<double> values) : values_(values) {}
  explicit DenseVector(std::vector<double> values) : values_(std::move(values)) {}
  explicit DenseVector(std::span<const double> values)
      : values_(values.begin(), values.end()) {}

  std::size_t dim() const { return values_.size(); }
  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }
  operator std::span<const double>() const { return values_; }

  double* data() { return values_.data(); }
  const double* data() const { return values_.data(); }
  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  bool all_finite() const;
  friend bool operator==(const DenseVector&, const DenseVector&) = default;

 private:
  std::vector<double> values_;
};

/// Row-major dense matrix.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), values_(rows * cols, fill) {}
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> row_major);

  static DenseMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return values_.size(); }

  double& operator()(std::size_t r, std::size_t c) { return values_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return values_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {values_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {values_.data() + r * cols_, cols_}; }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  bool all_finite() const;
  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> v);

// y = M v
DenseVector matvec(const DenseMatrix& m, std::span<const double> v);

// vᵀ M v for square M.
double quadratic_form(const DenseMatrix& m, std::span<const double> v);

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);

// In-place M += v vᵀ.
void add_outer(DenseMatrix& m, std::span<const double> v);

/// Sherman-Morrison: given inv = A⁻¹ (symmetric positive definite) returns
/// (A + v vᵀ)⁻¹. Throws ContractViolation on shape mismatch and
/// DegeneracyError when 1 + vᵀ A⁻¹ v is not positive.
DenseMatrix rank1_inverse_update(const DenseMatrix& inv, std::span<const double> v);

/// Same update applied in place; the hot path inside the bandit models.
void rank1_inverse_update_in_place(DenseMatrix& inv, std::span<const double> v);

}  // namespace osa::numkit
