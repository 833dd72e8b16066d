#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "swctl/model.hpp"

namespace swctl {

/// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime(std::uint64_t p);

/// Arithmetic in Z/pZ with 128-bit intermediates.
class PrimeField {
 public:
  /// Throws std::invalid_argument unless p is prime.
  explicit PrimeField(std::uint64_t p = kMersenne61);

  std::uint64_t prime() const { return p_; }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t s = a + b;
    return s >= p_ || s < a ? s - p_ : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + (p_ - b); }
  std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p_);
  }
  std::uint64_t pow(std::uint64_t base, std::uint64_t exp) const;
  /// a must be nonzero.
  std::uint64_t inv(std::uint64_t a) const { return pow(a, p_ - 2); }
  /// Maps a signed integer into the field.
  std::uint64_t from_int(std::int64_t v) const;

 private:
  std::uint64_t p_;
};

/// Dense row-major matrix.
template <typename T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(int rows, int cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  T& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  const T& operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  std::vector<T> column(int c) const {
    std::vector<T> out(rows_);
    for (int r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }
  bool operator==(const DenseMatrix&) const = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

using FieldMatrix = DenseMatrix<std::uint64_t>;
using RealMatrix = DenseMatrix<double>;

std::size_t rank_ff(FieldMatrix m, const PrimeField& f);
std::uint64_t determinant_ff(FieldMatrix m, const PrimeField& f);
FieldMatrix multiply(const FieldMatrix& lhs, const FieldMatrix& rhs, const PrimeField& f);
std::vector<std::uint64_t> apply(const FieldMatrix& m, std::span<const std::uint64_t> v, const PrimeField& f);
FieldMatrix hconcat(std::span<const FieldMatrix> blocks);

/// Rank with a column-norm relative threshold.
std::size_t rank_real(const RealMatrix& m, double rel_tol = 1e-9);

/// Incrementally maintained reduced column basis over Z/pZ. Vectors are
/// stored fully reduced on their pivot rows so membership tests are O(n·rank).
class FieldBasis {
 public:
  FieldBasis(int dim, const PrimeField& f) : dim_(dim), field_(f) {}
  /// Returns true when v was independent and got added.
  bool insert(std::vector<std::uint64_t> v);
  std::size_t rank() const { return vectors_.size(); }
  const std::vector<std::vector<std::uint64_t>>& vectors() const { return vectors_; }

 private:
  int dim_;
  PrimeField field_;
  std::vector<std::vector<std::uint64_t>> vectors_;
  std::vector<int> pivots_;
};

/// Orthonormal column basis over the reals (modified Gram-Schmidt, one
/// reorthogonalization pass). A candidate is accepted when its residual
/// exceeds tol * scale, where scale is the largest column norm seen so far.
class RealBasis {
 public:
  explicit RealBasis(int dim, double rel_tol = 1e-9) : dim_(dim), rel_tol_(rel_tol) {}
  bool insert(std::vector<double> v);
  void raise_scale(double norm) { scale_ = std::max(scale_, norm); }
  std::size_t rank() const { return vectors_.size(); }
  const std::vector<std::vector<double>>& vectors() const { return vectors_; }

 private:
  int dim_;
  double rel_tol_;
  double scale_ = 0.0;
  std::vector<std::vector<double>> vectors_;
};

/// Dense matrices of a realization: a[i] is n x n, b[i] is n x m_i.
struct DenseSystem {
  std::vector<FieldMatrix> a;
  std::vector<FieldMatrix> b;
};
struct DenseRealSystem {
  std::vector<RealMatrix> a;
  std::vector<RealMatrix> b;
};

DenseSystem dense_ff(const SwitchedStructure& sys, const Realization& r);
DenseRealSystem dense_real(const SwitchedStructure& sys, const Realization& r);

}  // namespace swctl
