#include "swctl/field.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace swctl {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

}  // namespace

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (p % small == 0) return p == small;
  }
  std::uint64_t d = p - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These witnesses are deterministic for all p < 2^64.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, p);
    if (x == 1 || x == p - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, p);
      if (x == p - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
  if (!is_prime(p)) throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");
}

std::uint64_t PrimeField::pow(std::uint64_t base, std::uint64_t exp) const { return powmod(base, exp, p_); }

std::uint64_t PrimeField::from_int(std::int64_t v) const {
  if (v >= 0) return static_cast<std::uint64_t>(v) % p_;
  const std::uint64_t mag = static_cast<std::uint64_t>(-(v + 1)) + 1;
  return neg(mag % p_);
}

namespace {

// Row echelon form in place; returns rank and the determinant sign/product
// bookkeeping through the out-parameter.
std::size_t eliminate(FieldMatrix& m, const PrimeField& f, std::uint64_t* det) {
  const int rows = m.rows();
  const int cols = m.cols();
  std::size_t rank = 0;
  std::uint64_t acc = 1;
  bool negate = false;
  for (int c = 0; c < cols && static_cast<int>(rank) < rows; ++c) {
    int pivot = -1;
    for (int r = static_cast<int>(rank); r < rows; ++r) {
      if (m(r, c) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    const int pr = static_cast<int>(rank);
    if (pivot != pr) {
      for (int k = c; k < cols; ++k) std::swap(m(pivot, k), m(pr, k));
      negate = !negate;
    }
    acc = f.mul(acc, m(pr, c));
    const std::uint64_t inv = f.inv(m(pr, c));
    for (int r = pr + 1; r < rows; ++r) {
      if (m(r, c) == 0) continue;
      const std::uint64_t factor = f.mul(m(r, c), inv);
      for (int k = c; k < cols; ++k) m(r, k) = f.sub(m(r, k), f.mul(factor, m(pr, k)));
    }
    ++rank;
  }
  if (det != nullptr) *det = negate ? f.neg(acc) : acc;
  return rank;
}

}  // namespace

std::size_t rank_ff(FieldMatrix m, const PrimeField& f) { return eliminate(m, f, nullptr); }

std::uint64_t determinant_ff(FieldMatrix m, const PrimeField& f) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  if (m.rows() == 0) return 1;
  std::uint64_t det = 0;
  const std::size_t rank = eliminate(m, f, &det);
  return rank == static_cast<std::size_t>(m.rows()) ? det : 0;
}

FieldMatrix multiply(const FieldMatrix& lhs, const FieldMatrix& rhs, const PrimeField& f) {
  if (lhs.cols() != rhs.rows()) throw std::invalid_argument("matrix product shape mismatch");
  FieldMatrix out(lhs.rows(), rhs.cols());
  for (int i = 0; i < lhs.rows(); ++i) {
    for (int k = 0; k < lhs.cols(); ++k) {
      const std::uint64_t a = lhs(i, k);
      if (a == 0) continue;
      for (int j = 0; j < rhs.cols(); ++j) out(i, j) = f.add(out(i, j), f.mul(a, rhs(k, j)));
    }
  }
  return out;
}

std::vector<std::uint64_t> apply(const FieldMatrix& m, std::span<const std::uint64_t> v, const PrimeField& f) {
  std::vector<std::uint64_t> out(m.rows(), 0);
  for (int i = 0; i < m.rows(); ++i) {
    std::uint64_t acc = 0;
    for (int k = 0; k < m.cols(); ++k) {
      if (m(i, k) != 0 && v[k] != 0) acc = f.add(acc, f.mul(m(i, k), v[k]));
    }
    out[i] = acc;
  }
  return out;
}

FieldMatrix hconcat(std::span<const FieldMatrix> blocks) {
  if (blocks.empty()) return {};
  int cols = 0;
  for (const auto& b : blocks) {
    if (b.rows() != blocks.front().rows()) throw std::invalid_argument("hconcat row mismatch");
    cols += b.cols();
  }
  FieldMatrix out(blocks.front().rows(), cols);
  int offset = 0;
  for (const auto& b : blocks) {
    for (int r = 0; r < b.rows(); ++r)
      for (int c = 0; c < b.cols(); ++c) out(r, offset + c) = b(r, c);
    offset += b.cols();
  }
  return out;
}

std::size_t rank_real(const RealMatrix& m, double rel_tol) {
  RealBasis basis(m.rows(), rel_tol);
  for (int c = 0; c < m.cols(); ++c) {
    double norm = 0.0;
    for (int r = 0; r < m.rows(); ++r) norm += m(r, c) * m(r, c);
    basis.raise_scale(std::sqrt(norm));
  }
  for (int c = 0; c < m.cols(); ++c) basis.insert(m.column(c));
  return basis.rank();
}

bool FieldBasis::insert(std::vector<std::uint64_t> v) {
  for (std::size_t k = 0; k < vectors_.size(); ++k) {
    const std::uint64_t coeff = v[pivots_[k]];
    if (coeff == 0) continue;
    const auto& b = vectors_[k];
    for (int r = 0; r < dim_; ++r) {
      if (b[r] != 0) v[r] = field_.sub(v[r], field_.mul(coeff, b[r]));
    }
  }
  int pivot = -1;
  for (int r = 0; r < dim_; ++r) {
    if (v[r] != 0) {
      pivot = r;
      break;
    }
  }
  if (pivot < 0) return false;
  const std::uint64_t inv = field_.inv(v[pivot]);
  for (auto& x : v) x = field_.mul(x, inv);
  // Keep existing vectors reduced on the new pivot row.
  for (auto& b : vectors_) {
    const std::uint64_t coeff = b[pivot];
    if (coeff == 0) continue;
    for (int r = 0; r < dim_; ++r) {
      if (v[r] != 0) b[r] = field_.sub(b[r], field_.mul(coeff, v[r]));
    }
  }
  vectors_.push_back(std::move(v));
  pivots_.push_back(pivot);
  return true;
}

bool RealBasis::insert(std::vector<double> v) {
  double norm = 0.0;
  for (double x : v) norm += x * x;
  norm = std::sqrt(norm);
  scale_ = std::max(scale_, norm);
  if (norm == 0.0) return false;
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& q : vectors_) {
      double dot = 0.0;
      for (int r = 0; r < dim_; ++r) dot += q[r] * v[r];
      for (int r = 0; r < dim_; ++r) v[r] -= dot * q[r];
    }
  }
  double residual = 0.0;
  for (double x : v) residual += x * x;
  residual = std::sqrt(residual);
  if (residual <= rel_tol_ * scale_) return false;
  for (auto& x : v) x /= residual;
  vectors_.push_back(std::move(v));
  return true;
}

namespace {

template <typename T, typename Get>
void fill_dense(const SwitchedStructure& sys, std::vector<DenseMatrix<T>>& a, std::vector<DenseMatrix<T>>& b,
                Get get) {
  const int n = sys.n();
  for (int i = 0; i < sys.num_subsystems(); ++i) {
    const auto& s = sys.subsystem(i);
    DenseMatrix<T> am(n, n);
    DenseMatrix<T> bm(n, s.b.cols());
    for (const Entry& e : s.a.nonzeros()) am(e.row, e.col) = get(ParamKey{i, MatrixTag::kA, e.row, e.col});
    for (const Entry& e : s.b.nonzeros()) bm(e.row, e.col) = get(ParamKey{i, MatrixTag::kB, e.row, e.col});
    a.push_back(std::move(am));
    b.push_back(std::move(bm));
  }
}

}  // namespace

DenseSystem dense_ff(const SwitchedStructure& sys, const Realization& r) {
  if (!r.field.is_finite()) throw std::invalid_argument("dense_ff needs a finite-field realization");
  DenseSystem out;
  fill_dense<std::uint64_t>(sys, out.a, out.b, [&](const ParamKey& k) { return r.residue(k); });
  return out;
}

DenseRealSystem dense_real(const SwitchedStructure& sys, const Realization& r) {
  if (r.field.is_finite()) throw std::invalid_argument("dense_real needs a real realization");
  DenseRealSystem out;
  fill_dense<double>(sys, out.a, out.b, [&](const ParamKey& k) { return r.real(k); });
  return out;
}

}  // namespace swctl
