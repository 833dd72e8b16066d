#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace swctl {

/// Raised for malformed or inconsistent system descriptions.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A nonzero position, 0-based.
struct Entry {
  int row = 0;
  int col = 0;
  auto operator<=>(const Entry&) const = default;
};

/// Zero/nonzero pattern of a matrix. Nonzeros are kept sorted and unique.
class StructuredMatrix {
 public:
  StructuredMatrix() = default;
  /// Throws InputError on out-of-range or duplicate entries.
  StructuredMatrix(int rows, int cols, std::vector<Entry> nonzeros);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const std::vector<Entry>& nonzeros() const { return nonzeros_; }
  std::size_t nnz() const { return nonzeros_.size(); }
  bool contains(int row, int col) const;

  bool operator==(const StructuredMatrix&) const = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Entry> nonzeros_;
};

struct Subsystem {
  StructuredMatrix a;  // n x n
  StructuredMatrix b;  // n x m_i
  bool operator==(const Subsystem&) const = default;
};

/// N structured pairs (A_i, B_i) sharing the state dimension n.
class SwitchedStructure {
 public:
  SwitchedStructure() = default;
  /// Throws InputError when N == 0, n < 1 or any dimension disagrees with n.
  SwitchedStructure(int n, std::vector<Subsystem> subsystems);

  int n() const { return n_; }
  int num_subsystems() const { return static_cast<int>(subsystems_.size()); }
  const Subsystem& subsystem(int i) const { return subsystems_.at(i); }
  const std::vector<Subsystem>& subsystems() const { return subsystems_; }
  int inputs(int i) const { return subsystems_.at(i).b.cols(); }
  int total_inputs() const;
  std::size_t nnz() const;

  bool operator==(const SwitchedStructure&) const = default;

 private:
  int n_ = 0;
  std::vector<Subsystem> subsystems_;
};

/// Parses the JSON system schema (1-based indices). Dimensions are derived
/// and cross-checked; errors carry the offending position.
SwitchedStructure parse_system(std::string_view json_text);

/// Canonical JSON form accepted by parse_system.
std::string serialize_system(const SwitchedStructure& sys);

inline constexpr std::uint64_t kMersenne61 = (std::uint64_t{1} << 61) - 1;

struct FieldTag {
  enum class Kind { kFinite, kReal };
  Kind kind = Kind::kFinite;
  std::uint64_t prime = kMersenne61;

  static FieldTag finite(std::uint64_t p = kMersenne61) { return {Kind::kFinite, p}; }
  static FieldTag real() { return {Kind::kReal, 0}; }
  bool is_finite() const { return kind == Kind::kFinite; }
  bool operator==(const FieldTag&) const = default;
};

enum class MatrixTag { kA, kB };

/// Addresses one nonzero parameter of a switched structure.
struct ParamKey {
  int subsystem = 0;
  MatrixTag tag = MatrixTag::kA;
  int row = 0;
  int col = 0;
  auto operator<=>(const ParamKey&) const = default;
};

using Scalar = std::variant<std::uint64_t, double>;

/// Concrete values for every nonzero of a SwitchedStructure.
struct Realization {
  FieldTag field;
  std::uint64_t seed = 0;
  std::map<ParamKey, Scalar> values;

  std::uint64_t residue(const ParamKey& key) const { return std::get<std::uint64_t>(values.at(key)); }
  double real(const ParamKey& key) const { return std::get<double>(values.at(key)); }
};

/// Deterministic in (sys, field, seed). Finite-field values are uniform on
/// [1, p-1]; real values uniform on [-1, 1] without 0. Requires a prime
/// p > 2^31 for the finite field.
Realization sample_realization(const SwitchedStructure& sys, FieldTag field, std::uint64_t seed);

/// Independent per-call generator used for seeds, weights and realizations.
/// mt19937_64 output is fixed by the standard; the range reductions below are
/// ours, so streams are reproducible across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  std::uint64_t next();
  /// Uniform on [0, bound).
  std::uint64_t below(std::uint64_t bound);
  /// Uniform on [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi);
  /// Uniform on [0, 1).
  double unit();

 private:
  std::mt19937_64 engine_;
};

/// splitmix64 step; used to derive trial seeds from a base seed.
std::uint64_t mix_seed(std::uint64_t x);

}  // namespace swctl
