#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "swctl/field.hpp"
#include "swctl/model.hpp"

namespace swctl {

struct RankTrial {
  std::uint64_t seed = 0;
  int dim = 0;
  /// Smallest j with rank W_j == rank W_{j+1}.
  int layers_used = 0;
  /// rank W_0, rank W_1, ..., rank W_{layers_used}.
  std::vector<int> rank_history;
};

struct RankReport {
  int dim = 0;
  int layers_used = 0;
  std::vector<RankTrial> trials;
  FieldTag field;

  /// Number of trials reaching full dimension n.
  int trials_at(int value) const;
};

/// Controllable-subspace dimension of one realization by the W_j fixpoint:
/// basis <- span[B_1..B_N], then basis <- span[basis, A_1 basis, ..., A_N basis]
/// until the rank stops growing.
RankTrial controllable_dim_trial(const SwitchedStructure& sys, const Realization& r);

/// Runs one trial per seed and reports the maximum. Throws
/// std::invalid_argument when seeds is empty or p is not prime.
RankReport controllable_dim(const SwitchedStructure& sys, std::span<const std::uint64_t> seeds,
                            std::uint64_t p = kMersenne61);

/// Real-arithmetic variant; demonstration only.
RankReport controllable_dim_real(const SwitchedStructure& sys, std::span<const std::uint64_t> seeds,
                                 double rel_tol = 1e-9);

/// rank [sum w_i A_i, sum w_i B_i] on the realization sampled from seed.
/// Weights are field elements, one per subsystem.
int lti_reduction_rank(const SwitchedStructure& sys, std::span<const std::uint64_t> weights, std::uint64_t seed,
                       std::uint64_t p = kMersenne61);

struct ReductionScan {
  int samples = 0;
  int realizations = 0;
  int max_rank = 0;
  std::map<int, int> rank_counts;
};

/// lti_reduction_rank over `samples` random nonzero weight vectors, each on
/// `realizations` sampled realizations.
ReductionScan lti_reduction_scan(const SwitchedStructure& sys, int samples, int realizations, std::uint64_t seed,
                                 std::uint64_t p = kMersenne61);

/// Default oracle seeds derived from a base seed.
std::vector<std::uint64_t> trial_seeds(std::uint64_t base, int trials);

inline constexpr std::uint64_t kDefaultSeed = 20240607;

}  // namespace swctl
