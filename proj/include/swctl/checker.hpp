#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "swctl/cactus.hpp"
#include "swctl/mdg.hpp"
#include "swctl/model.hpp"
#include "swctl/rankcore.hpp"

namespace swctl {

/// The decision criteria disagree; the message carries a diagnostic dump.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct CheckOptions {
  std::vector<std::uint64_t> seeds = trial_seeds(kDefaultSeed, 3);
  std::uint64_t prime = kMersenne61;
  MdgLimits limits;
};

struct Bounds {
  int lower = 0;
  int upper = 0;
  /// False when the MDG was too large and upper is the reachable count.
  bool upper_from_linking = false;
  int linking_layers = 0;
  int reachable = 0;
  CactusConfiguration witness;
};

struct Verdict {
  bool structurally_controllable = false;
  int n = 0;
  int reachable_count = 0;
  int grank_concat = 0;
  std::optional<CactusConfiguration> certificate;
  RankReport oracle;
  Bounds bounds;
  int conventional_lower = 0;
};

/// Decides structural controllability by reachability plus matching, builds
/// a full-cover certificate when it holds, runs the rank oracle and the
/// bounds, and throws ConsistencyError if any of them disagree.
Verdict check(const SwitchedStructure& sys, const CheckOptions& opts = {});

/// lower = best cactus cover, upper = min(reachable, max linking of the MDG
/// with n - grank[B_1 .. B_N] layers).
Bounds dim_bounds(const SwitchedStructure& sys, const CheckOptions& opts = {});

/// Best cover using a single subsystem's edges at a time.
int conventional_cactus_lower(const SwitchedStructure& sys);

}  // namespace swctl
