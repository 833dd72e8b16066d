#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "swctl/unigraph.hpp"

namespace swctl {

/// Out-tree of S-disjoint edges hanging from one input vertex.
struct GeneralizedStem {
  int root = 0;  // global input id
  std::vector<ColoredEdge> edges;

  /// State vertices, sorted.
  std::vector<int> states() const;
};

/// Connected set of S-disjoint edges on state vertices with exactly one cycle.
struct GeneralizedBud {
  std::vector<ColoredEdge> edges;
  std::vector<int> cycle;  // cycle vertices in edge order

  std::vector<int> states() const;
};

struct CactusConfiguration {
  std::vector<GeneralizedStem> stems;
  std::vector<GeneralizedBud> buds;
  std::vector<int> covered;  // sorted state ids

  std::size_t size() const { return covered.size(); }
};

enum class Violation {
  kInputCount,    // stem: not exactly one input; bud: any input
  kCycle,         // stem: a cycle; bud: not exactly one cycle
  kInDegree,      // a state with in-degree != 1, or |E| off by the wrong amount
  kSDisjoint,
  kReachability,  // bud vertex not input-reachable
  kDisjointness,  // configuration parts share a vertex
  kCoverage,      // covered differs from the union of the parts
};

std::string to_string(Violation v);

/// Each check returns the list of violated conditions, empty when valid.
/// Throws std::invalid_argument if an edge is not in g.
std::vector<Violation> validate_stem(const GeneralizedStem& stem, const ColoredUnionGraph& g);
std::vector<Violation> validate_bud(const GeneralizedBud& bud, const ColoredUnionGraph& g,
                                    const std::vector<bool>& reachable);
std::vector<Violation> validate_configuration(const CactusConfiguration& config, const ColoredUnionGraph& g,
                                              const std::vector<bool>& reachable);

struct Decomposition {
  CactusConfiguration config;
  std::vector<ColoredEdge> dropped;
};

/// Splits an S-disjoint set into stems (one out-tree per input root) and
/// reachable one-cycle components; everything else is dropped.
/// Throws std::invalid_argument when the set is not S-disjoint.
Decomposition decompose(const SDisjointSet& sd, const ColoredUnionGraph& g, const std::vector<bool>& reachable);

/// Largest valid configuration found by a few deterministic matching
/// strategies. A lower bound on the controllable dimension, not a maximum.
CactusConfiguration best_cactus_cover(const ColoredUnionGraph& g);

/// Unique root-to-state walk for every state of the stem, sorted by head.
std::vector<InputStateWalk> stem_walks(const GeneralizedStem& stem, const ColoredUnionGraph& g);

/// Walks input -> cycle entry -> cycle^repeats -> each bud vertex.
/// The entry walk skips vertices flagged in `avoid` (empty means none).
/// Throws std::invalid_argument when no input reaches the cycle.
std::vector<InputStateWalk> bud_walks(const GeneralizedBud& bud, const ColoredUnionGraph& g, int repeats,
                                      const std::vector<bool>& avoid = {});

/// Walks for a whole configuration, with cycle repetitions growing bud by
/// bud so later bud walks outlast every earlier walk.
std::vector<InputStateWalk> configuration_walks(const CactusConfiguration& config, const ColoredUnionGraph& g);

struct WalkingCheck {
  bool ok = true;
  std::optional<std::pair<int, int>> colliding;  // walk indices
};

inline constexpr int kDefaultWalkCap = 32;

/// True when the MDG-paths of the walks are pairwise vertex-disjoint.
/// Throws std::invalid_argument on a walk not in g, and MdgSizeError when a
/// walk is longer than max_length.
WalkingCheck verify_cactus_walking(const std::vector<InputStateWalk>& walks, const ColoredUnionGraph& g,
                                   int max_length = kDefaultWalkCap);

enum class FastPath { kDisjoint, kInconclusive };

/// Sufficient test for disjoint MDG-paths: the walks never share a vertex
/// at the same backward step, or their reversed prefixes up to the first
/// shared one carry different colors.
FastPath walks_disjoint_fast(const InputStateWalk& a, const InputStateWalk& b);

/// Stems red, buds blue, dropped edges gray.
std::string cactus_dot(const ColoredUnionGraph& g, const CactusConfiguration& config,
                       const std::vector<ColoredEdge>& dropped = {});

}  // namespace swctl
