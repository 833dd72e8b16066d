#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "swctl/model.hpp"
#include "swctl/unigraph.hpp"

namespace swctl {

/// Raised when a multi-layer dynamic graph would exceed its size caps.
class MdgSizeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MdgLimits {
  int max_layers = 12;
  std::uint64_t max_vertices = 2'000'000;
};

/// Vertex of the multi-layer dynamic graph.
///
/// State copies x^{kt}_{j,i}: `block` is the subsystem k, `copy` the 1-based
/// copy index t. Input copies u^{kt}_{j,l,i} add the input subsystem l and
/// input index j. Layer 0 holds the merged x^{00} vertices and u^{00}
/// inputs (block = -1, copy = 0).
struct MdgVertex {
  enum class Kind { kState, kInput };
  Kind kind = Kind::kState;
  int layer = 0;
  int block = -1;
  std::uint64_t copy = 0;
  int coord = 0;
  int input_subsystem = -1;

  bool is_input() const { return kind == Kind::kInput; }
  bool operator==(const MdgVertex&) const = default;
};

/// Directed edge with the parameter that weighs it; color is the subsystem
/// of the A or B matrix supplying the weight.
struct MdgEdge {
  int to = 0;
  int color = 0;
  ParamKey weight;
};

/// Identity of an MDG vertex without materializing the graph: the block
/// subsystems along the unique descent to layer 0 (blocks[0] is this
/// vertex's block, blocks.back() the block at layer 1).
struct MdgKey {
  MdgVertex::Kind kind = MdgVertex::Kind::kState;
  int layer = 0;
  int coord = 0;
  int input_subsystem = -1;
  std::vector<int> blocks;
  auto operator<=>(const MdgKey&) const = default;
};

class MultiLayerDynamicGraph {
 public:
  /// Throws MdgSizeError when the layer or vertex cap would be exceeded.
  MultiLayerDynamicGraph(const SwitchedStructure& sys, int layers, MdgLimits limits = {});

  int layers() const { return layers_; }
  int n() const { return n_; }
  int num_subsystems() const { return num_subsystems_; }
  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_edges() const;
  const MdgVertex& vertex(int id) const { return vertices_.at(id); }
  const std::vector<MdgEdge>& out_edges(int id) const { return out_.at(id); }

  int state_id(int layer, int block, std::uint64_t copy, int coord) const;
  int input_id(int layer, int block, std::uint64_t copy, int input_subsystem, int index) const;
  int id_of(const MdgKey& key) const;
  MdgKey key_of(int id) const;

  std::vector<int> layer0_states() const;
  std::vector<int> input_vertices() const;
  std::size_t states_in_layer(int layer) const;
  std::size_t inputs_in_layer(int layer) const;

  /// Label in the x^{kt}_{j,i} / u^{kt}_{j,li} notation, 1-based.
  std::string label(int id) const;

 private:
  std::uint64_t blocks_in_layer(int layer) const;

  int n_;
  int num_subsystems_;
  int layers_;
  std::vector<int> input_offset_;  // global input index of (l, 0)
  int total_inputs_ = 0;
  std::vector<std::size_t> state_base_;
  std::vector<std::size_t> input_base_;
  std::vector<MdgVertex> vertices_;
  std::vector<std::vector<MdgEdge>> out_;
};

/// Vertex count of the MDG with the given layers (saturates at UINT64_MAX).
std::uint64_t mdg_vertex_count(const SwitchedStructure& sys, int layers);

struct Linking {
  std::vector<std::vector<int>> paths;  // vertex ids, tail first

  std::size_t size() const { return paths.size(); }
  std::vector<int> tails() const;
  std::vector<int> heads() const;
};

/// Maximum U-X_0 linking via vertex splitting and unit-capacity Dinic.
Linking max_linking(const MultiLayerDynamicGraph& mdg);

/// True when the paths are vertex-disjoint, start in an input vertex, end in
/// layer 0 and only use MDG edges.
bool is_linking(const MultiLayerDynamicGraph& mdg, const Linking& linking);

/// Symbolic MDG-path of a walk; needs no materialized graph.
std::vector<MdgKey> mdg_path_keys(const InputStateWalk& walk, const ColoredUnionGraph& g);

/// MDG-path of a walk as vertex ids. Throws std::invalid_argument when the
/// walk is longer than the graph's layer count or leaves g.
std::vector<int> mdg_path_of_walk(const InputStateWalk& walk, const ColoredUnionGraph& g,
                                  const MultiLayerDynamicGraph& mdg);

struct DetLinkingPair {
  std::uint64_t determinant = 0;
  std::uint64_t linking_sum = 0;
};

/// det W(I, J) from explicit matrix products, and the signed sum of w(L)
/// over all J-I linkings of size |I|, both over the realization's field.
/// Rows and columns follow the order of `rows` and `cols`. Small instances
/// only (n <= 4, N <= 2, layers <= 3).
DetLinkingPair det_vs_linkings(const SwitchedStructure& sys, const Realization& realization,
                               const std::vector<int>& rows, const std::vector<int>& cols, int layers);

/// Column of W_layers that belongs to an input vertex of the MDG.
std::vector<std::uint64_t> w_column(const SwitchedStructure& sys, const Realization& realization,
                                    const MultiLayerDynamicGraph& mdg, int input_vertex);

/// DOT rendering with one rank per layer; linking edges are highlighted.
std::string mdg_dot(const MultiLayerDynamicGraph& mdg, const Linking* linking = nullptr);

}  // namespace swctl
