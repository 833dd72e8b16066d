#pragma once

#include <compare>
#include <string>
#include <vector>

#include "swctl/model.hpp"

namespace swctl {

/// Tail of a colored edge: a state vertex x_id or a global input vertex.
struct Node {
  enum class Kind { kInput, kState };
  Kind kind = Kind::kState;
  int id = 0;

  static Node state(int j) { return {Kind::kState, j}; }
  static Node input(int u) { return {Kind::kInput, u}; }
  bool is_input() const { return kind == Kind::kInput; }
  auto operator<=>(const Node&) const = default;
};

/// Edge of G_c; color is the 0-based subsystem index. Ordered by
/// (color, tail, head), which is also the matching tie-break order.
struct ColoredEdge {
  int color = 0;
  Node tail;
  int head = 0;
  auto operator<=>(const ColoredEdge&) const = default;
};

/// Input vertex u^subsystem_index.
struct InputVertex {
  int subsystem = 0;
  int index = 0;
  bool operator==(const InputVertex&) const = default;
};

/// Colored union graph of a switched structure.
class ColoredUnionGraph {
 public:
  explicit ColoredUnionGraph(const SwitchedStructure& sys);

  int num_states() const { return n_; }
  int num_colors() const { return num_colors_; }
  int num_inputs() const { return static_cast<int>(inputs_.size()); }
  const std::vector<InputVertex>& inputs() const { return inputs_; }
  /// Global id of input u^subsystem_index.
  int input_id(int subsystem, int index) const { return input_offset_[subsystem] + index; }

  const std::vector<ColoredEdge>& state_edges() const { return state_edges_; }
  const std::vector<ColoredEdge>& input_edges() const { return input_edges_; }
  /// All edges sorted by (color, tail, head).
  std::vector<ColoredEdge> edges() const;
  bool has_edge(const ColoredEdge& e) const;
  /// Out-edges of a node, sorted.
  const std::vector<ColoredEdge>& out_edges(Node v) const;

  /// Same vertex sets, only edges of one color kept.
  ColoredUnionGraph restricted_to_color(int color) const;

 private:
  ColoredUnionGraph() = default;
  void index_edges();

  int n_ = 0;
  int num_colors_ = 0;
  std::vector<InputVertex> inputs_;
  std::vector<int> input_offset_;
  std::vector<ColoredEdge> state_edges_;
  std::vector<ColoredEdge> input_edges_;
  std::vector<std::vector<ColoredEdge>> state_out_;
  std::vector<std::vector<ColoredEdge>> input_out_;
};

/// Walk in G_c from an input vertex: input -> states[0] -> states[1] -> ...
/// colors[k] is the color of the edge entering states[k], so colors[0] is the
/// input's subsystem. The walk length |p| is states.size().
struct InputStateWalk {
  int input = 0;
  std::vector<int> states;
  std::vector<int> colors;

  std::size_t length() const { return states.size(); }
  int head() const { return states.back(); }
  bool operator==(const InputStateWalk&) const = default;
};

/// True when every step is an edge of g with the recorded color.
bool walk_in_graph(const InputStateWalk& walk, const ColoredUnionGraph& g);

/// Flags of state vertices reachable from some input (colors ignored).
std::vector<bool> input_reachable_set(const ColoredUnionGraph& g);

/// Heads all distinct; edges sharing a tail carry distinct colors.
bool is_s_disjoint(const std::vector<ColoredEdge>& edges);

struct SDisjointSet {
  std::vector<ColoredEdge> edges;
  std::size_t size() const { return edges.size(); }
};

/// Maximum S-disjoint edge set with heads restricted to allowed_heads, via
/// Hopcroft-Karp on (tail, color) x head.
SDisjointSet max_s_disjoint(const ColoredUnionGraph& g, const std::vector<bool>& allowed_heads);

/// Variant that also excludes some state vertices as tails.
SDisjointSet max_s_disjoint(const ColoredUnionGraph& g, const std::vector<bool>& allowed_heads,
                            const std::vector<bool>& forbidden_tails);

/// Generic rank of [A_1 .. A_N, B_1 .. B_N].
int grank_concat(const SwitchedStructure& sys);
int grank_concat(const ColoredUnionGraph& g);

/// Generic rank of [B_1 .. B_N].
int grank_inputs(const SwitchedStructure& sys);

/// Line/label style for a color in DOT output: solid, dashed, dotted, then
/// bold/tapered variants with a numeric label.
std::string dot_style_for_color(int color);

std::string union_graph_dot(const ColoredUnionGraph& g);

/// 1-based label such as "x3" or "u2_1".
std::string node_label(const ColoredUnionGraph& g, Node v);

}  // namespace swctl
