#include "swctl/unigraph.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "matching.hpp"

namespace swctl {

ColoredUnionGraph::ColoredUnionGraph(const SwitchedStructure& sys)
    : n_(sys.n()), num_colors_(sys.num_subsystems()) {
  for (int i = 0; i < num_colors_; ++i) {
    input_offset_.push_back(static_cast<int>(inputs_.size()));
    for (int k = 0; k < sys.inputs(i); ++k) inputs_.push_back({i, k});
  }
  for (int i = 0; i < num_colors_; ++i) {
    const auto& s = sys.subsystem(i);
    // A_i(j, k) != 0 gives x_k -> x_j.
    for (const Entry& e : s.a.nonzeros()) state_edges_.push_back({i, Node::state(e.col), e.row});
    for (const Entry& e : s.b.nonzeros()) input_edges_.push_back({i, Node::input(input_id(i, e.col)), e.row});
  }
  index_edges();
}

void ColoredUnionGraph::index_edges() {
  std::sort(state_edges_.begin(), state_edges_.end());
  std::sort(input_edges_.begin(), input_edges_.end());
  state_out_.assign(n_, {});
  input_out_.assign(inputs_.size(), {});
  for (const auto& e : state_edges_) state_out_[e.tail.id].push_back(e);
  for (const auto& e : input_edges_) input_out_[e.tail.id].push_back(e);
}

std::vector<ColoredEdge> ColoredUnionGraph::edges() const {
  std::vector<ColoredEdge> all = state_edges_;
  all.insert(all.end(), input_edges_.begin(), input_edges_.end());
  std::sort(all.begin(), all.end());
  return all;
}

bool ColoredUnionGraph::has_edge(const ColoredEdge& e) const {
  if (e.head < 0 || e.head >= n_) return false;
  if (e.tail.is_input()) {
    if (e.tail.id < 0 || e.tail.id >= num_inputs()) return false;
  } else if (e.tail.id < 0 || e.tail.id >= n_) {
    return false;
  }
  const auto& out = out_edges(e.tail);
  return std::binary_search(out.begin(), out.end(), e);
}

const std::vector<ColoredEdge>& ColoredUnionGraph::out_edges(Node v) const {
  return v.is_input() ? input_out_.at(v.id) : state_out_.at(v.id);
}

ColoredUnionGraph ColoredUnionGraph::restricted_to_color(int color) const {
  ColoredUnionGraph g;
  g.n_ = n_;
  g.num_colors_ = num_colors_;
  g.inputs_ = inputs_;
  g.input_offset_ = input_offset_;
  for (const auto& e : state_edges_)
    if (e.color == color) g.state_edges_.push_back(e);
  for (const auto& e : input_edges_)
    if (e.color == color) g.input_edges_.push_back(e);
  g.index_edges();
  return g;
}

bool walk_in_graph(const InputStateWalk& walk, const ColoredUnionGraph& g) {
  if (walk.states.empty() || walk.states.size() != walk.colors.size()) return false;
  if (walk.input < 0 || walk.input >= g.num_inputs()) return false;
  Node tail = Node::input(walk.input);
  for (std::size_t k = 0; k < walk.states.size(); ++k) {
    if (!g.has_edge({walk.colors[k], tail, walk.states[k]})) return false;
    tail = Node::state(walk.states[k]);
  }
  return true;
}

std::vector<bool> input_reachable_set(const ColoredUnionGraph& g) {
  std::vector<bool> seen(g.num_states(), false);
  std::vector<int> stack;
  for (const auto& e : g.input_edges()) {
    if (!seen[e.head]) {
      seen[e.head] = true;
      stack.push_back(e.head);
    }
  }
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (const auto& e : g.out_edges(Node::state(v))) {
      if (!seen[e.head]) {
        seen[e.head] = true;
        stack.push_back(e.head);
      }
    }
  }
  return seen;
}

bool is_s_disjoint(const std::vector<ColoredEdge>& edges) {
  std::set<int> heads;
  std::set<std::pair<Node, int>> tail_colors;
  for (const auto& e : edges) {
    if (!heads.insert(e.head).second) return false;
    if (!tail_colors.insert({e.tail, e.color}).second) return false;
  }
  return true;
}

SDisjointSet max_s_disjoint(const ColoredUnionGraph& g, const std::vector<bool>& allowed_heads) {
  return max_s_disjoint(g, allowed_heads, std::vector<bool>(g.num_states(), false));
}

SDisjointSet max_s_disjoint(const ColoredUnionGraph& g, const std::vector<bool>& allowed_heads,
                            const std::vector<bool>& forbidden_tails) {
  if (static_cast<int>(allowed_heads.size()) != g.num_states() ||
      static_cast<int>(forbidden_tails.size()) != g.num_states()) {
    throw std::invalid_argument("vertex mask size differs from the state count");
  }
  // Left vertex per (color, tail); edges() is already in (color, tail, head) order.
  std::vector<std::pair<int, Node>> left;
  std::vector<std::vector<int>> heads;
  for (const auto& e : g.edges()) {
    if (!allowed_heads[e.head]) continue;
    if (!e.tail.is_input() && forbidden_tails[e.tail.id]) continue;
    if (left.empty() || left.back() != std::make_pair(e.color, e.tail)) {
      left.emplace_back(e.color, e.tail);
      heads.emplace_back();
    }
    heads.back().push_back(e.head);
  }
  detail::HopcroftKarp hk(static_cast<int>(left.size()), g.num_states());
  for (std::size_t l = 0; l < left.size(); ++l)
    for (int h : heads[l]) hk.add_edge(static_cast<int>(l), h);
  hk.solve();

  SDisjointSet out;
  for (std::size_t l = 0; l < left.size(); ++l) {
    const int h = hk.match_of_left(static_cast<int>(l));
    if (h >= 0) out.edges.push_back({left[l].first, left[l].second, h});
  }
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

int grank_concat(const ColoredUnionGraph& g) {
  return static_cast<int>(max_s_disjoint(g, std::vector<bool>(g.num_states(), true)).size());
}

int grank_concat(const SwitchedStructure& sys) { return grank_concat(ColoredUnionGraph(sys)); }

int grank_inputs(const SwitchedStructure& sys) {
  const ColoredUnionGraph g(sys);
  detail::HopcroftKarp hk(g.num_inputs(), g.num_states());
  for (const auto& e : g.input_edges()) hk.add_edge(e.tail.id, e.head);
  return hk.solve();
}

std::string dot_style_for_color(int color) {
  switch (color) {
    case 0:
      return "style=solid";
    case 1:
      return "style=dashed";
    case 2:
      return "style=dotted";
    default: {
      static const char* const kCycle[] = {"solid", "dashed", "dotted"};
      return std::string("style=\"") + kCycle[color % 3] + ",bold\", label=\"" + std::to_string(color + 1) + "\"";
    }
  }
}

std::string node_label(const ColoredUnionGraph& g, Node v) {
  if (!v.is_input()) return "x" + std::to_string(v.id + 1);
  const auto& in = g.inputs().at(v.id);
  return "u" + std::to_string(in.subsystem + 1) + "_" + std::to_string(in.index + 1);
}

std::string union_graph_dot(const ColoredUnionGraph& g) {
  std::ostringstream os;
  os << "digraph G_c {\n  rankdir=LR;\n";
  for (int u = 0; u < g.num_inputs(); ++u) {
    os << "  " << node_label(g, Node::input(u)) << " [shape=box];\n";
  }
  for (int j = 0; j < g.num_states(); ++j) os << "  " << node_label(g, Node::state(j)) << " [shape=circle];\n";
  for (const auto& e : g.edges()) {
    os << "  " << node_label(g, e.tail) << " -> " << node_label(g, Node::state(e.head)) << " ["
       << dot_style_for_color(e.color) << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace swctl
