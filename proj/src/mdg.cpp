#include "swctl/mdg.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <set>
#include <sstream>

#include "flow.hpp"
#include "swctl/field.hpp"

namespace swctl {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kSaturated / a) return kSaturated;
  return a * b;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return a > kSaturated - b ? kSaturated : a + b; }

std::uint64_t ipow(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int e = 0; e < exp; ++e) r = sat_mul(r, base);
  return r;
}

}  // namespace

std::uint64_t mdg_vertex_count(const SwitchedStructure& sys, int layers) {
  const auto per_block = static_cast<std::uint64_t>(sys.n() + sys.total_inputs());
  const auto big_n = static_cast<std::uint64_t>(sys.num_subsystems());
  std::uint64_t total = per_block;  // layer 0
  for (int i = 1; i <= layers; ++i) total = sat_add(total, sat_mul(per_block, ipow(big_n, i)));
  return total;
}

MultiLayerDynamicGraph::MultiLayerDynamicGraph(const SwitchedStructure& sys, int layers, MdgLimits limits)
    : n_(sys.n()), num_subsystems_(sys.num_subsystems()), layers_(layers) {
  if (layers < 0) throw std::invalid_argument("layer count must be nonnegative");
  if (layers > limits.max_layers) {
    throw MdgSizeError("MDG with " + std::to_string(layers) + " layers exceeds the layer cap of " +
                       std::to_string(limits.max_layers) + " (layer i holds N^i copies of the state set)");
  }
  const std::uint64_t count = mdg_vertex_count(sys, layers);
  if (count > limits.max_vertices) {
    throw MdgSizeError("MDG would need " + (count == kSaturated ? std::string("more than 2^64") : std::to_string(count)) +
                       " vertices (N^l growth with N=" + std::to_string(num_subsystems_) + ", l=" +
                       std::to_string(layers) + "); cap is " + std::to_string(limits.max_vertices));
  }

  for (int l = 0; l < num_subsystems_; ++l) {
    input_offset_.push_back(total_inputs_);
    total_inputs_ += sys.inputs(l);
  }

  vertices_.reserve(count);
  for (int i = 0; i <= layers; ++i) {
    const std::uint64_t blocks = blocks_in_layer(i);
    const std::uint64_t copies = i == 0 ? 1 : blocks / num_subsystems_;
    state_base_.push_back(vertices_.size());
    for (std::uint64_t b = 0; b < blocks; ++b) {
      const int block = i == 0 ? -1 : static_cast<int>(b / copies);
      const std::uint64_t copy = i == 0 ? 0 : b % copies + 1;
      for (int j = 0; j < n_; ++j) vertices_.push_back({MdgVertex::Kind::kState, i, block, copy, j, -1});
    }
    input_base_.push_back(vertices_.size());
    for (std::uint64_t b = 0; b < blocks; ++b) {
      const int block = i == 0 ? -1 : static_cast<int>(b / copies);
      const std::uint64_t copy = i == 0 ? 0 : b % copies + 1;
      for (int l = 0; l < num_subsystems_; ++l)
        for (int j = 0; j < sys.inputs(l); ++j) vertices_.push_back({MdgVertex::Kind::kInput, i, block, copy, j, l});
    }
  }
  out_.assign(vertices_.size(), {});
  for (int i = 1; i <= layers; ++i) {
    if (states_in_layer(i) != n_ * ipow(num_subsystems_, i) ||
        inputs_in_layer(i) != ipow(num_subsystems_, i) * static_cast<std::uint64_t>(total_inputs_)) {
      throw std::logic_error("layer size law violated");
    }
  }
  if (vertices_.size() != count) throw std::logic_error("vertex count differs from the closed form");

  for (int i = 0; i <= layers; ++i) {
    const std::uint64_t blocks = blocks_in_layer(i);
    const std::uint64_t copies = i == 0 ? 1 : blocks / num_subsystems_;
    for (std::uint64_t b = 0; b < blocks; ++b) {
      const int block = i == 0 ? -1 : static_cast<int>(b / copies);
      const std::uint64_t copy = i == 0 ? 0 : b % copies + 1;
      // Input copies attach to the state copy with the same (k, t).
      for (int l = 0; l < num_subsystems_; ++l) {
        for (const Entry& e : sys.subsystem(l).b.nonzeros()) {
          out_[input_id(i, block, copy, l, e.col)].push_back(
              {state_id(i, block, copy, e.row), l, ParamKey{l, MatrixTag::kB, e.row, e.col}});
        }
      }
      if (i == 0) continue;
      // Copy t of X_k in layer i descends into copy t' of X_k' with
      // t = (k'-1) N^{i-2} + t'; layer 1 descends into the merged layer 0.
      int lower_block = -1;
      std::uint64_t lower_copy = 0;
      if (i >= 2) {
        const std::uint64_t stride = ipow(num_subsystems_, i - 2);
        lower_block = static_cast<int>((copy - 1) / stride);
        lower_copy = (copy - 1) % stride + 1;
      }
      for (const Entry& e : sys.subsystem(block).a.nonzeros()) {
        out_[state_id(i, block, copy, e.col)].push_back(
            {state_id(i - 1, lower_block, lower_copy, e.row), block, ParamKey{block, MatrixTag::kA, e.row, e.col}});
      }
    }
  }
}

std::uint64_t MultiLayerDynamicGraph::blocks_in_layer(int layer) const {
  return layer == 0 ? 1 : ipow(num_subsystems_, layer);
}

std::size_t MultiLayerDynamicGraph::num_edges() const {
  std::size_t total = 0;
  for (const auto& list : out_) total += list.size();
  return total;
}

int MultiLayerDynamicGraph::state_id(int layer, int block, std::uint64_t copy, int coord) const {
  if (layer == 0) return static_cast<int>(state_base_[0] + coord);
  const std::uint64_t copies = blocks_in_layer(layer) / num_subsystems_;
  return static_cast<int>(state_base_[layer] + (block * copies + (copy - 1)) * n_ + coord);
}

int MultiLayerDynamicGraph::input_id(int layer, int block, std::uint64_t copy, int input_subsystem, int index) const {
  const int global = input_offset_[input_subsystem] + index;
  if (layer == 0) return static_cast<int>(input_base_[0] + global);
  const std::uint64_t copies = blocks_in_layer(layer) / num_subsystems_;
  return static_cast<int>(input_base_[layer] + (block * copies + (copy - 1)) * total_inputs_ + global);
}

MdgKey MultiLayerDynamicGraph::key_of(int id) const {
  const MdgVertex& v = vertices_.at(id);
  MdgKey key{v.kind, v.layer, v.coord, v.input_subsystem, {}};
  if (v.layer == 0) return key;
  key.blocks.push_back(v.block);
  std::uint64_t rest = v.copy - 1;
  for (int j = v.layer - 1; j >= 1; --j) {
    const std::uint64_t stride = ipow(num_subsystems_, j - 1);
    key.blocks.push_back(static_cast<int>(rest / stride));
    rest %= stride;
  }
  return key;
}

int MultiLayerDynamicGraph::id_of(const MdgKey& key) const {
  if (key.layer < 0 || key.layer > layers_ || static_cast<int>(key.blocks.size()) != key.layer) {
    throw std::out_of_range("MDG key does not fit this graph");
  }
  int block = -1;
  std::uint64_t copy = 0;
  if (key.layer > 0) {
    block = key.blocks[0];
    copy = 1;
    for (int idx = 1; idx < key.layer; ++idx) copy += key.blocks[idx] * ipow(num_subsystems_, key.layer - idx - 1);
  }
  return key.kind == MdgVertex::Kind::kState ? state_id(key.layer, block, copy, key.coord)
                                             : input_id(key.layer, block, copy, key.input_subsystem, key.coord);
}

std::vector<int> MultiLayerDynamicGraph::layer0_states() const {
  std::vector<int> out(n_);
  for (int j = 0; j < n_; ++j) out[j] = static_cast<int>(state_base_[0] + j);
  return out;
}

std::vector<int> MultiLayerDynamicGraph::input_vertices() const {
  std::vector<int> out;
  for (int id = 0; id < static_cast<int>(vertices_.size()); ++id)
    if (vertices_[id].is_input()) out.push_back(id);
  return out;
}

std::size_t MultiLayerDynamicGraph::states_in_layer(int layer) const { return blocks_in_layer(layer) * n_; }

std::size_t MultiLayerDynamicGraph::inputs_in_layer(int layer) const { return blocks_in_layer(layer) * total_inputs_; }

std::string MultiLayerDynamicGraph::label(int id) const {
  const MdgVertex& v = vertices_.at(id);
  std::ostringstream os;
  os << (v.is_input() ? "u" : "x");
  if (v.layer == 0) {
    os << "^{00}";
  } else {
    os << "^{" << v.block + 1 << "," << v.copy << "}";
  }
  os << "_{" << v.coord + 1;
  if (v.is_input()) os << "," << v.input_subsystem + 1;
  os << "," << v.layer << "}";
  return os.str();
}

std::vector<int> Linking::tails() const {
  std::vector<int> out;
  for (const auto& p : paths) out.push_back(p.front());
  return out;
}

std::vector<int> Linking::heads() const {
  std::vector<int> out;
  for (const auto& p : paths) out.push_back(p.back());
  return out;
}

Linking max_linking(const MultiLayerDynamicGraph& mdg) {
  const int count = static_cast<int>(mdg.num_vertices());
  const int source = 2 * count;
  const int sink = source + 1;
  detail::UnitDinic flow(2 * count + 2);
  std::vector<int> split(count);
  for (int v = 0; v < count; ++v) split[v] = flow.add_edge(2 * v, 2 * v + 1);
  for (int v = 0; v < count; ++v)
    for (const MdgEdge& e : mdg.out_edges(v)) flow.add_edge(2 * v + 1, 2 * e.to);
  for (int v = 0; v < count; ++v)
    if (mdg.vertex(v).is_input()) flow.add_edge(source, 2 * v);
  for (int x : mdg.layer0_states()) flow.add_edge(2 * x + 1, sink);
  flow.max_flow(source, sink);

  Linking linking;
  for (int id : flow.out(source)) {
    if (!detail::UnitDinic::is_forward(id) || !flow.saturated(id)) continue;
    std::vector<int> path;
    int node = flow.head(id);  // v_in
    while (node != sink) {
      const int v = node / 2;
      path.push_back(v);
      const int out_node = 2 * v + 1;
      int next = -1;
      for (int eid : flow.out(out_node)) {
        if (detail::UnitDinic::is_forward(eid) && flow.saturated(eid)) {
          next = flow.head(eid);
          break;
        }
      }
      if (next < 0) throw std::logic_error("broken flow decomposition");
      node = next;
    }
    linking.paths.push_back(std::move(path));
  }
  std::sort(linking.paths.begin(), linking.paths.end(),
            [](const auto& a, const auto& b) { return a.back() < b.back(); });
  return linking;
}

bool is_linking(const MultiLayerDynamicGraph& mdg, const Linking& linking) {
  std::set<int> used;
  for (const auto& path : linking.paths) {
    if (path.empty() || !mdg.vertex(path.front()).is_input()) return false;
    const MdgVertex& head = mdg.vertex(path.back());
    if (head.is_input() || head.layer != 0) return false;
    for (std::size_t k = 0; k < path.size(); ++k) {
      if (!used.insert(path[k]).second) return false;
      if (k + 1 < path.size()) {
        const auto& out = mdg.out_edges(path[k]);
        if (std::none_of(out.begin(), out.end(), [&](const MdgEdge& e) { return e.to == path[k + 1]; })) return false;
      }
    }
  }
  return true;
}

std::vector<MdgKey> mdg_path_keys(const InputStateWalk& walk, const ColoredUnionGraph& g) {
  if (!walk_in_graph(walk, g)) throw std::invalid_argument("walk uses an edge that is not in G_c");
  const int k = static_cast<int>(walk.length());
  const InputVertex& in = g.inputs()[walk.input];
  std::vector<MdgKey> keys;
  keys.reserve(k + 1);
  // State s sits in layer k-1-s inside the blocks named by the colors of the
  // edges still ahead of it.
  auto blocks_from = [&](int s) { return std::vector<int>(walk.colors.begin() + s + 1, walk.colors.end()); };
  keys.push_back({MdgVertex::Kind::kInput, k - 1, in.index, in.subsystem, blocks_from(0)});
  for (int s = 0; s < k; ++s) keys.push_back({MdgVertex::Kind::kState, k - 1 - s, walk.states[s], -1, blocks_from(s)});
  return keys;
}

std::vector<int> mdg_path_of_walk(const InputStateWalk& walk, const ColoredUnionGraph& g,
                                  const MultiLayerDynamicGraph& mdg) {
  if (static_cast<int>(walk.length()) > mdg.layers()) {
    throw std::invalid_argument("walk of length " + std::to_string(walk.length()) + " is longer than the " +
                                std::to_string(mdg.layers()) + " layers of the graph");
  }
  std::vector<int> ids;
  for (const MdgKey& key : mdg_path_keys(walk, g)) ids.push_back(mdg.id_of(key));
  return ids;
}

std::vector<std::uint64_t> w_column(const SwitchedStructure& sys, const Realization& realization,
                                    const MultiLayerDynamicGraph& mdg, int input_vertex) {
  const PrimeField f(realization.field.prime);
  const DenseSystem d = dense_ff(sys, realization);
  const MdgKey key = mdg.key_of(input_vertex);
  if (key.kind != MdgVertex::Kind::kInput) throw std::invalid_argument("w_column needs an input vertex");
  std::vector<std::uint64_t> v = d.b[key.input_subsystem].column(key.coord);
  // blocks[0] is the A applied first (next to B), blocks.back() the outermost.
  for (int block : key.blocks) v = apply(d.a[block], v, f);
  return v;
}

DetLinkingPair det_vs_linkings(const SwitchedStructure& sys, const Realization& realization,
                               const std::vector<int>& rows, const std::vector<int>& cols, int layers) {
  if (sys.n() > 4 || sys.num_subsystems() > 2 || layers > 3) {
    throw std::invalid_argument("det_vs_linkings is limited to n <= 4, N <= 2, layers <= 3");
  }
  if (rows.size() != cols.size()) throw std::invalid_argument("|I| must equal |J|");
  const PrimeField f(realization.field.prime);
  const MultiLayerDynamicGraph mdg(sys, layers);
  const int k = static_cast<int>(rows.size());
  for (int r : rows) {
    if (mdg.vertex(r).is_input() || mdg.vertex(r).layer != 0) throw std::invalid_argument("I must lie in X_0");
  }
  for (int c : cols) {
    if (!mdg.vertex(c).is_input()) throw std::invalid_argument("J must lie in U");
  }

  DetLinkingPair out;
  FieldMatrix w(k, k);
  for (int c = 0; c < k; ++c) {
    const auto column = w_column(sys, realization, mdg, cols[c]);
    for (int r = 0; r < k; ++r) w(r, c) = column[mdg.vertex(rows[r]).coord];
  }
  out.determinant = determinant_ff(w, f);

  // Every path from each tail, grouped by head.
  struct Path {
    int tail_pos;
    std::vector<int> vertices;
    std::uint64_t weight;
  };
  std::vector<std::vector<Path>> by_head(k);
  std::vector<int> head_pos(mdg.num_vertices(), -1);
  for (int r = 0; r < k; ++r) head_pos[rows[r]] = r;
  for (int c = 0; c < k; ++c) {
    std::vector<int> stack{cols[c]};
    std::function<void(int, std::uint64_t)> extend = [&](int v, std::uint64_t weight) {
      if (head_pos[v] >= 0) by_head[head_pos[v]].push_back({c, stack, weight});
      for (const MdgEdge& e : mdg.out_edges(v)) {
        stack.push_back(e.to);
        extend(e.to, f.mul(weight, realization.residue(e.weight)));
        stack.pop_back();
      }
    };
    extend(cols[c], 1);
  }

  std::vector<int> perm(k, -1);
  std::vector<bool> tail_used(k, false);
  std::set<int> used_vertices;
  std::uint64_t sum = 0;
  std::function<void(int, std::uint64_t)> place = [&](int r, std::uint64_t weight) {
    if (r == k) {
      int inversions = 0;
      for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b)
          if (perm[a] > perm[b]) ++inversions;
      sum = (inversions % 2 == 0) ? f.add(sum, weight) : f.sub(sum, weight);
      return;
    }
    for (const Path& p : by_head[r]) {
      if (tail_used[p.tail_pos]) continue;
      if (std::any_of(p.vertices.begin(), p.vertices.end(), [&](int v) { return used_vertices.count(v) > 0; })) continue;
      tail_used[p.tail_pos] = true;
      perm[r] = p.tail_pos;
      used_vertices.insert(p.vertices.begin(), p.vertices.end());
      place(r + 1, f.mul(weight, p.weight));
      for (int v : p.vertices) used_vertices.erase(v);
      tail_used[p.tail_pos] = false;
    }
  };
  place(0, 1);
  out.linking_sum = sum;
  return out;
}

std::string mdg_dot(const MultiLayerDynamicGraph& mdg, const Linking* linking) {
  std::set<std::pair<int, int>> highlighted;
  if (linking != nullptr) {
    for (const auto& p : linking->paths)
      for (std::size_t k = 0; k + 1 < p.size(); ++k) highlighted.insert({p[k], p[k + 1]});
  }
  std::ostringstream os;
  os << "digraph MDG {\n  rankdir=TB;\n  newrank=true;\n";
  for (int layer = mdg.layers(); layer >= 0; --layer) {
    os << "  subgraph layer" << layer << " {\n    rank=same;\n";
    for (int id = 0; id < static_cast<int>(mdg.num_vertices()); ++id) {
      const MdgVertex& v = mdg.vertex(id);
      if (v.layer != layer) continue;
      os << "    v" << id << " [label=\"" << mdg.label(id) << "\", shape=" << (v.is_input() ? "box" : "circle")
         << "];\n";
    }
    os << "  }\n";
  }
  for (int id = 0; id < static_cast<int>(mdg.num_vertices()); ++id) {
    for (const MdgEdge& e : mdg.out_edges(id)) {
      os << "  v" << id << " -> v" << e.to << " [" << dot_style_for_color(e.color);
      if (highlighted.count({id, e.to}) > 0) os << ", color=red, penwidth=2.5";
      os << "];\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace swctl
