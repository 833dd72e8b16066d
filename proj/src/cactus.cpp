#include "swctl/cactus.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "swctl/mdg.hpp"

namespace swctl {

namespace {

struct DisjointSets {
  explicit DisjointSets(int size) : parent(size) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
  std::vector<int> parent;
};

void require_in_graph(const std::vector<ColoredEdge>& edges, const ColoredUnionGraph& g) {
  for (const auto& e : edges) {
    if (!g.has_edge(e)) {
      throw std::invalid_argument("edge " + node_label(g, e.tail) + " -> x" + std::to_string(e.head + 1) +
                                  " (color " + std::to_string(e.color + 1) + ") is not in the graph");
    }
  }
}

// States get ids 0..n-1, inputs n..n+m-1.
int vertex_index(const ColoredUnionGraph& g, Node v) { return v.is_input() ? g.num_states() + v.id : v.id; }

// |E| - |V| + components over the undirected shadow of the edges.
int cyclomatic_number(const std::vector<ColoredEdge>& edges, const ColoredUnionGraph& g) {
  DisjointSets sets(g.num_states() + g.num_inputs());
  std::set<int> vertices;
  int merges = 0;
  for (const auto& e : edges) {
    const int t = vertex_index(g, e.tail);
    vertices.insert(t);
    vertices.insert(e.head);
    if (sets.unite(t, e.head)) ++merges;
  }
  const int components = static_cast<int>(vertices.size()) - merges;
  return static_cast<int>(edges.size()) - static_cast<int>(vertices.size()) + components;
}

std::set<int> state_set(const std::vector<ColoredEdge>& edges) {
  std::set<int> out;
  for (const auto& e : edges) {
    out.insert(e.head);
    if (!e.tail.is_input()) out.insert(e.tail.id);
  }
  return out;
}

bool unit_in_degree(const std::vector<ColoredEdge>& edges, const std::set<int>& states) {
  std::map<int, int> indeg;
  for (const auto& e : edges) ++indeg[e.head];
  return std::all_of(states.begin(), states.end(), [&](int v) {
    auto it = indeg.find(v);
    return it != indeg.end() && it->second == 1;
  });
}

void add_unique(std::vector<Violation>& out, Violation v) {
  if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
}

}  // namespace

std::vector<int> GeneralizedStem::states() const {
  const auto s = state_set(edges);
  return {s.begin(), s.end()};
}

std::vector<int> GeneralizedBud::states() const {
  const auto s = state_set(edges);
  return {s.begin(), s.end()};
}

std::string to_string(Violation v) {
  switch (v) {
    case Violation::kInputCount:
      return "input-count";
    case Violation::kCycle:
      return "cycle-count";
    case Violation::kInDegree:
      return "in-degree";
    case Violation::kSDisjoint:
      return "s-disjointness";
    case Violation::kReachability:
      return "input-reachability";
    case Violation::kDisjointness:
      return "vertex-disjointness";
    case Violation::kCoverage:
      return "coverage";
  }
  return "unknown";
}

std::vector<Violation> validate_stem(const GeneralizedStem& stem, const ColoredUnionGraph& g) {
  require_in_graph(stem.edges, g);
  std::vector<Violation> out;
  std::set<int> inputs;
  for (const auto& e : stem.edges)
    if (e.tail.is_input()) inputs.insert(e.tail.id);
  if (inputs.size() > 1 || (inputs.size() == 1 && *inputs.begin() != stem.root) ||
      (inputs.empty() && !stem.edges.empty())) {
    add_unique(out, Violation::kInputCount);
  }
  if (cyclomatic_number(stem.edges, g) != 0) add_unique(out, Violation::kCycle);
  const auto states = state_set(stem.edges);
  if (!unit_in_degree(stem.edges, states) || stem.edges.size() != states.size()) add_unique(out, Violation::kInDegree);
  if (!is_s_disjoint(stem.edges)) add_unique(out, Violation::kSDisjoint);
  return out;
}

std::vector<Violation> validate_bud(const GeneralizedBud& bud, const ColoredUnionGraph& g,
                                    const std::vector<bool>& reachable) {
  require_in_graph(bud.edges, g);
  std::vector<Violation> out;
  if (std::any_of(bud.edges.begin(), bud.edges.end(), [](const ColoredEdge& e) { return e.tail.is_input(); })) {
    add_unique(out, Violation::kInputCount);
  }
  if (bud.edges.empty() || cyclomatic_number(bud.edges, g) != 1) add_unique(out, Violation::kCycle);
  if (!bud.cycle.empty()) {
    // The recorded cycle must follow bud edges.
    const std::size_t r = bud.cycle.size();
    for (std::size_t k = 0; k < r; ++k) {
      const int from = bud.cycle[k];
      const int to = bud.cycle[(k + 1) % r];
      if (std::none_of(bud.edges.begin(), bud.edges.end(), [&](const ColoredEdge& e) {
            return !e.tail.is_input() && e.tail.id == from && e.head == to;
          })) {
        add_unique(out, Violation::kCycle);
      }
    }
  }
  const auto states = state_set(bud.edges);
  if (!unit_in_degree(bud.edges, states) || bud.edges.size() != states.size()) add_unique(out, Violation::kInDegree);
  if (!is_s_disjoint(bud.edges)) add_unique(out, Violation::kSDisjoint);
  for (int v : states) {
    if (v >= static_cast<int>(reachable.size()) || !reachable[v]) add_unique(out, Violation::kReachability);
  }
  return out;
}

std::vector<Violation> validate_configuration(const CactusConfiguration& config, const ColoredUnionGraph& g,
                                              const std::vector<bool>& reachable) {
  std::vector<Violation> out;
  std::set<int> seen_states;
  std::set<int> seen_roots;
  auto claim = [&](const std::vector<int>& states) {
    for (int v : states)
      if (!seen_states.insert(v).second) add_unique(out, Violation::kDisjointness);
  };
  for (const auto& stem : config.stems) {
    for (Violation v : validate_stem(stem, g)) add_unique(out, v);
    if (!seen_roots.insert(stem.root).second) add_unique(out, Violation::kDisjointness);
    claim(stem.states());
  }
  for (const auto& bud : config.buds) {
    for (Violation v : validate_bud(bud, g, reachable)) add_unique(out, v);
    claim(bud.states());
  }
  if (std::vector<int>(seen_states.begin(), seen_states.end()) != config.covered) add_unique(out, Violation::kCoverage);
  return out;
}

Decomposition decompose(const SDisjointSet& sd, const ColoredUnionGraph& g, const std::vector<bool>& reachable) {
  if (!is_s_disjoint(sd.edges)) throw std::invalid_argument("edge set is not S-disjoint");
  require_in_graph(sd.edges, g);
  const int n = g.num_states();

  std::vector<int> parent(n, -1);  // index into edges of the edge entering a state
  std::vector<ColoredEdge> edges = sd.edges;
  std::sort(edges.begin(), edges.end());
  std::vector<std::vector<int>> children_of_state(n);
  std::map<int, std::vector<int>> children_of_input;
  for (int k = 0; k < static_cast<int>(edges.size()); ++k) {
    parent[edges[k].head] = k;
    if (edges[k].tail.is_input()) {
      children_of_input[edges[k].tail.id].push_back(k);
    } else {
      children_of_state[edges[k].tail.id].push_back(k);
    }
  }

  Decomposition out;
  std::vector<bool> used(edges.size(), false);
  std::set<int> covered;

  // Everything below an input root is a tree: a state has one parent, so a
  // cycle can never be entered from outside.
  for (const auto& [input, first] : children_of_input) {
    GeneralizedStem stem{input, {}};
    std::deque<int> queue(first.begin(), first.end());
    while (!queue.empty()) {
      const int k = queue.front();
      queue.pop_front();
      used[k] = true;
      stem.edges.push_back(edges[k]);
      covered.insert(edges[k].head);
      for (int c : children_of_state[edges[k].head]) queue.push_back(c);
    }
    std::sort(stem.edges.begin(), stem.edges.end());
    out.config.stems.push_back(std::move(stem));
  }

  DisjointSets sets(n);
  for (std::size_t k = 0; k < edges.size(); ++k)
    if (!used[k]) sets.unite(edges[k].tail.id, edges[k].head);
  std::map<int, std::vector<int>> components;  // root -> edge indices
  for (std::size_t k = 0; k < edges.size(); ++k)
    if (!used[k]) components[sets.find(edges[k].head)].push_back(static_cast<int>(k));

  for (const auto& [root, ks] : components) {
    std::set<int> vertices;
    for (int k : ks) {
      vertices.insert(edges[k].tail.id);
      vertices.insert(edges[k].head);
    }
    const bool one_cycle = ks.size() == vertices.size();
    const bool all_reachable = std::all_of(vertices.begin(), vertices.end(), [&](int v) { return reachable[v]; });
    if (!one_cycle || !all_reachable) {
      for (int k : ks) out.dropped.push_back(edges[k]);
      continue;
    }
    GeneralizedBud bud;
    for (int k : ks) bud.edges.push_back(edges[k]);
    // Walk parents from the smallest vertex until a repeat to find the cycle.
    std::vector<int> order;
    std::map<int, int> pos;
    int v = *vertices.begin();
    while (!pos.count(v)) {
      pos[v] = static_cast<int>(order.size());
      order.push_back(v);
      v = edges[parent[v]].tail.id;
    }
    std::vector<int> cycle(order.begin() + pos[v], order.end());
    std::reverse(cycle.begin(), cycle.end());
    std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
    bud.cycle = std::move(cycle);
    covered.insert(vertices.begin(), vertices.end());
    out.config.buds.push_back(std::move(bud));
  }
  std::sort(out.dropped.begin(), out.dropped.end());
  out.config.covered.assign(covered.begin(), covered.end());
  return out;
}

namespace {

// Rematch without the heads of dropped edges until nothing is dropped.
CactusConfiguration drop_heads_cover(const ColoredUnionGraph& g, const std::vector<bool>& reachable) {
  std::vector<bool> allowed = input_reachable_set(g);
  for (;;) {
    Decomposition d = decompose(max_s_disjoint(g, allowed), g, reachable);
    if (d.dropped.empty()) return std::move(d.config);
    for (const auto& e : d.dropped) allowed[e.head] = false;
  }
}

// Rematch forbidding the roots of dropped chains as tails, so their
// out-edges go to a matching that can grow from real roots instead.
CactusConfiguration forbid_tails_cover(const ColoredUnionGraph& g, const std::vector<bool>& reachable) {
  const std::vector<bool> allowed = input_reachable_set(g);
  std::vector<bool> forbidden(g.num_states(), false);
  CactusConfiguration best;
  for (;;) {
    const SDisjointSet sd = max_s_disjoint(g, allowed, forbidden);
    Decomposition d = decompose(sd, g, reachable);
    std::vector<bool> is_head(g.num_states(), false);
    for (const auto& e : sd.edges) is_head[e.head] = true;
    bool grew = false;
    for (const auto& e : d.dropped) {
      if (!e.tail.is_input() && !is_head[e.tail.id] && !forbidden[e.tail.id]) {
        forbidden[e.tail.id] = true;
        grew = true;
      }
    }
    if (d.config.size() > best.size()) best = std::move(d.config);
    if (!grew) return best;
  }
}

}  // namespace

CactusConfiguration best_cactus_cover(const ColoredUnionGraph& g) {
  const std::vector<bool> reachable = input_reachable_set(g);
  std::vector<CactusConfiguration> candidates;
  candidates.push_back(drop_heads_cover(g, reachable));
  candidates.push_back(forbid_tails_cover(g, reachable));
  if (g.num_colors() > 1) {
    for (int c = 0; c < g.num_colors(); ++c) {
      const ColoredUnionGraph single = g.restricted_to_color(c);
      candidates.push_back(drop_heads_cover(single, reachable));
      candidates.push_back(forbid_tails_cover(single, reachable));
    }
  }
  std::size_t best = 0;
  for (std::size_t k = 1; k < candidates.size(); ++k)
    if (candidates[k].size() > candidates[best].size()) best = k;
  return std::move(candidates[best]);
}

namespace {

// Path through tree edges from `from` to `to`, following parents backwards.
void append_tree_path(const std::map<int, ColoredEdge>& parent, int from, int to, InputStateWalk& walk) {
  std::vector<ColoredEdge> steps;
  for (int v = to; v != from;) {
    const ColoredEdge& e = parent.at(v);
    steps.push_back(e);
    if (e.tail.is_input()) break;
    v = e.tail.id;
  }
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    walk.states.push_back(it->head);
    walk.colors.push_back(it->color);
  }
}

}  // namespace

std::vector<InputStateWalk> stem_walks(const GeneralizedStem& stem, const ColoredUnionGraph& g) {
  require_in_graph(stem.edges, g);
  std::map<int, ColoredEdge> parent;
  for (const auto& e : stem.edges) parent[e.head] = e;
  std::vector<InputStateWalk> out;
  for (const auto& [head, e] : parent) {
    InputStateWalk walk{stem.root, {}, {}};
    append_tree_path(parent, -1, head, walk);
    out.push_back(std::move(walk));
  }
  return out;
}

namespace {

// Shortest walk from any input to a cycle vertex of the bud, never stepping on an avoided vertex.
std::optional<InputStateWalk> entry_walk(const GeneralizedBud& bud, const ColoredUnionGraph& g,
                                         const std::vector<bool>& avoid) {
  const int n = g.num_states();
  const std::set<int> on_cycle(bud.cycle.begin(), bud.cycle.end());
  const auto blocked = [&](int v) { return !avoid.empty() && avoid[v]; };
  std::vector<std::optional<ColoredEdge>> came_from(n);
  std::deque<int> queue;
  int entry = -1;
  for (const auto& e : g.input_edges()) {
    if (came_from[e.head] || blocked(e.head)) continue;
    came_from[e.head] = e;
    queue.push_back(e.head);
  }
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    if (on_cycle.count(v)) {
      entry = v;
      break;
    }
    for (const auto& e : g.out_edges(Node::state(v))) {
      if (came_from[e.head] || blocked(e.head)) continue;
      came_from[e.head] = e;
      queue.push_back(e.head);
    }
  }
  if (entry < 0) return std::nullopt;

  InputStateWalk prefix;
  std::vector<ColoredEdge> steps;
  for (int v = entry;;) {
    const ColoredEdge& e = *came_from[v];
    steps.push_back(e);
    if (e.tail.is_input()) {
      prefix.input = e.tail.id;
      break;
    }
    v = e.tail.id;
  }
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    prefix.states.push_back(it->head);
    prefix.colors.push_back(it->color);
  }
  return prefix;
}

}  // namespace

std::vector<InputStateWalk> bud_walks(const GeneralizedBud& bud, const ColoredUnionGraph& g, int repeats,
                                      const std::vector<bool>& avoid) {
  require_in_graph(bud.edges, g);
  if (bud.cycle.empty()) throw std::invalid_argument("bud has no cycle");
  const auto found = entry_walk(bud, g, avoid);
  if (!found) throw std::invalid_argument("no input reaches the bud cycle");
  const InputStateWalk& prefix = *found;
  const int entry = prefix.head();

  std::map<int, ColoredEdge> parent;
  for (const auto& e : bud.edges) parent[e.head] = e;
  std::vector<ColoredEdge> loop;
  for (int v = entry;;) {
    // Successor on the cycle is the cycle vertex whose parent is v.
    const auto it = std::find_if(bud.cycle.begin(), bud.cycle.end(), [&](int w) { return parent.at(w).tail.id == v; });
    loop.push_back(parent.at(*it));
    v = *it;
    if (v == entry) break;
  }
  parent.erase(entry);  // opening the cycle at the entry turns the bud into a tree

  std::vector<InputStateWalk> out;
  for (int target : bud.states()) {
    InputStateWalk walk = prefix;
    for (int q = 0; q < repeats; ++q) {
      for (const auto& e : loop) {
        walk.states.push_back(e.head);
        walk.colors.push_back(e.color);
      }
    }
    append_tree_path(parent, entry, target, walk);
    out.push_back(std::move(walk));
  }
  return out;
}

std::vector<InputStateWalk> configuration_walks(const CactusConfiguration& config, const ColoredUnionGraph& g) {
  std::vector<InputStateWalk> out;
  for (const auto& stem : config.stems) {
    auto walks = stem_walks(stem, g);
    out.insert(out.end(), walks.begin(), walks.end());
  }
  // A bud whose entry walk crosses another bud must come after it, otherwise its walk can
  // meet that bud's loop at the same step. Place next the bud reachable around all unplaced ones.
  const int n = g.num_states();
  std::vector<bool> pending(config.buds.size(), true);
  for (std::size_t placed = 0; placed < config.buds.size(); ++placed) {
    std::vector<bool> unplaced_states(n, false);
    for (std::size_t b = 0; b < config.buds.size(); ++b)
      if (pending[b])
        for (int v : config.buds[b].states()) unplaced_states[v] = true;
    std::size_t pick = config.buds.size();
    std::vector<bool> pick_avoid;
    std::size_t pick_len = 0;
    for (std::size_t b = 0; b < config.buds.size(); ++b) {
      if (!pending[b]) continue;
      std::vector<bool> avoid = unplaced_states;
      for (int v : config.buds[b].states()) avoid[v] = false;
      const auto w = entry_walk(config.buds[b], g, avoid);
      if (w && (pick == config.buds.size() || w->length() < pick_len)) {
        pick = b;
        pick_len = w->length();
        pick_avoid = std::move(avoid);
      }
    }
    if (pick == config.buds.size()) {
      // No clean order exists; fall back to the first pending bud with an unrestricted entry.
      pick = static_cast<std::size_t>(std::find(pending.begin(), pending.end(), true) - pending.begin());
      pick_avoid.clear();
    }
    pending[pick] = false;
    const auto& bud = config.buds[pick];
    std::size_t longest = 0;
    for (const auto& w : out) longest = std::max(longest, w.length());
    const std::size_t d = bud.edges.size();
    const int repeats = static_cast<int>(std::max(longest, 2 * d * d));
    auto walks = bud_walks(bud, g, repeats, pick_avoid);
    out.insert(out.end(), walks.begin(), walks.end());
  }
  return out;
}

WalkingCheck verify_cactus_walking(const std::vector<InputStateWalk>& walks, const ColoredUnionGraph& g,
                                   int max_length) {
  for (const auto& w : walks) {
    if (!walk_in_graph(w, g)) throw std::invalid_argument("walk uses an edge that is not in the graph");
    if (static_cast<int>(w.length()) > max_length) {
      throw MdgSizeError("walk of length " + std::to_string(w.length()) + " exceeds the cap of " +
                         std::to_string(max_length));
    }
  }
  std::map<MdgKey, int> owner;
  for (int i = 0; i < static_cast<int>(walks.size()); ++i) {
    for (auto& key : mdg_path_keys(walks[i], g)) {
      auto [it, fresh] = owner.emplace(std::move(key), i);
      if (!fresh) return {false, std::make_pair(it->second, i)};
    }
  }
  return {};
}

FastPath walks_disjoint_fast(const InputStateWalk& a, const InputStateWalk& b) {
  auto reversed = [](const InputStateWalk& w) {
    std::vector<Node> out;
    for (auto it = w.states.rbegin(); it != w.states.rend(); ++it) out.push_back(Node::state(*it));
    out.push_back(Node::input(w.input));
    return out;
  };
  const auto ra = reversed(a);
  const auto rb = reversed(b);
  const std::size_t common = std::min(ra.size(), rb.size());
  for (std::size_t q = 0; q < common; ++q) {
    if (ra[q] != rb[q]) continue;
    // Reversed edge k carries the color of the original edge entering
    // states[len-1-k].
    for (std::size_t k = 0; k < q; ++k) {
      if (a.colors[a.length() - 1 - k] != b.colors[b.length() - 1 - k]) return FastPath::kDisjoint;
    }
    return FastPath::kInconclusive;
  }
  return FastPath::kDisjoint;
}

std::string cactus_dot(const ColoredUnionGraph& g, const CactusConfiguration& config,
                       const std::vector<ColoredEdge>& dropped) {
  std::map<ColoredEdge, std::string> role;
  for (const auto& s : config.stems)
    for (const auto& e : s.edges) role[e] = "red";
  for (const auto& b : config.buds)
    for (const auto& e : b.edges) role[e] = "blue";
  for (const auto& e : dropped) role[e] = "gray";
  const std::set<int> covered(config.covered.begin(), config.covered.end());

  std::ostringstream os;
  os << "digraph cactus {\n  rankdir=LR;\n";
  for (int u = 0; u < g.num_inputs(); ++u) os << "  " << node_label(g, Node::input(u)) << " [shape=box];\n";
  for (int j = 0; j < g.num_states(); ++j) {
    os << "  " << node_label(g, Node::state(j)) << " [shape=circle" << (covered.count(j) ? ", peripheries=2" : "")
       << "];\n";
  }
  for (const auto& e : g.edges()) {
    os << "  " << node_label(g, e.tail) << " -> " << node_label(g, Node::state(e.head)) << " ["
       << dot_style_for_color(e.color);
    const auto it = role.find(e);
    if (it != role.end()) {
      os << ", color=" << it->second;
      if (it->second != "gray") os << ", penwidth=2";
    } else {
      os << ", color=lightgray";
    }
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace swctl
