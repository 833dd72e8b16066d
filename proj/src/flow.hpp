#pragma once

#include <algorithm>
#include <limits>
#include <queue>
#include <vector>

namespace swctl::detail {

// Dinic blocking-flow max-flow specialised to unit capacities.
class UnitDinic {
 public:
  explicit UnitDinic(int nodes) : adj_(nodes), level_(nodes), next_(nodes) {}

  int add_edge(int from, int to) {
    const int id = static_cast<int>(to_.size());
    to_.push_back(to);
    cap_.push_back(1);
    adj_[from].push_back(id);
    to_.push_back(from);
    cap_.push_back(0);
    adj_[to].push_back(id + 1);
    return id;
  }

  int max_flow(int source, int sink) {
    int flow = 0;
    while (bfs(source, sink)) {
      std::fill(next_.begin(), next_.end(), 0);
      while (int pushed = dfs(source, sink)) flow += pushed;
    }
    return flow;
  }

  // Forward edge id carries one unit of flow.
  bool saturated(int edge_id) const { return cap_[edge_id] == 0; }
  int head(int edge_id) const { return to_[edge_id]; }
  const std::vector<int>& out(int node) const { return adj_[node]; }
  static bool is_forward(int edge_id) { return (edge_id & 1) == 0; }

 private:
  bool bfs(int source, int sink) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> q;
    level_[source] = 0;
    q.push(source);
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      for (int id : adj_[v]) {
        if (cap_[id] > 0 && level_[to_[id]] < 0) {
          level_[to_[id]] = level_[v] + 1;
          q.push(to_[id]);
        }
      }
    }
    return level_[sink] >= 0;
  }

  // Iterative augmenting DFS; paths in the layered MDG can be long, so no recursion.
  int dfs(int source, int sink) {
    std::vector<int> stack{source};
    std::vector<int> via;
    while (!stack.empty()) {
      const int v = stack.back();
      if (v == sink) {
        for (int id : via) {
          cap_[id] -= 1;
          cap_[id ^ 1] += 1;
        }
        return 1;
      }
      bool advanced = false;
      for (int& i = next_[v]; i < static_cast<int>(adj_[v].size()); ++i) {
        const int id = adj_[v][i];
        const int w = to_[id];
        if (cap_[id] > 0 && level_[w] == level_[v] + 1) {
          stack.push_back(w);
          via.push_back(id);
          advanced = true;
          break;
        }
      }
      if (!advanced) {
        level_[v] = -1;
        stack.pop_back();
        if (!via.empty()) {
          ++next_[stack.back()];
          via.pop_back();
        }
      }
    }
    return 0;
  }

  std::vector<std::vector<int>> adj_;
  std::vector<int> to_;
  std::vector<int> cap_;
  std::vector<int> level_;
  std::vector<int> next_;
};

}  // namespace swctl::detail
