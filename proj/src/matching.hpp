#pragma once

#include <limits>
#include <queue>
#include <vector>

namespace swctl::detail {

// Hopcroft-Karp maximum bipartite matching. Left vertices are scanned in
// index order and adjacency lists in stored order, so the result is
// deterministic for a given input.
class HopcroftKarp {
 public:
  HopcroftKarp(int left, int right) : adj_(left), match_left_(left, -1), match_right_(right, -1), dist_(left) {}

  void add_edge(int l, int r) { adj_[l].push_back(r); }

  int solve() {
    int matched = 0;
    while (bfs()) {
      for (int l = 0; l < static_cast<int>(adj_.size()); ++l) {
        if (match_left_[l] < 0 && dfs(l)) ++matched;
      }
    }
    return matched;
  }

  int match_of_left(int l) const { return match_left_[l]; }

 private:
  static constexpr int kInf = std::numeric_limits<int>::max();

  bool bfs() {
    std::queue<int> q;
    bool found = false;
    for (int l = 0; l < static_cast<int>(adj_.size()); ++l) {
      if (match_left_[l] < 0) {
        dist_[l] = 0;
        q.push(l);
      } else {
        dist_[l] = kInf;
      }
    }
    while (!q.empty()) {
      const int l = q.front();
      q.pop();
      for (int r : adj_[l]) {
        const int next = match_right_[r];
        if (next < 0) {
          found = true;
        } else if (dist_[next] == kInf) {
          dist_[next] = dist_[l] + 1;
          q.push(next);
        }
      }
    }
    return found;
  }

  bool dfs(int l) {
    for (int r : adj_[l]) {
      const int next = match_right_[r];
      if (next < 0 || (dist_[next] == dist_[l] + 1 && dfs(next))) {
        match_left_[l] = r;
        match_right_[r] = l;
        return true;
      }
    }
    dist_[l] = kInf;
    return false;
  }

  std::vector<std::vector<int>> adj_;
  std::vector<int> match_left_;
  std::vector<int> match_right_;
  std::vector<int> dist_;
};

}  // namespace swctl::detail
