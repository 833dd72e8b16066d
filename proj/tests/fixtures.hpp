#pragma once

#include "swctl/model.hpp"

namespace fixture {

using swctl::Entry;
using swctl::StructuredMatrix;
using swctl::Subsystem;
using swctl::SwitchedStructure;

// Entries below are 1-based (row, col).
inline StructuredMatrix pattern(int rows, int cols, std::initializer_list<std::pair<int, int>> one_based) {
  std::vector<Entry> nz;
  for (auto [r, c] : one_based) nz.push_back({r - 1, c - 1});
  return StructuredMatrix(rows, cols, nz);
}

inline SwitchedStructure switching_only() {
  return SwitchedStructure(3, {{pattern(3, 3, {{2, 1}}), pattern(3, 1, {{1, 1}})},
                               {pattern(3, 3, {{3, 1}}), pattern(3, 1, {})}});
}

inline SwitchedStructure boost() {
  return SwitchedStructure(2, {{pattern(2, 2, {{1, 1}, {1, 2}, {2, 1}}), pattern(2, 1, {{2, 1}})},
                               {pattern(2, 2, {{1, 1}}), pattern(2, 1, {{2, 1}})}});
}

// Ten states, one input in subsystem 1. Color 1 carries u->x1, u->x7 and
// the chain x1..x5 -> x9; color 2 carries x1->x6->x10 and x7->x8.
inline SwitchedStructure partial() {
  return SwitchedStructure(
      10, {{pattern(10, 10, {{2, 1}, {3, 2}, {4, 3}, {5, 4}, {9, 5}}), pattern(10, 1, {{1, 1}, {7, 1}})},
           {pattern(10, 10, {{6, 1}, {10, 6}, {8, 7}}), pattern(10, 0, {})}});
}

inline SwitchedStructure empty(int n = 2) { return SwitchedStructure(n, {{pattern(n, n, {}), pattern(n, 1, {})}}); }

}  // namespace fixture
