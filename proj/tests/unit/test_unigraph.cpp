#include <random>

#include "../fixtures.hpp"
#include "../oracles.hpp"
#include "doctest.h"
#include "swctl/field.hpp"
#include "swctl/rankcore.hpp"
#include "swctl/unigraph.hpp"

using namespace swctl;

namespace {

ColoredEdge state_edge(int color, int tail, int head) { return {color - 1, Node::state(tail - 1), head - 1}; }
ColoredEdge input_edge(int color, int input, int head) { return {color - 1, Node::input(input), head - 1}; }

std::vector<bool> all(int n) { return std::vector<bool>(n, true); }

}  // namespace

TEST_CASE("union graph of the switching-only system") {
  const ColoredUnionGraph g(fixture::switching_only());
  CHECK(g.num_states() == 3);
  CHECK(g.num_inputs() == 2);  // u^1_1 and the zero column u^2_1
  CHECK(g.state_edges() == std::vector<ColoredEdge>{state_edge(1, 1, 2), state_edge(2, 1, 3)});
  CHECK(g.input_edges() == std::vector<ColoredEdge>{input_edge(1, 0, 1)});
  CHECK(node_label(g, Node::input(1)) == "u2_1");
}

TEST_CASE("union graph of the boost converter") {
  const ColoredUnionGraph g(fixture::boost());
  const std::vector<ColoredEdge> expected{state_edge(1, 1, 1), state_edge(1, 1, 2), state_edge(1, 2, 1),
                                          state_edge(2, 1, 1)};
  CHECK(g.state_edges() == expected);
  CHECK(g.input_edges() == std::vector<ColoredEdge>{input_edge(1, 0, 2), input_edge(2, 1, 2)});
  for (const auto& e : g.input_edges()) CHECK(e.color == g.inputs()[e.tail.id].subsystem);
}

TEST_CASE("all-zero patterns give isolated states") {
  const ColoredUnionGraph g(fixture::empty(4));
  CHECK(g.num_states() == 4);
  CHECK(g.edges().empty());
  CHECK(input_reachable_set(g) == std::vector<bool>(4, false));
  CHECK(max_s_disjoint(g, all(4)).size() == 0);
  CHECK(grank_concat(fixture::empty(4)) == 0);
}

TEST_CASE("reachability") {
  CHECK(input_reachable_set(ColoredUnionGraph(fixture::switching_only())) == all(3));
  CHECK(input_reachable_set(ColoredUnionGraph(fixture::boost())) == all(2));
  CHECK(input_reachable_set(ColoredUnionGraph(fixture::partial())) == all(10));
}

TEST_CASE("grank of the worked systems") {
  CHECK(grank_concat(fixture::switching_only()) == 3);
  CHECK(grank_concat(fixture::boost()) == 2);
  CHECK(grank_concat(fixture::partial()) == 9);
  const ColoredUnionGraph g(fixture::switching_only());
  const auto sd = max_s_disjoint(g, all(3));
  CHECK(sd.edges == std::vector<ColoredEdge>{input_edge(1, 0, 1), state_edge(1, 1, 2), state_edge(2, 1, 3)});
}

TEST_CASE("S-disjoint definition") {
  CHECK(is_s_disjoint({state_edge(1, 1, 2), state_edge(2, 1, 3)}));
  CHECK_FALSE(is_s_disjoint({state_edge(1, 1, 2), state_edge(1, 1, 3)}));
  CHECK_FALSE(is_s_disjoint({state_edge(1, 1, 2), state_edge(2, 3, 2)}));
}

TEST_CASE("matching results are S-disjoint, respect allowed heads and are monotone") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 200; ++k) {
    const auto sys = oracle::random_system(rng);
    const ColoredUnionGraph g(sys);
    const auto full = max_s_disjoint(g, all(sys.n()));
    CHECK(is_s_disjoint(full.edges));
    std::vector<bool> allowed(sys.n());
    for (int j = 0; j < sys.n(); ++j) allowed[j] = rng() % 2 == 0;
    const auto part = max_s_disjoint(g, allowed);
    CHECK(is_s_disjoint(part.edges));
    CHECK(part.size() <= full.size());
    for (const auto& e : part.edges) {
      CHECK(allowed[e.head]);
      CHECK(g.has_edge(e));
    }
  }
}

TEST_CASE("grank matches exhaustive S-disjoint search") {
  std::mt19937_64 rng(8);
  oracle::RandomSpec spec;
  spec.max_n = 4;
  spec.max_subsystems = 2;
  spec.max_nonzeros = 6;
  spec.density_hi = 0.6;
  for (int k = 0; k < 200; ++k) {
    const auto sys = oracle::random_system(rng, spec);
    CHECK(grank_concat(sys) == oracle::s_disjoint_max_exhaustive(ColoredUnionGraph(sys)));
  }
}

TEST_CASE("grank equals the field rank of the concatenated matrix") {
  std::mt19937_64 rng(12);
  const PrimeField f;
  for (int k = 0; k < 150; ++k) {
    const auto sys = oracle::random_system(rng);
    std::size_t best = 0;
    for (std::uint64_t seed : trial_seeds(rng(), 3)) {
      const auto d = dense_ff(sys, sample_realization(sys, FieldTag::finite(), seed));
      std::vector<FieldMatrix> blocks = d.a;
      blocks.insert(blocks.end(), d.b.begin(), d.b.end());
      best = std::max(best, rank_ff(hconcat(blocks), f));
    }
    CHECK(static_cast<int>(best) == grank_concat(sys));
  }
}

TEST_CASE("input rank counts only input edges") {
  CHECK(grank_inputs(fixture::switching_only()) == 1);
  CHECK(grank_inputs(fixture::boost()) == 1);
  CHECK(grank_inputs(fixture::partial()) == 1);
}

TEST_CASE("color restriction keeps vertices and one color") {
  const ColoredUnionGraph g(fixture::partial());
  const auto g2 = g.restricted_to_color(1);
  CHECK(g2.num_states() == 10);
  CHECK(g2.num_inputs() == 1);
  CHECK(g2.input_edges().empty());
  CHECK(g2.state_edges().size() == 3);
}

TEST_CASE("dot export styles colors and boxes inputs") {
  const auto dot = union_graph_dot(ColoredUnionGraph(fixture::switching_only()));
  CHECK(dot.find("u1_1 [shape=box]") != std::string::npos);
  CHECK(dot.find("x1 -> x2 [style=solid]") != std::string::npos);
  CHECK(dot.find("x1 -> x3 [style=dashed]") != std::string::npos);
  CHECK(dot_style_for_color(2) == "style=dotted");
  CHECK(dot_style_for_color(3).find("label=\"4\"") != std::string::npos);
}

TEST_CASE("walk validity") {
  const ColoredUnionGraph g(fixture::switching_only());
  CHECK(walk_in_graph({0, {0, 2}, {0, 1}}, g));
  CHECK_FALSE(walk_in_graph({0, {0, 2}, {0, 0}}, g));
  CHECK_FALSE(walk_in_graph({0, {}, {}}, g));
  CHECK_FALSE(walk_in_graph({1, {0}, {1}}, g));
}
