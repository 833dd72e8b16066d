#include "swctl/checker.hpp"

#include <algorithm>
#include <sstream>

#include "swctl/unigraph.hpp"

namespace swctl {

namespace {

[[noreturn]] void fail(const SwitchedStructure& sys, const Verdict& v, const std::string& what) {
  std::ostringstream os;
  os << "internal consistency failure: " << what << "\n"
     << "  n=" << v.n << " reachable=" << v.reachable_count << " grank_concat=" << v.grank_concat
     << " oracle_dim=" << v.oracle.dim << " bounds=(" << v.bounds.lower << ", " << v.bounds.upper << ")"
     << " conventional=" << v.conventional_lower << "\n  trial dims:";
  for (const auto& t : v.oracle.trials) os << " " << t.dim << "@" << t.seed;
  os << "\n  system: " << serialize_system(sys) << "\n";
  throw ConsistencyError(os.str());
}

int count_true(const std::vector<bool>& flags) { return static_cast<int>(std::count(flags.begin(), flags.end(), true)); }

}  // namespace

Bounds dim_bounds(const SwitchedStructure& sys, const CheckOptions& opts) {
  const ColoredUnionGraph g(sys);
  Bounds b;
  b.reachable = count_true(input_reachable_set(g));
  b.witness = best_cactus_cover(g);
  b.lower = static_cast<int>(b.witness.size());
  b.upper = b.reachable;
  b.linking_layers = sys.n() - grank_inputs(sys);
  if (b.linking_layers <= opts.limits.max_layers &&
      mdg_vertex_count(sys, b.linking_layers) <= opts.limits.max_vertices) {
    const MultiLayerDynamicGraph mdg(sys, b.linking_layers, opts.limits);
    b.upper = std::min(b.upper, static_cast<int>(max_linking(mdg).size()));
    b.upper_from_linking = true;
  }
  return b;
}

int conventional_cactus_lower(const SwitchedStructure& sys) {
  const ColoredUnionGraph g(sys);
  std::size_t best = 0;
  for (int c = 0; c < g.num_colors(); ++c) best = std::max(best, best_cactus_cover(g.restricted_to_color(c)).size());
  return static_cast<int>(best);
}

Verdict check(const SwitchedStructure& sys, const CheckOptions& opts) {
  const ColoredUnionGraph g(sys);
  const std::vector<bool> reachable = input_reachable_set(g);
  Verdict v;
  v.n = sys.n();
  v.reachable_count = count_true(reachable);
  const SDisjointSet sd = max_s_disjoint(g, std::vector<bool>(sys.n(), true));
  v.grank_concat = static_cast<int>(sd.size());
  v.structurally_controllable = v.reachable_count == v.n && v.grank_concat == v.n;
  v.oracle = controllable_dim(sys, opts.seeds, opts.prime);
  v.bounds = dim_bounds(sys, opts);
  v.conventional_lower = conventional_cactus_lower(sys);

  if (v.structurally_controllable) {
    // A perfect S-disjoint set with every vertex reachable splits into stems
    // and buds with nothing left over.
    Decomposition d = decompose(sd, g, reachable);
    if (!d.dropped.empty() || static_cast<int>(d.config.size()) != v.n) fail(sys, v, "full matching left edges over");
    v.certificate = std::move(d.config);
    if (!validate_configuration(*v.certificate, g, reachable).empty()) fail(sys, v, "certificate does not validate");
    if (v.oracle.dim != v.n) fail(sys, v, "graph criterion holds but every oracle trial is rank deficient");
  } else if (v.oracle.dim == v.n) {
    fail(sys, v, "graph criterion fails but an oracle trial reached full rank");
  }
  if (!validate_configuration(v.bounds.witness, g, reachable).empty()) fail(sys, v, "lower-bound witness is invalid");
  if (v.conventional_lower > v.bounds.lower || v.bounds.lower > v.oracle.dim || v.oracle.dim > v.bounds.upper) {
    fail(sys, v, "bounds do not bracket the oracle dimension");
  }
  return v;
}

}  // namespace swctl
