#include "swctl/serialize.hpp"

namespace swctl {

using nlohmann::json;

namespace {

json field_json(const FieldTag& f) {
  if (f.is_finite()) return {{"kind", "finite"}, {"prime", f.prime}};
  return {{"kind", "real"}};
}

json state_list(const std::vector<int>& states) {
  json out = json::array();
  for (int v : states) out.push_back("x" + std::to_string(v + 1));
  return out;
}

}  // namespace

json edge_json(const ColoredUnionGraph& g, const ColoredEdge& e) {
  return {{"tail", node_label(g, e.tail)}, {"head", node_label(g, Node::state(e.head))}, {"color", e.color + 1}};
}

json to_json(const Realization& r) {
  json values = json::array();
  for (const auto& [key, value] : r.values) {
    json item = {{"subsystem", key.subsystem + 1},
                 {"matrix", key.tag == MatrixTag::kA ? "A" : "B"},
                 {"row", key.row + 1},
                 {"col", key.col + 1}};
    if (std::holds_alternative<std::uint64_t>(value)) {
      item["value"] = std::get<std::uint64_t>(value);
    } else {
      item["value"] = std::get<double>(value);
    }
    values.push_back(std::move(item));
  }
  return {{"field", field_json(r.field)}, {"seed", r.seed}, {"values", std::move(values)}};
}

json to_json(const RankReport& report) {
  json trials = json::array();
  for (const auto& t : report.trials) {
    trials.push_back({{"seed", t.seed}, {"dim", t.dim}, {"layers_used", t.layers_used}, {"rank_history", t.rank_history}});
  }
  return {{"dim", report.dim}, {"layers_used", report.layers_used}, {"field", field_json(report.field)},
          {"trials", std::move(trials)}};
}

json to_json(const ColoredUnionGraph& g, const CactusConfiguration& config) {
  json stems = json::array();
  for (const auto& s : config.stems) {
    json edges = json::array();
    for (const auto& e : s.edges) edges.push_back(edge_json(g, e));
    stems.push_back({{"root", node_label(g, Node::input(s.root))}, {"edges", std::move(edges)}});
  }
  json buds = json::array();
  for (const auto& b : config.buds) {
    json edges = json::array();
    for (const auto& e : b.edges) edges.push_back(edge_json(g, e));
    buds.push_back({{"cycle", state_list(b.cycle)}, {"edges", std::move(edges)}});
  }
  return {{"covered", state_list(config.covered)},
          {"size", config.size()},
          {"stems", std::move(stems)},
          {"buds", std::move(buds)}};
}

json certificate_json(const ColoredUnionGraph& g, const Decomposition& d) {
  json out = to_json(g, d.config);
  json dropped = json::array();
  for (const auto& e : d.dropped) dropped.push_back(edge_json(g, e));
  out["dropped"] = std::move(dropped);
  return out;
}

json to_json(const Bounds& b, const ColoredUnionGraph& g) {
  return {{"lower", b.lower},
          {"upper", b.upper},
          {"upper_from_linking", b.upper_from_linking},
          {"linking_layers", b.linking_layers},
          {"reachable", b.reachable},
          {"witness", to_json(g, b.witness)}};
}

json to_json(const Verdict& v, const ColoredUnionGraph& g) {
  json out = {{"structurally_controllable", v.structurally_controllable},
              {"n", v.n},
              {"criterion_a", {{"reachable_count", v.reachable_count}, {"grank_concat", v.grank_concat}}},
              {"oracle", to_json(v.oracle)},
              {"bounds", to_json(v.bounds, g)},
              {"conventional_lower", v.conventional_lower}};
  out["certificate"] = v.certificate ? to_json(g, *v.certificate) : json(nullptr);
  return out;
}

json to_json(const MultiLayerDynamicGraph& mdg, const Linking& linking) {
  json paths = json::array();
  for (const auto& p : linking.paths) {
    json labels = json::array();
    for (int id : p) labels.push_back(mdg.label(id));
    paths.push_back(std::move(labels));
  }
  return {{"layers", mdg.layers()},
          {"vertices", mdg.num_vertices()},
          {"edges", mdg.num_edges()},
          {"linking_size", linking.size()},
          {"paths", std::move(paths)}};
}

}  // namespace swctl
