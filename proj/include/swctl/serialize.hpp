#pragma once

#include <vector>

#include "json.hpp"
#include "swctl/cactus.hpp"
#include "swctl/checker.hpp"
#include "swctl/mdg.hpp"
#include "swctl/model.hpp"
#include "swctl/rankcore.hpp"

// JSON views of analysis results. Vertices use 1-based labels ("x3",
// "u2_1"); object keys come out sorted, so dumps are byte-stable.
namespace swctl {

nlohmann::json edge_json(const ColoredUnionGraph& g, const ColoredEdge& e);
nlohmann::json to_json(const Realization& r);
nlohmann::json to_json(const RankReport& report);
nlohmann::json to_json(const ColoredUnionGraph& g, const CactusConfiguration& config);
nlohmann::json certificate_json(const ColoredUnionGraph& g, const Decomposition& d);
nlohmann::json to_json(const Bounds& b, const ColoredUnionGraph& g);
nlohmann::json to_json(const Verdict& v, const ColoredUnionGraph& g);
nlohmann::json to_json(const MultiLayerDynamicGraph& mdg, const Linking& linking);

}  // namespace swctl
