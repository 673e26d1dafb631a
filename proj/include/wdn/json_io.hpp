#pragma once

#include <json.hpp>

#include "wdn/network.hpp"
#include "wdn/scenario.hpp"

namespace wdn {

using Json = nlohmann::json;  // std::map keys -> stable alphabetical order

Json to_json(const NetworkGraph& graph);
NetworkGraph graph_from_json(const Json& doc);

Json to_json(const Scenario& scenario);
Scenario scenario_from_json(const Json& doc);

Json to_json(const ReferencePressures& refs);
ReferencePressures references_from_json(const Json& doc);

Json roughness_to_json(const NetworkGraph& graph, const RoughnessVector& roughness);
RoughnessVector roughness_from_json(const NetworkGraph& graph, const Json& doc);

// file helpers (throw DataError on I/O failure)
Json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& doc);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

} // namespace wdn
