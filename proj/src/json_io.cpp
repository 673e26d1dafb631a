#include "wdn/json_io.hpp"

#include <fstream>
#include <sstream>

namespace wdn {

namespace {

void expect_format(const Json& doc, const char* format) {
    if (!doc.is_object() || doc.value("format", "") != format)
        throw DataError(std::string("document is not a ") + format + " record");
}

} // namespace

Json to_json(const NetworkGraph& g) {
    Json doc;
    doc["format"] = "wdn-network/1";
    auto& js = doc["junctions"] = Json::array();
    for (const auto& j : g.junctions)
        js.push_back({{"id", j.id}, {"elevation", j.elevation}, {"base_demand", j.base_demand}});
    auto& rs = doc["reservoirs"] = Json::array();
    for (const auto& r : g.reservoirs)
        rs.push_back({{"id", r.id}, {"elevation_head", r.elevation_head}, {"attachment", r.attachment}});
    auto& ps = doc["pipes"] = Json::array();
    for (const auto& p : g.pipes)
        ps.push_back({{"id", p.id},
                      {"from", p.from},
                      {"to", p.to},
                      {"length", p.length},
                      {"diameter", p.diameter},
                      {"roughness", p.roughness}});
    doc["sensor_nodes"] = g.sensor_nodes;
    doc["demand_nodes"] = g.demand_nodes;
    if (!g.coordinates.empty()) {
        Json coords;
        for (const auto& [id, xy] : g.coordinates) coords[id] = {xy.first, xy.second};
        doc["coordinates"] = std::move(coords);
    }
    doc["roughness_bounds"] = {g.roughness_bounds.lo, g.roughness_bounds.hi};
    return doc;
}

NetworkGraph graph_from_json(const Json& doc) {
    expect_format(doc, "wdn-network/1");
    NetworkGraph g;
    for (const auto& j : doc.at("junctions"))
        g.junctions.push_back({j.at("id"), j.at("elevation"), j.at("base_demand")});
    for (const auto& r : doc.at("reservoirs"))
        g.reservoirs.push_back({r.at("id"), r.at("elevation_head"), r.value("attachment", "")});
    for (const auto& p : doc.at("pipes"))
        g.pipes.push_back({p.at("id"), p.at("from"), p.at("to"), p.at("length"), p.at("diameter"),
                           p.at("roughness")});
    g.sensor_nodes = doc.at("sensor_nodes").get<std::vector<std::string>>();
    g.demand_nodes = doc.at("demand_nodes").get<std::vector<std::string>>();
    if (doc.contains("coordinates")) {
        for (const auto& [id, xy] : doc.at("coordinates").items())
            g.coordinates[id] = {xy.at(0), xy.at(1)};
    }
    if (doc.contains("roughness_bounds")) {
        g.roughness_bounds.lo = doc.at("roughness_bounds").at(0);
        g.roughness_bounds.hi = doc.at("roughness_bounds").at(1);
    }
    return g;
}

Json to_json(const Scenario& s) {
    Json doc;
    doc["format"] = "wdn-scenario/1";
    doc["id"] = s.id;
    doc["label"] = label_name(s.label);
    doc["reservoir_head"] = s.reservoir_head;
    doc["demands"] = s.demands;
    if (!s.timestamp.empty()) doc["timestamp"] = s.timestamp;
    if (!s.trial_node.empty()) {
        doc["trial"] = {{"node", s.trial_node},
                        {"flow_m3h", s.trial_flow_m3h},
                        {"classification", s.trial_class}};
    }
    return doc;
}

Scenario scenario_from_json(const Json& doc) {
    expect_format(doc, "wdn-scenario/1");
    Scenario s;
    s.id = doc.at("id");
    std::string label = doc.at("label");
    if (label == "hydrant-trial") s.label = Scenario::Label::HydrantTrial;
    else if (label == "daily-usage") s.label = Scenario::Label::DailyUsage;
    else throw DataError("unknown scenario label '" + label + "'");
    s.reservoir_head = doc.at("reservoir_head");
    s.demands = doc.at("demands").get<std::vector<double>>();
    s.timestamp = doc.value("timestamp", "");
    if (doc.contains("trial")) {
        s.trial_node = doc.at("trial").at("node");
        s.trial_flow_m3h = doc.at("trial").at("flow_m3h");
        s.trial_class = doc.at("trial").value("classification", "");
    }
    return s;
}

Json to_json(const ReferencePressures& r) {
    return Json{{"format", "wdn-references/1"},
                {"scenario_id", r.scenario_id},
                {"sensors", r.sensor_ids},
                {"values", r.values}};
}

ReferencePressures references_from_json(const Json& doc) {
    expect_format(doc, "wdn-references/1");
    ReferencePressures r;
    r.scenario_id = doc.at("scenario_id");
    r.sensor_ids = doc.at("sensors").get<std::vector<std::string>>();
    r.values = doc.at("values").get<std::vector<double>>();
    if (r.sensor_ids.size() != r.values.size())
        throw DataError("reference record sensor/value size mismatch");
    return r;
}

Json roughness_to_json(const NetworkGraph& graph, const RoughnessVector& roughness) {
    std::vector<std::string> ids;
    for (const auto& p : graph.pipes) ids.push_back(p.id);
    return Json{{"format", "wdn-roughness/1"}, {"pipes", ids}, {"values_mm", roughness}};
}

RoughnessVector roughness_from_json(const NetworkGraph& graph, const Json& doc) {
    expect_format(doc, "wdn-roughness/1");
    auto ids = doc.at("pipes").get<std::vector<std::string>>();
    auto values = doc.at("values_mm").get<std::vector<double>>();
    if (ids.size() != values.size()) throw DataError("roughness record pipe/value size mismatch");
    std::map<std::string, double> by_id;
    for (std::size_t i = 0; i < ids.size(); ++i) by_id[ids[i]] = values[i];
    RoughnessVector r;
    r.reserve(graph.pipes.size());
    for (const auto& p : graph.pipes) {
        auto it = by_id.find(p.id);
        if (it == by_id.end()) throw DataError("roughness record missing pipe '" + p.id + "'");
        r.push_back(it->second);
    }
    return r;
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");
    Json doc;
    try {
        in >> doc;
    } catch (const std::exception& e) {
        throw DataError("invalid JSON in '" + path + "': " + e.what());
    }
    return doc;
}

void write_json_file(const std::string& path, const Json& doc) {
    write_text_file(path, doc.dump(2) + "\n");
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path + "'");
    out << text;
    if (!out) throw DataError("write failed for '" + path + "'");
}

} // namespace wdn
