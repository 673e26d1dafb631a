#include "wdn/network.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <queue>
#include <set>

namespace wdn {

NetworkIndex build_index(const NetworkGraph& graph) {
    NetworkIndex idx;
    idx.junction_count = static_cast<int>(graph.junctions.size());
    idx.reservoir_count = static_cast<int>(graph.reservoirs.size());
    int next = 0;
    for (const auto& j : graph.junctions) idx.node_index.emplace(j.id, next++);
    for (const auto& r : graph.reservoirs) idx.node_index.emplace(r.id, next++);

    idx.pipe_from.reserve(graph.pipes.size());
    idx.pipe_to.reserve(graph.pipes.size());
    idx.adjacency.assign(next, {});
    for (std::size_t p = 0; p < graph.pipes.size(); ++p) {
        auto itf = idx.node_index.find(graph.pipes[p].from);
        auto itt = idx.node_index.find(graph.pipes[p].to);
        if (itf == idx.node_index.end() || itt == idx.node_index.end())
            throw DataError("pipe '" + graph.pipes[p].id + "' references a missing node");
        idx.pipe_from.push_back(itf->second);
        idx.pipe_to.push_back(itt->second);
        idx.adjacency[itf->second].emplace_back(static_cast<int>(p), itt->second);
        idx.adjacency[itt->second].emplace_back(static_cast<int>(p), itf->second);
    }
    for (const auto& id : graph.demand_nodes) {
        auto it = idx.node_index.find(id);
        if (it == idx.node_index.end() || it->second >= idx.junction_count)
            throw DataError("demand node '" + id + "' is not a junction");
        idx.demand_junction.push_back(it->second);
    }
    for (const auto& id : graph.sensor_nodes) {
        auto it = idx.node_index.find(id);
        if (it == idx.node_index.end() || it->second >= idx.junction_count)
            throw DataError("sensor node '" + id + "' is not a junction");
        idx.sensor_junction.push_back(it->second);
    }
    return idx;
}

std::vector<double> path_distance_from(const NetworkGraph& graph, const NetworkIndex& idx,
                                       const std::string& source) {
    auto it = idx.node_index.find(source);
    if (it == idx.node_index.end()) throw DataError("unknown node '" + source + "'");
    std::size_t total = idx.adjacency.size();
    std::vector<double> dist(total, std::numeric_limits<double>::infinity());
    using Entry = std::pair<double, int>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    dist[it->second] = 0;
    heap.emplace(0.0, it->second);
    while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (d > dist[u]) continue;
        for (auto [p, v] : idx.adjacency[u]) {
            double nd = d + graph.pipes[p].length;
            if (nd < dist[v]) {
                dist[v] = nd;
                heap.emplace(nd, v);
            }
        }
    }
    return dist;
}

namespace {

void check_subset(const std::vector<std::string>& subset, const char* name,
                  const std::set<std::string>& junction_ids, std::vector<Diagnostic>& out) {
    std::set<std::string> seen;
    for (const auto& id : subset) {
        if (!junction_ids.count(id))
            out.push_back({std::string(name) + "-membership", id,
                           std::string(name) + " node '" + id + "' is not a junction"});
        if (!seen.insert(id).second)
            out.push_back({std::string(name) + "-duplicate", id,
                           std::string(name) + " node '" + id + "' listed twice"});
    }
}

} // namespace

std::vector<Diagnostic> validate(const NetworkGraph& graph) {
    std::vector<Diagnostic> out;

    std::set<std::string> node_ids;
    std::set<std::string> junction_ids;
    for (const auto& j : graph.junctions) {
        if (!node_ids.insert(j.id).second)
            out.push_back({"unique-node-id", j.id, "duplicate node id '" + j.id + "'"});
        junction_ids.insert(j.id);
        if (!std::isfinite(j.elevation))
            out.push_back({"finite-elevation", j.id, "junction '" + j.id + "' elevation is not finite"});
        if (!(j.base_demand >= 0))
            out.push_back({"nonnegative-demand", j.id, "junction '" + j.id + "' base demand is negative"});
    }
    for (const auto& r : graph.reservoirs) {
        if (!node_ids.insert(r.id).second)
            out.push_back({"unique-node-id", r.id, "duplicate node id '" + r.id + "'"});
        if (!std::isfinite(r.elevation_head))
            out.push_back({"finite-elevation", r.id, "reservoir '" + r.id + "' head is not finite"});
    }
    if (graph.reservoirs.size() != 1)
        out.push_back({"single-reservoir", "",
                       "network must have exactly one reservoir, found " +
                           std::to_string(graph.reservoirs.size())});

    std::set<std::string> pipe_ids;
    bool endpoints_ok = true;
    for (const auto& p : graph.pipes) {
        if (!pipe_ids.insert(p.id).second)
            out.push_back({"unique-pipe-id", p.id, "duplicate pipe id '" + p.id + "'"});
        for (const auto* end : {&p.from, &p.to}) {
            if (!node_ids.count(*end)) {
                out.push_back({"pipe-endpoint", p.id,
                               "pipe '" + p.id + "' references missing node '" + *end + "'"});
                endpoints_ok = false;
            }
        }
        if (!(p.length > 0))
            out.push_back({"positive-length", p.id, "pipe '" + p.id + "' length must be > 0"});
        if (!(p.diameter > 0))
            out.push_back({"positive-diameter", p.id, "pipe '" + p.id + "' diameter must be > 0"});
        const auto& b = graph.roughness_bounds;
        if (!(p.roughness >= b.lo && p.roughness <= b.hi))
            out.push_back({"roughness-bounds", p.id,
                           "pipe '" + p.id + "' roughness " + format_double(p.roughness) +
                               " mm outside (" + format_double(b.lo) + ", " + format_double(b.hi) + ")"});
    }

    // connectivity: every junction reachable from some reservoir
    if (endpoints_ok && !graph.reservoirs.empty()) {
        NetworkIndex idx = build_index(graph);
        std::vector<char> reached(idx.adjacency.size(), 0);
        std::deque<int> frontier;
        for (int r = 0; r < idx.reservoir_count; ++r) {
            int node = idx.junction_count + r;
            reached[node] = 1;
            frontier.push_back(node);
        }
        while (!frontier.empty()) {
            int u = frontier.front();
            frontier.pop_front();
            for (auto [p, v] : idx.adjacency[u]) {
                (void)p;
                if (!reached[v]) {
                    reached[v] = 1;
                    frontier.push_back(v);
                }
            }
        }
        for (int j = 0; j < idx.junction_count; ++j) {
            if (!reached[j])
                out.push_back({"connectivity", graph.junctions[j].id,
                               "junction '" + graph.junctions[j].id +
                                   "' is not reachable from any reservoir"});
        }
        for (const auto& r : graph.reservoirs) {
            if (!r.attachment.empty() && !junction_ids.count(r.attachment))
                out.push_back({"reservoir-attachment", r.id,
                               "reservoir '" + r.id + "' attachment '" + r.attachment +
                                   "' is not a junction"});
        }
    }

    check_subset(graph.sensor_nodes, "sensor", junction_ids, out);
    check_subset(graph.demand_nodes, "demand", junction_ids, out);
    return out;
}

double diameter_demand_ratio(const NetworkGraph& graph) {
    if (graph.pipes.empty() || graph.junctions.empty()) return 0.0;
    double mean_d = 0;
    for (const auto& p : graph.pipes) mean_d += p.diameter;
    mean_d /= static_cast<double>(graph.pipes.size());
    double total_q = 0;
    for (const auto& j : graph.junctions) total_q += j.base_demand;
    double mean_q = total_q / static_cast<double>(graph.junctions.size());
    if (mean_q <= 0) return std::numeric_limits<double>::infinity();
    return mean_d / mean_q;
}

} // namespace wdn
