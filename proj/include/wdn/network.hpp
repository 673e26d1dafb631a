#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "wdn/common.hpp"

namespace wdn {

struct Junction {
    std::string id;
    double elevation = 0.0;    // m
    double base_demand = 0.0;  // m^3/h at peak scaling, >= 0
};

struct Reservoir {
    std::string id;
    double elevation_head = 0.0;  // e^R, m
    std::string attachment;       // junction the reservoir feeds
};

struct Pipe {
    std::string id;
    std::string from;
    std::string to;
    double length = 0.0;     // m
    double diameter = 0.0;   // m
    double roughness = 0.0;  // absolute roughness, mm
};

struct RoughnessBounds {
    double lo = 0.01;  // mm
    double hi = 10.0;  // mm
};

/// Per-pipe roughness in mm, aligned with NetworkGraph::pipes.
using RoughnessVector = std::vector<double>;

struct NetworkGraph {
    std::vector<Junction> junctions;
    std::vector<Reservoir> reservoirs;
    std::vector<Pipe> pipes;
    std::vector<std::string> sensor_nodes;  // M, ordered, junction ids
    std::vector<std::string> demand_nodes;  // Q, ordered, junction ids
    std::map<std::string, std::pair<double, double>> coordinates;  // optional
    RoughnessBounds roughness_bounds;

    std::size_t node_count() const { return junctions.size(); }
    std::size_t pipe_count() const { return pipes.size(); }

    RoughnessVector roughness() const {
        RoughnessVector r(pipes.size());
        for (std::size_t i = 0; i < pipes.size(); ++i) r[i] = pipes[i].roughness;
        return r;
    }
};

struct Diagnostic {
    std::string invariant;  // short key, e.g. "connectivity"
    std::string element;    // offending id, may be empty
    std::string message;
};

/// Empty iff all NetworkGraph invariants hold.
std::vector<Diagnostic> validate(const NetworkGraph& graph);

/// Node indexing shared by the solver and the calibrators. Node index space
/// is junctions first (0..n-1) then reservoirs (n..n+R-1).
struct NetworkIndex {
    std::unordered_map<std::string, int> node_index;  // junctions + reservoirs
    std::vector<int> pipe_from;                       // node indices
    std::vector<int> pipe_to;
    std::vector<int> demand_junction;                 // Q -> junction index
    std::vector<int> sensor_junction;                 // M -> junction index
    int junction_count = 0;
    int reservoir_count = 0;

    // adjacency: per node, (pipe index, neighbour node index)
    std::vector<std::vector<std::pair<int, int>>> adjacency;
};

NetworkIndex build_index(const NetworkGraph& graph);

/// Shortest path length in metres from `source` node id to every node;
/// unreachable nodes get +inf. Used for far/close trial placement.
std::vector<double> path_distance_from(const NetworkGraph& graph, const NetworkIndex& idx,
                                       const std::string& source);

struct SynthConfig {
    int junction_count = 50;
    double target_diameter_demand_ratio = 13.55;  // m per (m^3/h), mean diameter over mean nodal demand
    double peak_inflow = 0.45;                    // m^3/h, total demand at peak scaling
    int active_households = 15;
    int sensor_count = 11;
    std::uint64_t seed = 0;
};

/// Generates a connected single-reservoir DMA: looped grid core, tree
/// branches, one inflow trunk. Deterministic per seed; realized
/// diameter-to-demand ratio within 10% of target.
NetworkGraph synth_dma(const SynthConfig& config);

/// mean pipe diameter [m] / mean nodal demand [m^3/h] (demand averaged over
/// all junctions). The statistic the generator is calibrated against.
double diameter_demand_ratio(const NetworkGraph& graph);

} // namespace wdn
