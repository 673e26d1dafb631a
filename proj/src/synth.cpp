#include <algorithm>
#include <cmath>
#include <numeric>

#include "wdn/network.hpp"
#include "wdn/rng.hpp"

namespace wdn {

namespace {

struct GridPos {
    double x, y;
};

double round_mm(double meters) { return std::round(meters * 1000.0) / 1000.0; }

} // namespace

NetworkGraph synth_dma(const SynthConfig& cfg) {
    if (cfg.junction_count < 3) throw InfeasibleConfig("junction_count must be >= 3");
    if (cfg.target_diameter_demand_ratio <= 0) throw InfeasibleConfig("ratio must be > 0");
    if (cfg.peak_inflow <= 0) throw InfeasibleConfig("peak_inflow must be > 0");
    if (cfg.active_households <= 0) throw InfeasibleConfig("active_households must be > 0");
    if (cfg.sensor_count <= 0) throw InfeasibleConfig("sensor_count must be > 0");

    const int n = cfg.junction_count;
    Rng rng(cfg.seed);

    // Looped grid core plus tree branches, one trunk from the reservoir.
    const int core = std::max(4, static_cast<int>(std::lround(n * 0.6)));
    const int used_core = std::min(core, n);
    const int cols = std::max(2, static_cast<int>(std::lround(std::sqrt(static_cast<double>(used_core)))));
    const double spacing = 60.0;

    NetworkGraph g;
    std::vector<GridPos> pos(n);
    for (int i = 0; i < used_core; ++i) {
        int r = i / cols, c = i % cols;
        pos[i] = {c * spacing + rng.uniform(-8, 8), r * spacing + rng.uniform(-8, 8)};
    }

    struct Edge {
        int a, b;
        int kind;  // 0 trunk, 1 core, 2 branch
    };
    std::vector<Edge> edges;

    // core grid neighbours
    std::vector<std::pair<int, int>> grid_pairs;
    for (int i = 0; i < used_core; ++i) {
        int r = i / cols, c = i % cols;
        if (c + 1 < cols && i + 1 < used_core) grid_pairs.push_back({i, i + 1});
        if ((r + 1) * cols + c < used_core) grid_pairs.push_back({i, (r + 1) * cols + c});
    }
    // spanning tree over grid pairs (randomized order), then keep a fraction
    // of the remaining edges to form loops
    std::vector<int> order(grid_pairs.size());
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    std::vector<int> comp(used_core);
    std::iota(comp.begin(), comp.end(), 0);
    auto find = [&](int x) {
        while (comp[x] != x) x = comp[x] = comp[comp[x]];
        return x;
    };
    std::vector<int> leftovers;
    for (int e : order) {
        auto [a, b] = grid_pairs[e];
        int ra = find(a), rb = find(b);
        if (ra != rb) {
            comp[ra] = rb;
            edges.push_back({a, b, 1});
        } else {
            leftovers.push_back(e);
        }
    }
    for (int e : leftovers) {
        if (rng.uniform() < 0.55) edges.push_back({grid_pairs[e].first, grid_pairs[e].second, 1});
    }

    // branch chains hanging off random core nodes
    int next = used_core;
    while (next < n) {
        int root = static_cast<int>(rng.below(used_core));
        int len = 1 + static_cast<int>(rng.below(3));
        double ang = rng.uniform(0, 2 * M_PI);
        int prev = root;
        for (int s = 0; s < len && next < n; ++s) {
            pos[next] = {pos[prev].x + std::cos(ang) * 42 + rng.uniform(-6, 6),
                         pos[prev].y + std::sin(ang) * 42 + rng.uniform(-6, 6)};
            edges.push_back({prev, next, 2});
            prev = next++;
        }
    }

    // junctions on gently sloped terrain (low-gradient zone)
    g.junctions.resize(n);
    for (int i = 0; i < n; ++i) {
        g.junctions[i].id = "J" + std::to_string(i + 1);
        g.junctions[i].elevation = 255.0 + 0.004 * (pos[i].x + pos[i].y) + rng.uniform(-0.4, 0.4);
    }

    // demands: households spread over a subset of junctions, rescaled so the
    // peak-scaling sum equals peak_inflow exactly
    int q_count = std::max(2, std::min(n, (n * 2) / 5));
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    rng.shuffle(all);
    std::vector<int> q_nodes(all.begin(), all.begin() + q_count);
    std::sort(q_nodes.begin(), q_nodes.end());
    for (int h = 0; h < cfg.active_households; ++h) {
        int node = q_nodes[rng.below(q_nodes.size())];
        g.junctions[node].base_demand += rng.uniform(0.1, 0.52);
    }
    double total = 0;
    for (int j : q_nodes) total += g.junctions[j].base_demand;
    double scale = cfg.peak_inflow / total;
    for (int j : q_nodes) g.junctions[j].base_demand *= scale;
    // absorb rounding residue at the largest node so the sum is exact
    int largest = q_nodes[0];
    double sum = 0;
    for (int j : q_nodes) {
        if (g.junctions[j].base_demand > g.junctions[largest].base_demand) largest = j;
        sum += g.junctions[j].base_demand;
    }
    g.junctions[largest].base_demand += cfg.peak_inflow - sum;
    for (int j : q_nodes) g.demand_nodes.push_back(g.junctions[j].id);

    // reservoir feeding the grid corner through the trunk
    Reservoir res;
    res.id = "R1";
    res.elevation_head = 305.6;
    res.attachment = g.junctions[0].id;
    g.reservoirs.push_back(res);
    GridPos res_pos{pos[0].x - 120, pos[0].y - 90};

    // diameters target the configured diameter-to-demand ratio
    double mean_demand = cfg.peak_inflow / n;
    double mean_d = cfg.target_diameter_demand_ratio * mean_demand;
    if (mean_d < 0.003 || mean_d > 2.0)
        throw InfeasibleConfig("required mean diameter " + format_double(mean_d) +
                               " m is outside the plausible range [0.003, 2.0]");

    struct Draft {
        Edge e;
        double diameter;
    };
    std::vector<Draft> drafts;
    drafts.push_back({{-1, 0, 0}, mean_d * 2.2});  // trunk
    for (const auto& e : edges)
        drafts.push_back({e, (e.kind == 1 ? mean_d * 1.15 : mean_d * 0.7) * rng.uniform(0.9, 1.1)});
    double cur_mean = 0;
    for (const auto& d : drafts) cur_mean += d.diameter;
    cur_mean /= static_cast<double>(drafts.size());
    double dscale = mean_d / cur_mean;

    auto dist2d = [&](GridPos a, GridPos b) { return std::hypot(a.x - b.x, a.y - b.y); };

    int pipe_no = 1;
    for (const auto& d : drafts) {
        Pipe p;
        p.id = "P" + std::to_string(pipe_no++);
        if (d.e.a < 0) {
            p.from = res.id;
            p.to = g.junctions[0].id;
            p.length = std::max(20.0, dist2d(res_pos, pos[0]));
        } else {
            p.from = g.junctions[d.e.a].id;
            p.to = g.junctions[d.e.b].id;
            p.length = std::max(20.0, dist2d(pos[d.e.a], pos[d.e.b]) * rng.uniform(1.0, 1.25));
        }
        p.length = std::round(p.length * 100.0) / 100.0;
        p.diameter = round_mm(d.diameter * dscale);
        // material groups: trunk steel, core cast iron, branches a PE/steel mix
        switch (d.e.kind) {
            case 0: p.roughness = 0.4; break;
            case 1: p.roughness = rng.uniform() < 0.25 ? 0.8 : 0.26; break;
            default: p.roughness = rng.uniform() < 0.3 ? 0.1 : 0.025; break;
        }
        g.pipes.push_back(p);
    }

    double realized = diameter_demand_ratio(g);
    if (std::abs(realized - cfg.target_diameter_demand_ratio) >
        0.10 * cfg.target_diameter_demand_ratio)
        throw InfeasibleConfig("realized ratio " + format_double(realized) +
                               " missed target " + format_double(cfg.target_diameter_demand_ratio));

    // sensors: farthest-point spread over path distance from the reservoir
    NetworkIndex idx = build_index(g);
    auto from_res = path_distance_from(g, idx, res.id);
    int m = std::min(cfg.sensor_count, n);
    std::vector<int> sensors;
    int first = 0;
    for (int j = 1; j < n; ++j)
        if (from_res[j] > from_res[first]) first = j;
    sensors.push_back(first);
    std::vector<double> min_dist = path_distance_from(g, idx, g.junctions[first].id);
    while (static_cast<int>(sensors.size()) < m) {
        int best = -1;
        for (int j = 0; j < n; ++j) {
            if (std::find(sensors.begin(), sensors.end(), j) != sensors.end()) continue;
            if (best < 0 || min_dist[j] > min_dist[best]) best = j;
        }
        sensors.push_back(best);
        auto d = path_distance_from(g, idx, g.junctions[best].id);
        for (int j = 0; j < n; ++j) min_dist[j] = std::min(min_dist[j], d[j]);
    }
    std::sort(sensors.begin(), sensors.end());
    for (int s : sensors) g.sensor_nodes.push_back(g.junctions[s].id);

    for (int i = 0; i < n; ++i)
        g.coordinates[g.junctions[i].id] = {std::round(pos[i].x * 100) / 100,
                                            std::round(pos[i].y * 100) / 100};
    g.coordinates[res.id] = {std::round(res_pos.x * 100) / 100, std::round(res_pos.y * 100) / 100};

    return g;
}

} // namespace wdn
