#include <doctest.h>

#include <cmath>
#include <map>

#include "wdn/hydraulics.hpp"
#include "wdn/network.hpp"
#include "wdn/rng.hpp"

using namespace wdn;

namespace {

NetworkGraph one_pipe_net(double demand_m3h = 3.6) {
    NetworkGraph g;
    g.junctions.push_back({"J1", 250.0, demand_m3h});
    g.reservoirs.push_back({"R1", 305.6, "J1"});
    g.pipes.push_back({"P1", "R1", "J1", 100.0, 0.1, 0.5});
    g.demand_nodes = {"J1"};
    g.sensor_nodes = {"J1"};
    return g;
}

Scenario scenario_for(const NetworkGraph& g, double scale = 1.0) {
    Scenario s;
    s.id = "s";
    s.reservoir_head = 305.6;
    std::map<std::string, double> base;
    for (const auto& j : g.junctions) base[j.id] = j.base_demand;
    for (const auto& q : g.demand_nodes) s.demands.push_back(base[q] * scale);
    return s;
}

// chain R1 -> J1 -> ... -> Jn with configurable demands
NetworkGraph chain_net(int n, double demand_each_m3h, double diameter = 0.1) {
    NetworkGraph g;
    g.reservoirs.push_back({"R1", 305.6, "J1"});
    std::string prev = "R1";
    for (int i = 1; i <= n; ++i) {
        std::string id = "J" + std::to_string(i);
        g.junctions.push_back({id, 250.0, demand_each_m3h});
        g.pipes.push_back({"P" + std::to_string(i), prev, id, 120.0, diameter, 0.3});
        g.demand_nodes.push_back(id);
        prev = id;
    }
    g.sensor_nodes = {g.junctions.back().id};
    return g;
}

} // namespace

TEST_CASE("headloss: zero flow, odd symmetry") {
    Pipe p{"P", "A", "B", 100.0, 0.1, 0.5};
    CHECK(headloss(0.0, p) == 0.0);
    for (double q : {1e-6, 1e-4, 0.01, 0.2}) {
        CHECK(headloss(-q, p) == -headloss(q, p));
        CHECK(headloss(q, p) > 0.0);
    }
}

TEST_CASE("headloss: hand-evaluated Swamee-Jain point") {
    // L=100 m, D=0.1 m, eps=0.5 mm, Q=0.01 m^3/s, evaluated independently
    Pipe p{"P", "A", "B", 100.0, 0.1, 0.5};
    CHECK(headloss(0.01, p) == doctest::Approx(2.5901402408697267).epsilon(1e-12));
}

TEST_CASE("headloss: laminar law is linear and roughness-free") {
    Pipe p{"P", "A", "B", 100.0, 0.1, 0.5};
    double q = 1e-6;  // Re ~ 12.7, deep laminar
    CHECK(headloss(2 * q, p) == doctest::Approx(2 * headloss(q, p)).epsilon(1e-12));
    CHECK(headloss(q, p, 5.0) == headloss(q, p, 0.05));
}

TEST_CASE("friction_factor: continuous across the blend band") {
    double rr = 0.005;
    CHECK(friction_factor(1999.999, rr) == doctest::Approx(64.0 / 2000).epsilon(1e-5));
    CHECK(friction_factor(2000.0, rr) == doctest::Approx(0.032).epsilon(1e-12));
    CHECK(friction_factor(4000.0, rr) ==
          doctest::Approx(0.25 / std::pow(std::log10(rr / 3.7 + 5.74 / std::pow(4000.0, 0.9)), 2))
              .epsilon(1e-12));
}

TEST_CASE("solve_steady: one-pipe analytic oracle") {
    auto g = one_pipe_net(3.6);  // 0.001 m^3/s
    auto s = scenario_for(g);
    auto st = solve_steady(g, s, g.roughness());
    REQUIRE(st.converged);
    double q = 3.6 * kM3hToM3s;
    double expected = 305.6 - 250.0 - headloss(q, g.pipes[0]);
    CHECK(std::abs(st.pressure_head[0] - expected) <= 1e-9);
    CHECK(std::abs(st.flow[0] - q) <= 1e-12);
}

TEST_CASE("solve_steady: hydrostatic case") {
    auto g = chain_net(5, 0.0);
    auto s = scenario_for(g);
    auto st = solve_steady(g, s, g.roughness());
    REQUIRE(st.converged);
    for (int k = 0; k < st.flow.size(); ++k) CHECK(std::abs(st.flow[k]) <= 1e-9);
    for (int j = 0; j < st.pressure_head.size(); ++j)
        CHECK(st.pressure_head[j] == doctest::Approx(305.6 - 250.0).epsilon(1e-9));
}

TEST_CASE("solve_steady: identical parallel pipes split the demand") {
    NetworkGraph g;
    g.reservoirs.push_back({"R1", 305.6, "J1"});
    g.junctions.push_back({"J1", 250.0, 0.0});
    g.junctions.push_back({"J2", 251.0, 7.2});
    g.pipes.push_back({"P0", "R1", "J1", 50.0, 0.15, 0.3});
    g.pipes.push_back({"Pa", "J1", "J2", 100.0, 0.1, 0.3});
    g.pipes.push_back({"Pb", "J1", "J2", 100.0, 0.1, 0.3});
    g.demand_nodes = {"J2"};
    g.sensor_nodes = {"J2"};
    auto s = scenario_for(g);
    auto st = solve_steady(g, s, g.roughness());
    REQUIRE(st.converged);
    double q = 7.2 * kM3hToM3s;
    CHECK(st.flow[1] == st.flow[2]);  // exact symmetry
    CHECK(st.flow[1] == doctest::Approx(q / 2).epsilon(1e-10));
}

TEST_CASE("simulate_sensors: restriction of the full solve") {
    SynthConfig cfg;
    cfg.seed = 4;
    auto g = synth_dma(cfg);
    auto s = scenario_for(g);
    auto st = solve_steady(g, s, g.roughness());
    REQUIRE(st.converged);
    auto idx = build_index(g);
    auto sens = simulate_sensors(g, s, g.roughness());
    REQUIRE(sens.size() == static_cast<Eigen::Index>(g.sensor_nodes.size()));
    for (std::size_t i = 0; i < g.sensor_nodes.size(); ++i)
        CHECK(sens[static_cast<Eigen::Index>(i)] == st.pressure_head[idx.sensor_junction[i]]);
}

TEST_CASE("simulate_sensors: zero-demand scenario is hydrostatic per sensor") {
    auto g = chain_net(4, 0.5);
    auto s = scenario_for(g, 0.0);
    auto sens = simulate_sensors(g, s, g.roughness());
    CHECK(sens[0] == doctest::Approx(305.6 - 250.0).epsilon(1e-9));
}

TEST_CASE("conservation: mass balance on 100 random synthetic networks") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        SynthConfig cfg;
        cfg.seed = seed;
        cfg.junction_count = 30 + static_cast<int>(seed % 3) * 10;
        auto g = synth_dma(cfg);
        Rng rng(seed_for(seed, "scenario"));
        auto s = scenario_for(g, rng.uniform(0.2, 1.5));
        auto st = solve_steady(g, s, g.roughness());
        CAPTURE(seed);
        REQUIRE(st.converged);

        auto idx = build_index(g);
        Eigen::VectorXd net_in = Eigen::VectorXd::Zero(idx.junction_count);
        for (std::size_t k = 0; k < g.pipes.size(); ++k) {
            if (idx.pipe_from[k] < idx.junction_count) net_in[idx.pipe_from[k]] -= st.flow[k];
            if (idx.pipe_to[k] < idx.junction_count) net_in[idx.pipe_to[k]] += st.flow[k];
        }
        for (std::size_t i = 0; i < idx.demand_junction.size(); ++i)
            net_in[idx.demand_junction[i]] -= s.demands[i] * kM3hToM3s;
        for (int j = 0; j < idx.junction_count; ++j) CHECK(std::abs(net_in[j]) <= 1e-8);
    }
}

TEST_CASE("energy: signed head losses around every cycle cancel") {
    SynthConfig cfg;
    cfg.seed = 17;
    auto g = synth_dma(cfg);
    auto s = scenario_for(g, 1.0);
    SolverConfig sc;
    auto st = solve_steady(g, s, g.roughness(), sc);
    REQUIRE(st.converged);

    // head from pressure, then per-pipe energy mismatch; any cycle sum of
    // signed losses telescopes over these mismatches
    auto idx = build_index(g);
    for (std::size_t k = 0; k < g.pipes.size(); ++k) {
        double ha = idx.pipe_from[k] < idx.junction_count
                        ? st.pressure_head[idx.pipe_from[k]] +
                              g.junctions[idx.pipe_from[k]].elevation
                        : s.reservoir_head;
        double hb = idx.pipe_to[k] < idx.junction_count
                        ? st.pressure_head[idx.pipe_to[k]] + g.junctions[idx.pipe_to[k]].elevation
                        : s.reservoir_head;
        CHECK(std::abs(headloss(st.flow[k], g.pipes[k]) - (ha - hb)) <= 10 * sc.head_tolerance);
    }
}

TEST_CASE("monotonicity: more roughness, more head loss on a loaded tree") {
    auto g = chain_net(6, 4.0);  // turbulent
    auto s = scenario_for(g);
    auto r = g.roughness();
    auto base = solve_steady(g, s, r);
    REQUIRE(base.converged);
    auto scaled = r;
    for (auto& x : scaled) x *= 3.0;
    auto more = solve_steady(g, s, scaled);
    REQUIRE(more.converged);
    // pressure at the end of the chain strictly drops
    CHECK(more.pressure_head[5] < base.pressure_head[5]);
}

TEST_CASE("determinism: identical inputs give bit-identical states") {
    SynthConfig cfg;
    cfg.seed = 23;
    auto g = synth_dma(cfg);
    auto s = scenario_for(g, 0.7);
    auto a = solve_steady(g, s, g.roughness());
    auto b = solve_steady(g, s, g.roughness());
    CHECK(a.pressure_head == b.pressure_head);
    CHECK(a.flow == b.flow);
    CHECK(a.iterations == b.iterations);
}

TEST_CASE("oversized-pipe pathology: roughness only matters under trials") {
    SynthConfig cfg;
    cfg.seed = 2;
    auto g = synth_dma(cfg);
    auto r = g.roughness();
    auto r5 = r;
    for (auto& x : r5) x = std::min(x * 5.0, g.roughness_bounds.hi);

    auto daily = scenario_for(g, 1.0);  // peak daily demand
    auto p_daily_a = simulate_sensors(g, daily, r);
    auto p_daily_b = simulate_sensors(g, daily, r5);
    double shift_daily = (p_daily_a - p_daily_b).cwiseAbs().maxCoeff();

    // far hydrant trial: +10 m^3/h at the node farthest from the reservoir
    auto idx = build_index(g);
    auto dist = path_distance_from(g, idx, g.reservoirs[0].id);
    int far = 0;
    for (int j = 1; j < idx.junction_count; ++j)
        if (dist[j] > dist[far]) far = j;
    Scenario trial = daily;
    trial.label = Scenario::Label::HydrantTrial;
    trial.trial_node = g.junctions[far].id;
    trial.trial_flow_m3h = 10.0;
    bool added = false;
    for (std::size_t i = 0; i < g.demand_nodes.size(); ++i) {
        if (g.demand_nodes[i] == trial.trial_node) {
            trial.demands[i] += 10.0;
            added = true;
        }
    }
    if (!added) {
        // trial node not in Q: model the discharge via a dedicated demand node
        g.demand_nodes.push_back(trial.trial_node);
        daily.demands.push_back(0.0);
        trial.demands.push_back(10.0);
    }
    auto p_trial_a = simulate_sensors(g, trial, r);
    auto p_trial_b = simulate_sensors(g, trial, r5);
    double shift_trial = (p_trial_a - p_trial_b).cwiseAbs().maxCoeff();

    CHECK(shift_daily < 0.05);
    CHECK(shift_trial >= 5.0 * shift_daily);
    CHECK(shift_trial > 0.01);  // the trial genuinely exposes roughness
}

TEST_CASE("solve_steady: dimension errors are typed") {
    auto g = one_pipe_net();
    auto s = scenario_for(g);
    RoughnessVector wrong{0.5, 0.5};
    CHECK_THROWS_AS(solve_steady(g, s, wrong), SolverError);
    Scenario s2 = s;
    s2.demands.push_back(1.0);
    CHECK_THROWS_AS(solve_steady(g, s2, g.roughness()), SolverError);
}

TEST_CASE("solve_steady: non-convergence is a state, not a crash") {
    auto g = chain_net(8, 5.0);
    auto s = scenario_for(g);
    SolverConfig sc;
    sc.max_iterations = 1;
    sc.head_tolerance = 1e-14;
    auto st = solve_steady(g, s, g.roughness(), sc);
    CHECK(!st.converged);
    CHECK(st.iterations == 1);
}
