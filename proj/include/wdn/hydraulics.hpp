#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "wdn/network.hpp"
#include "wdn/scenario.hpp"

namespace wdn {

inline constexpr double kGravity = 9.80665;        // m/s^2
inline constexpr double kKinViscosity = 1.004e-6;  // m^2/s, water at 20 C
inline constexpr double kM3hToM3s = 1.0 / 3600.0;

struct SolverConfig {
    double head_tolerance = 1e-6;  // m, max energy-equation mismatch
    int max_iterations = 200;
    double flow_epsilon = 1e-8;    // m^3/s, slope regularization near zero flow
};

struct HydraulicState {
    Eigen::VectorXd pressure_head;  // m, per junction (graph order)
    Eigen::VectorXd flow;           // m^3/s, per pipe (graph order), signed from->to
    bool converged = false;
    int iterations = 0;
    double residual = 0.0;  // m, final max energy mismatch
};

/// Darcy friction factor: Swamee-Jain above Re=4000, 64/Re below 2000,
/// linear blend between the regime endpoints.
double friction_factor(double reynolds, double rel_roughness);

/// Signed Darcy-Weisbach head loss for `flow` m^3/s through `pipe`,
/// optionally overriding the pipe's roughness (mm).
double headloss(double flow, const Pipe& pipe);
double headloss(double flow, const Pipe& pipe, double roughness_mm);

/// Precomputed solve workspace for one graph; immutable and shareable.
class HydraulicSystem {
public:
    explicit HydraulicSystem(const NetworkGraph& graph);

    const NetworkGraph& graph() const { return *graph_; }
    const NetworkIndex& index() const { return index_; }

    /// Demand-driven steady state via global-gradient (Todini-Pilati)
    /// iteration. Mass balance is enforced by construction each iteration;
    /// convergence is judged on the energy equations.
    HydraulicState solve(const Scenario& scenario, const RoughnessVector& roughness,
                         const SolverConfig& config = {}) const;

private:
    const NetworkGraph* graph_;
    NetworkIndex index_;
    // per-pipe geometry constants
    Eigen::VectorXd area_;        // m^2
    Eigen::VectorXd quad_coeff_;  // L / (2 g D A^2): h = f * quad * Q|Q|
    Eigen::VectorXd lam_slope_;   // 32 nu L / (g D^2 A): laminar h = slope * Q
};

HydraulicState solve_steady(const NetworkGraph& graph, const Scenario& scenario,
                            const RoughnessVector& roughness, const SolverConfig& config = {});

/// Pressure head restricted to graph.sensor_nodes in declared order.
Eigen::VectorXd simulate_sensors(const NetworkGraph& graph, const Scenario& scenario,
                                 const RoughnessVector& roughness, const SolverConfig& config = {});

} // namespace wdn
