#include "wdn/hydraulics.hpp"

#include <cmath>

namespace wdn {

double friction_factor(double reynolds, double rel_roughness) {
    auto swamee_jain = [&](double re) {
        double arg = rel_roughness / 3.7 + 5.74 / std::pow(re, 0.9);
        double lg = std::log10(arg);
        return 0.25 / (lg * lg);
    };
    if (reynolds <= 0) return 0.0;
    if (reynolds < 2000.0) return 64.0 / reynolds;
    if (reynolds <= 4000.0) {
        // linear blend between the laminar value at Re=2000 and Swamee-Jain
        // at Re=4000, continuous at both ends
        double f_lam = 64.0 / 2000.0;
        double f_turb = swamee_jain(4000.0);
        double t = (reynolds - 2000.0) / 2000.0;
        return f_lam + (f_turb - f_lam) * t;
    }
    return swamee_jain(reynolds);
}

namespace {

struct PipeGeom {
    double area;        // m^2
    double quad;        // L / (2 g D A^2)
    double lam_slope;   // 32 nu L / (g D^2 A)
    double re_per_q;    // Re = re_per_q * |Q|
    double rel_rough;   // eps / D
};

PipeGeom geom(const Pipe& p, double roughness_mm) {
    PipeGeom g;
    g.area = M_PI * p.diameter * p.diameter / 4.0;
    g.quad = p.length / (2.0 * kGravity * p.diameter * g.area * g.area);
    g.lam_slope = 32.0 * kKinViscosity * p.length / (kGravity * p.diameter * p.diameter * g.area);
    g.re_per_q = p.diameter / (g.area * kKinViscosity);
    g.rel_rough = roughness_mm * 1e-3 / p.diameter;
    return g;
}

double headloss_geom(double flow, const PipeGeom& g) {
    double q = std::abs(flow);
    double re = g.re_per_q * q;
    double h;
    if (re < 2000.0) {
        h = g.lam_slope * q;  // 64/Re cancels to a linear law
    } else {
        h = friction_factor(re, g.rel_rough) * g.quad * q * q;
    }
    return flow >= 0 ? h : -h;
}

// Positive linearization slope dh/dQ; the laminar slope doubles as the
// zero-flow regularization floor.
double headloss_slope(double flow, const PipeGeom& g, double flow_eps) {
    double q = std::max(std::abs(flow), flow_eps);
    double re = g.re_per_q * q;
    if (re < 2000.0) return g.lam_slope;
    double f = friction_factor(re, g.rel_rough);
    return std::max(2.0 * f * g.quad * q, g.lam_slope);
}

} // namespace

double headloss(double flow, const Pipe& pipe, double roughness_mm) {
    return headloss_geom(flow, geom(pipe, roughness_mm));
}

double headloss(double flow, const Pipe& pipe) { return headloss(flow, pipe, pipe.roughness); }

HydraulicSystem::HydraulicSystem(const NetworkGraph& graph)
    : graph_(&graph), index_(build_index(graph)) {
    const auto l = static_cast<Eigen::Index>(graph.pipes.size());
    area_.resize(l);
    quad_coeff_.resize(l);
    lam_slope_.resize(l);
    for (Eigen::Index k = 0; k < l; ++k) {
        PipeGeom g = geom(graph.pipes[k], graph.pipes[k].roughness);
        area_[k] = g.area;
        quad_coeff_[k] = g.quad;
        lam_slope_[k] = g.lam_slope;
    }
}

HydraulicState HydraulicSystem::solve(const Scenario& scenario, const RoughnessVector& roughness,
                                      const SolverConfig& config) const {
    const auto& g = *graph_;
    const int nj = index_.junction_count;
    const auto l = static_cast<Eigen::Index>(g.pipes.size());

    if (static_cast<Eigen::Index>(roughness.size()) != l)
        throw SolverError("roughness dimension " + std::to_string(roughness.size()) +
                          " != pipe count " + std::to_string(l));
    if (scenario.demands.size() != index_.demand_junction.size())
        throw SolverError("scenario demand dimension " + std::to_string(scenario.demands.size()) +
                          " != demand node count " + std::to_string(index_.demand_junction.size()));
    if (!std::isfinite(scenario.reservoir_head))
        throw SolverError("reservoir head is not finite");

    std::vector<PipeGeom> pg(l);
    for (Eigen::Index k = 0; k < l; ++k) pg[k] = geom(g.pipes[k], roughness[k]);

    Eigen::VectorXd demand = Eigen::VectorXd::Zero(nj);  // m^3/s
    for (std::size_t i = 0; i < index_.demand_junction.size(); ++i)
        demand[index_.demand_junction[i]] += scenario.demands[i] * kM3hToM3s;

    const double h_res = scenario.reservoir_head;
    auto node_head = [&](int node, const Eigen::VectorXd& head) {
        return node < nj ? head[node] : h_res;
    };

    // initial flows: 0.3 m/s in the from->to direction
    Eigen::VectorXd q(l);
    for (Eigen::Index k = 0; k < l; ++k) q[k] = 0.3 * pg[k].area;

    Eigen::VectorXd head = Eigen::VectorXd::Constant(nj, h_res);
    Eigen::SparseMatrix<double> W(nj, nj);
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
    std::vector<Eigen::Triplet<double>> trips;
    bool analyzed = false;

    HydraulicState state;
    double residual = std::numeric_limits<double>::infinity();
    double prev_residual = residual;
    double relax = 1.0;
    int it = 0;
    for (; it < config.max_iterations; ++it) {
        trips.clear();
        Eigen::VectorXd rhs = -demand;
        Eigen::VectorXd slope(l), y(l);
        for (Eigen::Index k = 0; k < l; ++k) {
            double s = headloss_slope(q[k], pg[k], config.flow_epsilon);
            double w = 1.0 / s;
            slope[k] = s;
            y[k] = q[k] - headloss_geom(q[k], pg[k]) / s;
            int a = index_.pipe_from[k], b = index_.pipe_to[k];
            // incidence: -1 at `from`, +1 at `to`
            if (a < nj) {
                rhs[a] -= y[k];
                trips.emplace_back(a, a, w);
            } else {
                // reservoir at `from` contributes w * h_res to the junction row below
            }
            if (b < nj) {
                rhs[b] += y[k];
                trips.emplace_back(b, b, w);
            }
            if (a < nj && b < nj) {
                trips.emplace_back(a, b, -w);
                trips.emplace_back(b, a, -w);
            } else if (a < nj) {
                rhs[a] += w * h_res;
            } else if (b < nj) {
                rhs[b] += w * h_res;
            }
        }
        W.setFromTriplets(trips.begin(), trips.end());
        if (!analyzed) {
            ldlt.analyzePattern(W);
            analyzed = true;
        }
        ldlt.factorize(W);
        if (ldlt.info() != Eigen::Success)
            throw SolverError("singular network system (disconnected component?)");
        head = ldlt.solve(rhs);

        Eigen::VectorXd q_new(l);
        double res = 0;
        for (Eigen::Index k = 0; k < l; ++k) {
            int a = index_.pipe_from[k], b = index_.pipe_to[k];
            double dh = node_head(a, head) - node_head(b, head);
            q_new[k] = y[k] + dh / slope[k];
        }
        if (relax < 1.0) q_new = relax * q_new + (1.0 - relax) * q;
        for (Eigen::Index k = 0; k < l; ++k) {
            int a = index_.pipe_from[k], b = index_.pipe_to[k];
            double dh = node_head(a, head) - node_head(b, head);
            res = std::max(res, std::abs(headloss_geom(q_new[k], pg[k]) - dh));
        }
        q = q_new;
        prev_residual = residual;
        residual = res;
        if (residual <= config.head_tolerance) {
            ++it;
            break;
        }
        // damp if the fixed point oscillates across flow regimes
        if (residual > prev_residual && it > 2) relax = std::max(0.5, relax * 0.8);
    }

    state.flow = q;
    state.iterations = it;
    state.residual = residual;
    state.converged = residual <= config.head_tolerance;
    state.pressure_head.resize(nj);
    for (int j = 0; j < nj; ++j) state.pressure_head[j] = head[j] - g.junctions[j].elevation;
    return state;
}

HydraulicState solve_steady(const NetworkGraph& graph, const Scenario& scenario,
                            const RoughnessVector& roughness, const SolverConfig& config) {
    return HydraulicSystem(graph).solve(scenario, roughness, config);
}

Eigen::VectorXd simulate_sensors(const NetworkGraph& graph, const Scenario& scenario,
                                 const RoughnessVector& roughness, const SolverConfig& config) {
    if (graph.sensor_nodes.empty()) throw SolverError("network declares no sensor nodes");
    HydraulicSystem sys(graph);
    HydraulicState st = sys.solve(scenario, roughness, config);
    if (!st.converged)
        throw SolverError("hydraulic solve did not converge (residual " +
                          format_double(st.residual) + " m)");
    Eigen::VectorXd out(static_cast<Eigen::Index>(sys.index().sensor_junction.size()));
    for (std::size_t i = 0; i < sys.index().sensor_junction.size(); ++i)
        out[static_cast<Eigen::Index>(i)] = st.pressure_head[sys.index().sensor_junction[i]];
    return out;
}

} // namespace wdn
