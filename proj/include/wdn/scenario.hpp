#pragma once

#include <string>
#include <vector>

namespace wdn {

/// One steady-state boundary-condition snapshot s = (h^R, d).
struct Scenario {
    enum class Label { HydrantTrial, DailyUsage };

    std::string id;
    double reservoir_head = 0.0;   // h^R, m
    std::vector<double> demands;   // m^3/h, aligned with NetworkGraph::demand_nodes
    Label label = Label::DailyUsage;
    std::string timestamp;         // ISO-8601 of the containing hour, may be empty

    // hydrant-trial annotations (discharge already included in `demands`)
    std::string trial_node;
    double trial_flow_m3h = 0.0;
    std::string trial_class;  // "far" | "close" | ""

    double total_demand() const {
        double s = 0;
        for (double d : demands) s += d;
        return s;
    }
};

inline const char* label_name(Scenario::Label l) {
    return l == Scenario::Label::HydrantTrial ? "hydrant-trial" : "daily-usage";
}

/// Measured pressure heads over the sensor subset M for one scenario.
struct ReferencePressures {
    std::string scenario_id;
    std::vector<std::string> sensor_ids;  // M order
    std::vector<double> values;           // m
};

} // namespace wdn
