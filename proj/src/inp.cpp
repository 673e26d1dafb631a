#include "wdn/inp.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace wdn {

namespace {

std::string upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::toupper(c); });
    return s;
}

std::vector<std::string> tokens(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string t;
    while (is >> t) out.push_back(t);
    return out;
}

// Writes `meters` as a millimetre column value whose /1000 reparse is
// bit-exact. The nearest representable needs at most a few ulp nudges.
double mm_column(double meters) {
    double mm = meters * 1000.0;
    for (int i = 0; i < 4 && mm / 1000.0 != meters; ++i)
        mm = std::nextafter(mm, mm / 1000.0 < meters ? HUGE_VAL : -HUGE_VAL);
    return mm;
}

enum class Section {
    None,
    Junctions,
    Reservoirs,
    Pipes,
    Demands,
    Coordinates,
    UnsupportedElement,  // pumps / valves / tanks
    Unknown,
};

} // namespace

InpParseResult parse_inp(const std::string& text) {
    std::istringstream is(text);
    return parse_inp(is);
}

InpParseResult parse_inp(std::istream& in) {
    InpParseResult result;
    NetworkGraph& g = result.graph;

    Section section = Section::None;
    std::string unsupported_name;
    std::string line;
    long lineno = 0;

    std::set<std::string> node_ids, pipe_ids;
    struct PendingDemand {
        std::string node;
        double value;
        long line;
    };
    std::vector<PendingDemand> demands;

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();

        // directive comments carry artifact metadata; plain comments are dropped
        auto first = line.find_first_not_of(" \t");
        if (first != std::string::npos && line.compare(first, 2, ";@") == 0) {
            auto toks = tokens(line.substr(first + 2));
            if (!toks.empty() && upper(toks[0]) == "SENSORS")
                g.sensor_nodes.insert(g.sensor_nodes.end(), toks.begin() + 1, toks.end());
            continue;
        }
        if (auto sc = line.find(';'); sc != std::string::npos) line.erase(sc);
        auto toks = tokens(line);
        if (toks.empty()) continue;

        if (toks[0].front() == '[') {
            std::string name = upper(toks[0]);
            if (name.back() != ']') throw ParseError("malformed section header", lineno);
            name = name.substr(1, name.size() - 2);
            if (name == "JUNCTIONS") section = Section::Junctions;
            else if (name == "RESERVOIRS") section = Section::Reservoirs;
            else if (name == "PIPES") section = Section::Pipes;
            else if (name == "DEMANDS") section = Section::Demands;
            else if (name == "COORDINATES") section = Section::Coordinates;
            else if (name == "PUMPS" || name == "VALVES" || name == "TANKS") {
                section = Section::UnsupportedElement;
                unsupported_name = name;
                result.warnings.push_back({lineno, "unsupported section [" + name + "]"});
            } else {
                section = Section::Unknown;
                result.warnings.push_back({lineno, "unknown section [" + name + "] skipped"});
            }
            continue;
        }

        switch (section) {
            case Section::None:
                throw ParseError("data before any section header", lineno);
            case Section::Unknown:
                break;
            case Section::UnsupportedElement:
                throw ParseError("unsupported section [" + unsupported_name +
                                     "]: this model supports junctions, reservoirs and pipes only",
                                 lineno);
            case Section::Junctions: {
                if (toks.size() < 2) throw ParseError("junction needs: id elevation [demand]", lineno);
                Junction j;
                j.id = toks[0];
                if (!node_ids.insert(j.id).second)
                    throw ParseError("duplicate node id '" + j.id + "'", lineno);
                j.elevation = parse_double(toks[1], "elevation");
                if (toks.size() >= 3) j.base_demand = parse_double(toks[2], "demand");
                g.junctions.push_back(std::move(j));
                break;
            }
            case Section::Reservoirs: {
                if (toks.size() < 2) throw ParseError("reservoir needs: id head", lineno);
                Reservoir r;
                r.id = toks[0];
                if (!node_ids.insert(r.id).second)
                    throw ParseError("duplicate node id '" + r.id + "'", lineno);
                r.elevation_head = parse_double(toks[1], "head");
                g.reservoirs.push_back(std::move(r));
                break;
            }
            case Section::Pipes: {
                if (toks.size() < 6)
                    throw ParseError("pipe needs: id node1 node2 length diameter roughness", lineno);
                Pipe p;
                p.id = toks[0];
                if (!pipe_ids.insert(p.id).second)
                    throw ParseError("duplicate pipe id '" + p.id + "'", lineno);
                p.from = toks[1];
                p.to = toks[2];
                p.length = parse_double(toks[3], "length");
                p.diameter = parse_double(toks[4], "diameter") / 1000.0;  // mm -> m
                p.roughness = parse_double(toks[5], "roughness");
                if (toks.size() >= 7 && parse_double(toks[6], "minor loss") != 0.0)
                    throw ParseError("pipe '" + p.id + "': minor losses are not supported", lineno);
                if (toks.size() >= 8 && upper(toks[7]) != "OPEN")
                    throw ParseError("pipe '" + p.id + "': status '" + toks[7] +
                                         "' is not supported (only OPEN)",
                                     lineno);
                g.pipes.push_back(std::move(p));
                break;
            }
            case Section::Demands: {
                if (toks.size() < 2) throw ParseError("demand needs: junction value", lineno);
                demands.push_back({toks[0], parse_double(toks[1], "demand"), lineno});
                break;
            }
            case Section::Coordinates: {
                if (toks.size() < 3) throw ParseError("coordinate needs: node x y", lineno);
                g.coordinates[toks[0]] = {parse_double(toks[1], "x"), parse_double(toks[2], "y")};
                break;
            }
        }
    }

    std::map<std::string, std::size_t> junction_at;
    for (std::size_t i = 0; i < g.junctions.size(); ++i) junction_at[g.junctions[i].id] = i;

    for (const auto& p : g.pipes) {
        for (const auto* end : {&p.from, &p.to}) {
            if (!node_ids.count(*end))
                throw ParseError("pipe '" + p.id + "' references missing node '" + *end + "'");
        }
    }
    for (const auto& d : demands) {
        auto it = junction_at.find(d.node);
        if (it == junction_at.end())
            throw ParseError("demand for unknown junction '" + d.node + "'", d.line);
        g.junctions[it->second].base_demand = d.value;
        g.demand_nodes.push_back(d.node);
    }
    if (demands.empty()) {
        for (const auto& j : g.junctions)
            if (j.base_demand > 0) g.demand_nodes.push_back(j.id);
    }
    for (const auto& s : g.sensor_nodes) {
        if (!junction_at.count(s))
            throw ParseError("sensor directive names unknown junction '" + s + "'");
    }

    // attachment: the junction across the first pipe incident to the reservoir
    for (auto& r : g.reservoirs) {
        for (const auto& p : g.pipes) {
            if (p.from == r.id && junction_at.count(p.to)) { r.attachment = p.to; break; }
            if (p.to == r.id && junction_at.count(p.from)) { r.attachment = p.from; break; }
        }
    }

    return result;
}

std::string serialize_inp(const NetworkGraph& g) {
    std::ostringstream os;
    if (!g.sensor_nodes.empty()) {
        os << ";@sensors";
        for (const auto& s : g.sensor_nodes) os << ' ' << s;
        os << '\n';
    }
    os << "[JUNCTIONS]\n";
    for (const auto& j : g.junctions)
        os << j.id << '\t' << format_double(j.elevation) << '\n';
    os << "\n[RESERVOIRS]\n";
    for (const auto& r : g.reservoirs)
        os << r.id << '\t' << format_double(r.elevation_head) << '\n';
    os << "\n[PIPES]\n";
    for (const auto& p : g.pipes)
        os << p.id << '\t' << p.from << '\t' << p.to << '\t' << format_double(p.length) << '\t'
           << format_double(mm_column(p.diameter)) << '\t' << format_double(p.roughness) << '\n';
    os << "\n[DEMANDS]\n";
    std::map<std::string, double> base;
    for (const auto& j : g.junctions) base[j.id] = j.base_demand;
    for (const auto& q : g.demand_nodes)
        os << q << '\t' << format_double(base.at(q)) << '\n';
    if (!g.coordinates.empty()) {
        os << "\n[COORDINATES]\n";
        for (const auto& [id, xy] : g.coordinates)
            os << id << '\t' << format_double(xy.first) << '\t' << format_double(xy.second) << '\n';
    }
    return os.str();
}

} // namespace wdn
