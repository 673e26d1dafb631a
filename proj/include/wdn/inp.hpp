#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "wdn/network.hpp"

namespace wdn {

/// Non-fatal parser observations (skipped sections, ignored columns).
struct InpWarning {
    long line;
    std::string message;
};

struct InpParseResult {
    NetworkGraph graph;
    std::vector<InpWarning> warnings;
};

/// Parses the supported EPANET INP subset: [JUNCTIONS], [RESERVOIRS],
/// [PIPES], optional [DEMANDS] and [COORDINATES]. Columns are
/// whitespace-delimited; `;` starts a comment. Units: length m, diameter mm,
/// roughness mm (absolute), demand m^3/h. A `;@sensors id...` comment line
/// declares the pressure-sensor subset.
///
/// [PUMPS], [VALVES], [TANKS] content is rejected with a ParseError naming
/// the section; other unknown sections are skipped with a warning.
InpParseResult parse_inp(std::istream& in);
InpParseResult parse_inp(const std::string& text);

/// Inverse of parse_inp on supported-subset graphs (field-exact round trip).
std::string serialize_inp(const NetworkGraph& graph);

} // namespace wdn
