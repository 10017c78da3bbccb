#pragma once

#include <string>

#include "egn/dynamics.hpp"
#include "egn/equilibria.hpp"
#include "egn/game.hpp"

namespace egn {

// Instance JSON:
//   { "graph": {"n": int, "edges": [[u,v],...]},
//     "payoffs": {"default": [[cc,cd],[dc,dd]],
//                 "overrides": {"<vertex>": [[..],[..]], ...} } }
// Vertices are 1-based. Unknown keys are rejected, with the offending
// location named in the error.
EgnInstance parse_instance(const std::string& json_text);
EgnInstance load_instance(const std::string& path);
std::string instance_to_json(const EgnInstance& inst);

// Undirected DOT rendering of one profile: cooperators filled yellow,
// defectors red.
std::string export_dot(const Graph& g, PureProfile p);

// Verdict plus the per-vertex eigenvalues and condition tags.
std::string classification_report_json(const ProfileClassification& c);
std::string classification_report_text(const ProfileClassification& c);

inline std::string enumeration_csv_header() { return "index,bitstring,verdict"; }
std::string enumeration_csv_row(const ProfileClassification& c);

// t,x_1,...,x_N rows for every recorded snapshot.
std::string trajectory_csv(const Trajectory& t);

// {"samples": .., "converged": {"<bitstring>": count, ...}, "nonconverged": ..}
std::string basin_report_json(const BasinReport& r);

}  // namespace egn
