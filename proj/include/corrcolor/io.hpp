#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "corrcolor/cover.hpp"
#include "corrcolor/first_moment.hpp"
#include "corrcolor/graph.hpp"
#include "corrcolor/nibble.hpp"
#include "corrcolor/solver.hpp"

namespace corrcolor::io {

using nlohmann::json;

/// {"n": int, "edges": [[u, v], ...]}
json graph_to_json(const Graph& g);
Graph graph_from_json(const json& j);

/// "p edge n m" header, "e u v" lines (1-indexed), "c" comments.
Graph read_dimacs(std::istream& in);

/// {"k_per_vertex": [...], "lists": [[ids], ...], "matchings": {"u,v": [[x, y], ...]}}
json cover_to_json(const Cover& c);
Cover cover_from_json(const json& j);

/// {"p_hat": real, "p": [weight per color id]}
json weighting_to_json(const Weighting& w);
Weighting weighting_from_json(const json& j);

/// Array of color ids per vertex; null for uncolored vertices.
json coloring_to_json(const Coloring& c);
Coloring coloring_from_json(const json& j);

/// {"lists": [[labels], ...]} for the list-assignment lift.
std::vector<std::vector<int>> label_lists_from_json(const json& j);
json label_lists_to_json(const std::vector<std::vector<int>>& lists);

/// {"restrict": [[ids], ...]}
std::vector<std::vector<ColorId>> restrict_from_json(const json& j);

json report_to_json(const LowerBoundReport& r);
/// One line per trial: "trial,count" (count -1 for budget failures).
std::string per_trial_csv(const LowerBoundReport& r);

json trajectory_to_json(const std::vector<TrajectoryRow>& rows);
/// Columns: step,min_pv,max_pv,min_Q,max_deg,removed,retries
std::string trajectory_csv(const std::vector<TrajectoryRow>& rows);
json nibble_outcome_to_json(const NibbleOutcome& o);
json params_to_json(const NibbleParams& p);

/// Per-vertex p(v), p_m(v), Q(v), per-edge p(uv), p_m(uv), and niceness.
json state_stats_to_json(const ReductState& s);

/// Parses a JSON file; InputError on I/O or syntax problems.
json read_json_file(const std::string& path);
/// JSON graph, or a DIMACS edge list when the file does not start with '{'.
Graph read_graph_file(const std::string& path);

/// Canonical text form of a document (two-space indent, trailing newline).
std::string dump(const json& j);

}  // namespace corrcolor::io
