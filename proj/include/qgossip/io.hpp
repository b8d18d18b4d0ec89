#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "qgossip/analysis.hpp"
#include "qgossip/evolution.hpp"
#include "qgossip/hypergraph.hpp"
#include "qgossip/qstate.hpp"

namespace qgossip::io {

using nlohmann::json;

// Initial-state mini-language: a comma list over {0, 1, +, -}, one entry per
// qubit, plus parenthesized repetition, e.g. "(0,1,+,-,0)x2" for ten qubits.
std::vector<QubitState> parse_init_spec(const std::string& spec);

// Graph files: {"n": int, "edges": [[int, ...], ...]} with 1-based nodes.
GeneralizedGraph graph_from_json(const json& j);
json graph_to_json(const GeneralizedGraph& g);
GeneralizedGraph load_graph(const std::string& path);

// Schedule files mirror the Schedule type, 1-based edges:
//   {"mode": "deterministic", "n": ..., "items": [{"edge": [...], "cycle_index": ...}]}
//   {"mode": "random", "n": ..., "k": ..., "seed": ...}
Schedule schedule_from_json(const json& j);
json schedule_to_json(const Schedule& s);
Schedule load_schedule(const std::string& path);

// Permutations serialize as one-line 1-based image arrays.
json permutation_to_json(const Permutation& p);

json finite_time_report_to_json(const FiniteTimeReport& report);
json rate_report_to_json(const RateReport& report);

// Full entrywise export (small n) or a compact summary with the reduced
// states (any n).
json density_to_json(const DensityMatrix& rho, bool full_entries);

// CSV writers. Columns are fixed: series "t,value,stderr";
// trajectories "t,metric,value,trial"; eigenvalue tables
// "magnitude,multiplicity". Doubles print with 17 significant digits so
// reruns with the same seed are byte-identical.
std::string series_to_csv(const Series& series);
std::string trajectories_to_csv(const std::string& metric,
                                const std::vector<Trajectory>& per_trial);
std::string eigenvalue_table_to_csv(const std::vector<EigenvalueEntry>& table);

std::string format_double(double v);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

// Schema checks used by the schema-check command. Return an empty string on
// success, else a description of the first violation.
std::string check_graph_json(const json& j);
std::string check_schedule_json(const json& j);
std::string check_rate_report_json(const json& j);
std::string check_finite_time_json(const json& j);
std::string check_series_csv(const std::string& text);
std::string check_trajectory_csv(const std::string& text);
std::string check_eigenvalue_csv(const std::string& text);

}  // namespace qgossip::io
