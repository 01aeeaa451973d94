#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "summet/graph.hpp"
#include "summet/metric_space.hpp"
#include "summet/summing.hpp"

namespace summet::io {

using json = nlohmann::json;

// File loading; parse failures become path-annotated InputErrors.
json load_json_file(const std::string& path);

// {"points": [...], "d": [[...]], "base_point": id?, "pseudometric": bool?}
FiniteMetricSpace parse_metric_space(const json& j);
json metric_space_to_json(const FiniteMetricSpace& s);

// {"coefficients": {id: real}}
Molecule parse_molecule(const json& j, const FiniteMetricSpace& s);

// {"pairs": [[id,id],...], "weights": [...]?}
PairSequence parse_sequence(const json& j, const FiniteMetricSpace& s);
json sequence_to_json(const PairSequence& seq, const std::vector<std::string>& ids);

// {"values": {id: real}}
LipschitzFunctional parse_values(const json& j, const std::vector<std::string>& ids);

// {id: weight}
ProbabilityMeasure parse_measure(const json& j, const std::vector<std::string>& ids);
json measure_to_json(const ProbabilityMeasure& mu, const std::vector<std::string>& ids);

// {"vertices": [...], "edges": [{"u":, "v":, "w":}]}
WeightedGraph parse_graph(const json& j);
json graph_to_json(const WeightedGraph& g);

// {"map": {domain_id: codomain_id}}
std::vector<std::size_t> parse_vertex_map(const json& j, const FiniteMetricSpace& domain,
                                          const FiniteMetricSpace& codomain);

json certificate_to_json(const PietschCertificate& cert, const std::vector<std::string>& ids);

void write_matrix_csv(std::ostream& os, const std::vector<std::string>& ids, const Matrix& m);

// Point/vertex ids from a comma-separated list; empty selects all.
std::vector<std::size_t> parse_id_list(const std::string& csv,
                                       const std::vector<std::string>& ids);

}  // namespace summet::io
