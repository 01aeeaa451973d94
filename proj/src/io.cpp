#include "summet/io.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

namespace summet::io {

namespace {

const json& require(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw InputError(path + ": expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw InputError(path + "." + key + ": missing");
  return *it;
}

double require_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw InputError(path + ": expected a number");
  return j.get<double>();
}

std::string require_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw InputError(path + ": expected a string");
  return j.get<std::string>();
}

std::size_t index_of(const std::vector<std::string>& ids, const std::string& id,
                     const std::string& path) {
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] == id) return i;
  }
  throw InputError(path + ": unknown id '" + id + "'");
}

}  // namespace

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

FiniteMetricSpace parse_metric_space(const json& j) {
  const json& points = require(j, "points", "$");
  if (!points.is_array() || points.empty()) {
    throw InputError("$.points: expected a nonempty array of ids");
  }
  FiniteMetricSpace s;
  for (std::size_t i = 0; i < points.size(); ++i) {
    s.ids.push_back(require_string(points[i], "$.points[" + std::to_string(i) + "]"));
  }
  const std::size_t n = s.ids.size();

  const json& d = require(j, "d", "$");
  if (!d.is_array() || d.size() != n) {
    throw InputError("$.d: expected " + std::to_string(n) + " rows");
  }
  s.d = Matrix::square(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string rp = "$.d[" + std::to_string(i) + "]";
    if (!d[i].is_array() || d[i].size() != n) {
      throw InputError(rp + ": expected a row of length " + std::to_string(n));
    }
    for (std::size_t k = 0; k < n; ++k) {
      s.d(i, k) = require_number(d[i][k], rp + "[" + std::to_string(k) + "]");
    }
  }

  if (j.contains("base_point")) {
    s.base = index_of(s.ids, require_string(j["base_point"], "$.base_point"), "$.base_point");
  }
  if (j.contains("pseudometric")) {
    if (!j["pseudometric"].is_boolean()) throw InputError("$.pseudometric: expected a boolean");
    s.pseudometric = j["pseudometric"].get<bool>();
  }
  return s;
}

json metric_space_to_json(const FiniteMetricSpace& s) {
  json rows = json::array();
  for (std::size_t i = 0; i < s.size(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < s.size(); ++k) row.push_back(s.d(i, k));
    rows.push_back(std::move(row));
  }
  return json{{"points", s.ids},
              {"d", std::move(rows)},
              {"base_point", s.ids[s.base]},
              {"pseudometric", s.pseudometric}};
}

Molecule parse_molecule(const json& j, const FiniteMetricSpace& s) {
  const json& coeffs = require(j, "coefficients", "$");
  if (!coeffs.is_object()) throw InputError("$.coefficients: expected an object");
  Molecule m{std::vector<double>(s.size(), 0.0)};
  for (const auto& [id, value] : coeffs.items()) {
    const std::size_t idx = index_of(s.ids, id, "$.coefficients");
    m.coefficients[idx] = require_number(value, "$.coefficients." + id);
  }
  return m;
}

PairSequence parse_sequence(const json& j, const FiniteMetricSpace& s) {
  const json& pairs = require(j, "pairs", "$");
  if (!pairs.is_array()) throw InputError("$.pairs: expected an array");
  PairSequence seq;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const std::string pp = "$.pairs[" + std::to_string(i) + "]";
    if (!pairs[i].is_array() || pairs[i].size() != 2) {
      throw InputError(pp + ": expected [id, id]");
    }
    seq.pairs.emplace_back(index_of(s.ids, require_string(pairs[i][0], pp + "[0]"), pp),
                           index_of(s.ids, require_string(pairs[i][1], pp + "[1]"), pp));
  }
  if (j.contains("weights")) {
    const json& w = j["weights"];
    if (!w.is_array() || w.size() != seq.pairs.size()) {
      throw InputError("$.weights: expected an array matching pairs");
    }
    for (std::size_t i = 0; i < w.size(); ++i) {
      seq.weights.push_back(require_number(w[i], "$.weights[" + std::to_string(i) + "]"));
      if (seq.weights.back() < 0.0) {
        throw InputError("$.weights[" + std::to_string(i) + "]: negative weight");
      }
    }
  }
  return seq;
}

json sequence_to_json(const PairSequence& seq, const std::vector<std::string>& ids) {
  json pairs = json::array();
  for (const auto& [a, b] : seq.pairs) pairs.push_back(json::array({ids[a], ids[b]}));
  json out{{"pairs", std::move(pairs)}};
  if (!seq.weights.empty()) out["weights"] = seq.weights;
  return out;
}

LipschitzFunctional parse_values(const json& j, const std::vector<std::string>& ids) {
  const json& values = require(j, "values", "$");
  if (!values.is_object()) throw InputError("$.values: expected an object");
  LipschitzFunctional f{std::vector<double>(ids.size(), 0.0)};
  std::vector<char> seen(ids.size(), 0);
  for (const auto& [id, value] : values.items()) {
    const std::size_t idx = index_of(ids, id, "$.values");
    f.values[idx] = require_number(value, "$.values." + id);
    seen[idx] = 1;
  }
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (!seen[i]) throw InputError("$.values: missing value for '" + ids[i] + "'");
  }
  return f;
}

ProbabilityMeasure parse_measure(const json& j, const std::vector<std::string>& ids) {
  if (!j.is_object()) throw InputError("$: expected an object {id: weight}");
  ProbabilityMeasure mu;
  for (const auto& [id, value] : j.items()) {
    mu.weights.emplace_back(index_of(ids, id, "$"), require_number(value, "$." + id));
  }
  std::sort(mu.weights.begin(), mu.weights.end());
  return mu;
}

json measure_to_json(const ProbabilityMeasure& mu, const std::vector<std::string>& ids) {
  json out = json::object();
  for (const auto& [i, w] : mu.weights) out[ids[i]] = w;
  return out;
}

WeightedGraph parse_graph(const json& j) {
  const json& vertices = require(j, "vertices", "$");
  if (!vertices.is_array() || vertices.empty()) {
    throw InputError("$.vertices: expected a nonempty array of ids");
  }
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    ids.push_back(require_string(vertices[i], "$.vertices[" + std::to_string(i) + "]"));
  }
  const json& edges = require(j, "edges", "$");
  if (!edges.is_array()) throw InputError("$.edges: expected an array");
  std::vector<WeightedGraph::Edge> parsed;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string ep = "$.edges[" + std::to_string(i) + "]";
    const json& e = edges[i];
    const std::size_t u = index_of(ids, require_string(require(e, "u", ep), ep + ".u"), ep + ".u");
    const std::size_t v = index_of(ids, require_string(require(e, "v", ep), ep + ".v"), ep + ".v");
    const double w = require_number(require(e, "w", ep), ep + ".w");
    parsed.push_back({u, v, w});
  }
  return WeightedGraph::make(std::move(ids), std::move(parsed));
}

json graph_to_json(const WeightedGraph& g) {
  json edges = json::array();
  for (const auto& e : g.edges) {
    edges.push_back(json{{"u", g.ids[e.u]}, {"v", g.ids[e.v]}, {"w", e.w}});
  }
  return json{{"vertices", g.ids}, {"edges", std::move(edges)}};
}

std::vector<std::size_t> parse_vertex_map(const json& j, const FiniteMetricSpace& domain,
                                          const FiniteMetricSpace& codomain) {
  const json& map = require(j, "map", "$");
  if (!map.is_object()) throw InputError("$.map: expected an object {domain_id: codomain_id}");
  std::vector<std::size_t> out(domain.size(), 0);
  std::vector<char> seen(domain.size(), 0);
  for (const auto& [from, to] : map.items()) {
    const std::size_t d = index_of(domain.ids, from, "$.map");
    out[d] = index_of(codomain.ids, require_string(to, "$.map." + from), "$.map." + from);
    seen[d] = 1;
  }
  for (std::size_t i = 0; i < domain.size(); ++i) {
    if (!seen[i]) throw InputError("$.map: missing image for '" + domain.ids[i] + "'");
  }
  return out;
}

json certificate_to_json(const PietschCertificate& cert, const std::vector<std::string>& ids) {
  json out;
  out["p"] = cert.p;
  out["skipped_zero_numerator"] = cert.skipped_zero_numerator;
  out["skipped_degenerate"] = cert.skipped_degenerate;
  if (cert.infinite) {
    out["constant"] = "inf";
    out["witness_pair"] =
        json::array({ids[cert.witness_pair->first], ids[cert.witness_pair->second]});
  } else {
    out["constant"] = cert.constant;
    out["measure"] = measure_to_json(cert.measure, ids);
    json slack = json::array();
    for (const auto& ps : cert.slack) {
      slack.push_back(json{{"pair", json::array({ids[ps.pair.first], ids[ps.pair.second]})},
                           {"value", ps.value}});
    }
    out["slack"] = std::move(slack);
    out["dual_witness"] = sequence_to_json(cert.dual_witness, ids);
    out["witness_pair"] = nullptr;
  }
  return out;
}

void write_matrix_csv(std::ostream& os, const std::vector<std::string>& ids, const Matrix& m) {
  os.precision(17);
  os << "id";
  for (const auto& id : ids) os << ',' << id;
  os << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << ids[i];
    for (std::size_t j = 0; j < m.cols(); ++j) os << ',' << m(i, j);
    os << '\n';
  }
}

std::vector<std::size_t> parse_id_list(const std::string& csv,
                                       const std::vector<std::string>& ids) {
  std::vector<std::size_t> out;
  if (csv.empty()) {
    out.resize(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) out[i] = i;
    return out;
  }
  std::stringstream ss(csv);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token.empty()) continue;
    out.push_back(index_of(ids, token, "subset"));
  }
  if (out.empty()) throw InputError("subset: no ids given");
  return out;
}

}  // namespace summet::io
