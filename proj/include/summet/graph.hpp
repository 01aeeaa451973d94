#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "summet/errors.hpp"
#include "summet/metric_space.hpp"
#include "summet/util.hpp"

namespace summet {

// Undirected connected graph with strictly positive edge weights.
struct WeightedGraph {
  struct Edge {
    std::size_t u;
    std::size_t v;
    double w;
  };

  std::vector<std::string> ids;
  std::vector<Edge> edges;
  // adj[v] = (neighbor, edge index) pairs, sorted by neighbor index.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj;

  std::size_t size() const { return ids.size(); }

  std::size_t index_of(const std::string& id) const {
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (ids[i] == id) return i;
    }
    throw InputError("unknown vertex id '" + id + "'");
  }

  std::vector<std::size_t> all_indices() const {
    std::vector<std::size_t> v(size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
    return v;
  }

  // Validates (no self-loops, unique edges, positive weights, connected)
  // and builds the adjacency structure.
  static WeightedGraph make(std::vector<std::string> ids, std::vector<Edge> edges);
};

// Truncation of the convergent-sequence graph: chain v0..v{n-1} with weights
// 1/2^{i+1}, each vi tied to the limit vertex s with weight 1/2^i.
WeightedGraph sequence_graph(std::size_t n);

// Sequence core plus two apexes a1, a2 at (-1,0) and (1,0), each joined to
// every core vertex by the Euclidean segment length. The apexes share their
// distance profile on the core.
WeightedGraph two_apex_graph(std::size_t n);

// n circle vertices v1..vn with adjacent-arc weights 2*pi/n, all tied to the
// center v0 with weight 1. Non-adjacent circle vertices are reached along the
// circle or through the center (which caps the distance at 2).
WeightedGraph circle_graph(std::size_t n);

// Wraps an all-pairs distance matrix over the graph's vertices as a metric
// space (base point = vertex 0).
FiniteMetricSpace as_metric_space(const WeightedGraph& g, Matrix distances,
                                  bool pseudometric = false);

}  // namespace summet
