#include "summet/graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace summet {

WeightedGraph WeightedGraph::make(std::vector<std::string> ids, std::vector<Edge> edges) {
  WeightedGraph g;
  g.ids = std::move(ids);
  const std::size_t n = g.ids.size();
  if (n == 0) throw InputError("graph: empty vertex set");

  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (auto& e : edges) {
    if (e.u >= n || e.v >= n) throw InputError("graph: edge endpoint out of range");
    if (e.u == e.v) throw InputError("graph: self-loop at vertex '" + g.ids[e.u] + "'");
    if (!(e.w > 0.0)) {
      std::ostringstream msg;
      msg << "graph: edge (" << g.ids[e.u] << "," << g.ids[e.v] << ") has non-positive weight "
          << e.w;
      throw InputError(msg.str());
    }
    if (e.u > e.v) std::swap(e.u, e.v);
    if (!seen.insert({e.u, e.v}).second) {
      throw InputError("graph: duplicate edge (" + g.ids[e.u] + "," + g.ids[e.v] + ")");
    }
  }
  g.edges = std::move(edges);

  g.adj.assign(n, {});
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    const auto& e = g.edges[k];
    g.adj[e.u].emplace_back(e.v, k);
    g.adj[e.v].emplace_back(e.u, k);
  }
  for (auto& nbrs : g.adj) std::sort(nbrs.begin(), nbrs.end());

  // Connectivity.
  std::vector<char> reached(n, 0);
  std::vector<std::size_t> stack{0};
  reached[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    for (const auto& [nb, eidx] : g.adj[v]) {
      (void)eidx;
      if (!reached[nb]) {
        reached[nb] = 1;
        ++count;
        stack.push_back(nb);
      }
    }
  }
  if (count != n) {
    for (std::size_t v = 0; v < n; ++v) {
      if (!reached[v]) {
        throw InputError("graph: not connected (vertex '" + g.ids[v] + "' unreachable)");
      }
    }
  }
  return g;
}

WeightedGraph sequence_graph(std::size_t n) {
  if (n < 2) throw InputError("sequence_graph: need n >= 2");
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back("v" + std::to_string(i));
  ids.push_back("s");
  const std::size_t s = n;

  std::vector<WeightedGraph::Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    edges.push_back({i, i + 1, std::ldexp(1.0, -static_cast<int>(i) - 1)});
  }
  for (std::size_t i = 0; i < n; ++i) {
    edges.push_back({i, s, std::ldexp(1.0, -static_cast<int>(i))});
  }
  return WeightedGraph::make(std::move(ids), std::move(edges));
}

WeightedGraph two_apex_graph(std::size_t n) {
  if (n < 2) throw InputError("two_apex_graph: need n >= 2");
  WeightedGraph core = sequence_graph(n);
  std::vector<std::string> ids = core.ids;
  const std::size_t a1 = ids.size();
  ids.push_back("a1");
  const std::size_t a2 = ids.size();
  ids.push_back("a2");

  std::vector<WeightedGraph::Edge> edges = core.edges;
  // Core vertex k sits at (0, 1 - 1/2^k); the limit s at (0, 1); apexes at (-+1, 0).
  auto height = [&](std::size_t v) {
    return v == n ? 1.0 : 1.0 - std::ldexp(1.0, -static_cast<int>(v));
  };
  for (std::size_t v = 0; v <= n; ++v) {
    const double h = height(v);
    const double w = std::sqrt(1.0 + h * h);
    edges.push_back({v, a1, w});
    edges.push_back({v, a2, w});
  }
  return WeightedGraph::make(std::move(ids), std::move(edges));
}

WeightedGraph circle_graph(std::size_t n) {
  if (n < 2) throw InputError("circle_graph: need n >= 2");
  std::vector<std::string> ids{"v0"};
  for (std::size_t i = 1; i <= n; ++i) ids.push_back("v" + std::to_string(i));

  const double arc = 2.0 * std::acos(-1.0) / static_cast<double>(n);
  std::vector<WeightedGraph::Edge> edges;
  for (std::size_t i = 1; i <= n; ++i) {
    const std::size_t next = (i == n) ? 1 : i + 1;
    if (n == 2 && i == 2) break;  // avoid the duplicate wrap edge
    edges.push_back({i, next, arc});
  }
  for (std::size_t i = 1; i <= n; ++i) edges.push_back({0, i, 1.0});
  return WeightedGraph::make(std::move(ids), std::move(edges));
}

FiniteMetricSpace as_metric_space(const WeightedGraph& g, Matrix distances, bool pseudometric) {
  return FiniteMetricSpace{g.ids, std::move(distances), 0, pseudometric};
}

}  // namespace summet
