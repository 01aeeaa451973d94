#pragma once

// Shared fixtures for the test suites: brute-force oracles kept independent
// of the library's solver paths, and deterministic random instance builders.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "summet/graph.hpp"
#include "summet/metric_space.hpp"
#include "summet/util.hpp"

namespace summet::testing {

// ---------------------------------------------------------------------------
// Transport oracle: minimal cost of moving integer supplies onto integer
// demands, by exhaustive recursion over integral flow matrices. Independent
// of any LP machinery.
// ---------------------------------------------------------------------------

inline void transport_recurse(const std::vector<long>& supplies, std::vector<long>& demands,
                              const std::vector<std::vector<double>>& cost, std::size_t i,
                              std::size_t j, long remaining_i, double acc, double& best) {
  const std::size_t ns = supplies.size();
  const std::size_t nd = demands.size();
  if (acc >= best) return;
  if (i == ns) {
    best = acc;
    return;
  }
  if (j == nd) {
    if (remaining_i == 0) {
      const long next_rem = (i + 1 < ns) ? supplies[i + 1] : 0;
      transport_recurse(supplies, demands, cost, i + 1, 0, next_rem, acc, best);
    }
    return;
  }
  const long max_flow = std::min(remaining_i, demands[j]);
  for (long f = 0; f <= max_flow; ++f) {
    demands[j] -= f;
    transport_recurse(supplies, demands, cost, i, j + 1, remaining_i - f,
                      acc + static_cast<double>(f) * cost[i][j], best);
    demands[j] += f;
  }
}

inline double transport_min_cost_bruteforce(const std::vector<long>& supplies,
                                            const std::vector<long>& demands,
                                            const std::vector<std::vector<double>>& cost) {
  std::vector<long> dem = demands;
  double best = kInf;
  const long rem0 = supplies.empty() ? 0 : supplies[0];
  transport_recurse(supplies, dem, cost, 0, 0, rem0, 0.0, best);
  return best;
}

// ---------------------------------------------------------------------------
// Exhaustive simple-path oracle over a weighted graph with per-edge costs.
// Returns the minimal sum of costs over all simple paths from src to dst.
// Usable only on tiny graphs.
// ---------------------------------------------------------------------------

inline void path_recurse(const WeightedGraph& g, const std::vector<double>& edge_cost,
                         std::size_t v, std::size_t dst, std::vector<char>& used, double acc,
                         double& best) {
  if (v == dst) {
    best = std::min(best, acc);
    return;
  }
  for (const auto& [nb, eidx] : g.adj[v]) {
    if (used[nb]) continue;
    used[nb] = 1;
    path_recurse(g, edge_cost, nb, dst, used, acc + edge_cost[eidx], best);
    used[nb] = 0;
  }
}

inline double min_path_cost_exhaustive(const WeightedGraph& g, const std::vector<double>& edge_cost,
                                       std::size_t src, std::size_t dst) {
  if (src == dst) return 0.0;
  std::vector<char> used(g.size(), 0);
  used[src] = 1;
  double best = kInf;
  path_recurse(g, edge_cost, src, dst, used, 0.0, best);
  return best;
}

// ---------------------------------------------------------------------------
// Deterministic random instances.
// ---------------------------------------------------------------------------

using Rng = std::mt19937_64;

inline std::vector<std::string> make_ids(std::size_t n, const std::string& prefix = "p") {
  std::vector<std::string> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = prefix + std::to_string(i);
  return ids;
}

// Euclidean point cloud in [0,1]^3; always a true metric.
inline FiniteMetricSpace random_metric_space(Rng& rng, std::size_t n) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<std::array<double, 3>> pts(n);
  for (auto& p : pts) p = {unif(rng), unif(rng), unif(rng)};
  Matrix d = Matrix::square(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = pts[i][0] - pts[j][0];
      const double dy = pts[i][1] - pts[j][1];
      const double dz = pts[i][2] - pts[j][2];
      const double dist = std::sqrt(dx * dx + dy * dy + dz * dz);
      d(i, j) = dist;
      d(j, i) = dist;
    }
  }
  return FiniteMetricSpace{make_ids(n), std::move(d), 0, false};
}

inline FiniteMetricSpace discrete_metric_space(std::size_t n, const std::string& prefix = "X") {
  Matrix d = Matrix::square(n, 1.0);
  for (std::size_t i = 0; i < n; ++i) d(i, i) = 0.0;
  std::vector<std::string> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = prefix + std::to_string(i + 1);
  return FiniteMetricSpace{std::move(ids), std::move(d), 0, false};
}

// Connected graph: random spanning tree plus a few extra edges.
inline WeightedGraph random_graph(Rng& rng, std::size_t n, double extra_edge_fraction = 0.5) {
  std::uniform_real_distribution<double> wdist(0.1, 2.0);
  std::vector<WeightedGraph::Edge> edges;
  for (std::size_t v = 1; v < n; ++v) {
    std::uniform_int_distribution<std::size_t> pick(0, v - 1);
    edges.push_back({pick(rng), v, wdist(rng)});
  }
  const std::size_t extra =
      static_cast<std::size_t>(extra_edge_fraction * static_cast<double>(n));
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::size_t t = 0; t < extra; ++t) {
    const std::size_t u = pick(rng);
    const std::size_t v = pick(rng);
    if (u == v) continue;
    const auto [a, b] = std::minmax(u, v);
    bool dup = false;
    for (const auto& e : edges) {
      if (e.u == a && e.v == b) {
        dup = true;
        break;
      }
    }
    if (!dup) edges.push_back({a, b, wdist(rng)});
  }
  return WeightedGraph::make(make_ids(n, "v"), std::move(edges));
}

inline PairSequence random_sequence(Rng& rng, std::size_t n_points, std::size_t n_pairs,
                                    bool weighted) {
  std::uniform_int_distribution<std::size_t> pick(0, n_points - 1);
  std::uniform_real_distribution<double> wdist(0.1, 2.0);
  PairSequence seq;
  for (std::size_t i = 0; i < n_pairs; ++i) {
    seq.pairs.emplace_back(pick(rng), pick(rng));
    seq.weights.push_back(weighted ? wdist(rng) : 1.0);
  }
  return seq;
}

inline std::vector<double> random_values(Rng& rng, std::size_t n, double lo = 0.0,
                                         double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}

}  // namespace summet::testing
