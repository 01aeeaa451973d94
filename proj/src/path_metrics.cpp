#include "summet/path_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace summet {

namespace {

void check_graph_p(double p) {
  if (!(p >= 1.0) || p > 64.0) throw InputError("path metrics: p must lie in [1, 64]");
}

// Single-source Dijkstra over nonnegative transformed edge costs.
// Equal-cost relaxations keep the lexicographically smallest predecessor id.
void dijkstra(const WeightedGraph& g, const std::vector<double>& edge_cost, std::size_t src,
              std::vector<double>& dist, std::vector<std::int64_t>& pred) {
  const std::size_t n = g.size();
  dist.assign(n, kInf);
  pred.assign(n, -1);
  std::vector<char> done(n, 0);
  dist[src] = 0.0;

  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  heap.push({0.0, src});
  while (!heap.empty()) {
    const auto [dv, v] = heap.top();
    heap.pop();
    if (done[v]) continue;
    done[v] = 1;
    for (const auto& [nb, eidx] : g.adj[v]) {
      if (done[nb]) continue;
      const double cand = dv + edge_cost[eidx];
      if (cand < dist[nb]) {
        dist[nb] = cand;
        pred[nb] = static_cast<std::int64_t>(v);
        heap.push({cand, nb});
      } else if (cand == dist[nb] && pred[nb] >= 0 &&
                 g.ids[v] < g.ids[static_cast<std::size_t>(pred[nb])]) {
        pred[nb] = static_cast<std::int64_t>(v);
      }
    }
  }
}

}  // namespace

PathResult PathMatrixResult::path(std::size_t from, std::size_t to) const {
  const std::size_t n = ids.size();
  if (from >= n || to >= n) throw InputError("path query: vertex index out of range");
  PathResult r;
  r.value = values(from, to);
  std::vector<std::size_t> rev{to};
  std::size_t cur = to;
  while (cur != from) {
    const std::int64_t prev = pred[from][cur];
    if (prev < 0) throw NumericalFailure("path query: broken predecessor chain");
    cur = static_cast<std::size_t>(prev);
    rev.push_back(cur);
  }
  r.vertices.assign(rev.rbegin(), rev.rend());
  return r;
}

PathMatrixResult all_pairs_paths(const WeightedGraph& g, const std::vector<double>& edge_cost,
                                 double p, ExecPolicy policy) {
  if (edge_cost.size() != g.edges.size()) {
    throw InputError("all_pairs_paths: one cost per edge required");
  }
  for (double c : edge_cost) {
    if (c < 0.0 || std::isnan(c)) throw InputError("all_pairs_paths: negative or NaN edge cost");
  }

  const std::size_t n = g.size();
  PathMatrixResult out;
  out.ids = g.ids;
  out.p = p;
  out.values = Matrix::square(n, 0.0);
  out.raw_cost = Matrix::square(n, 0.0);
  out.pred.assign(n, {});

  const double inv_p = 1.0 / p;
  auto run_source = [&](std::size_t src) {
    std::vector<double> dist;
    dijkstra(g, edge_cost, src, dist, out.pred[src]);
    for (std::size_t v = 0; v < n; ++v) {
      out.raw_cost(src, v) = dist[v];
      out.values(src, v) = dist[v] == 0.0 ? 0.0 : std::pow(dist[v], inv_p);
    }
  };

#ifdef _OPENMP
  if (policy == ExecPolicy::Parallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t src = 0; src < static_cast<std::int64_t>(n); ++src) {
      run_source(static_cast<std::size_t>(src));
    }
    return out;
  }
#else
  (void)policy;
#endif
  for (std::size_t src = 0; src < n; ++src) run_source(src);
  return out;
}

PathMatrixResult q_p(const WeightedGraph& g, double p, ExecPolicy policy) {
  check_graph_p(p);
  std::vector<double> cost(g.edges.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e) cost[e] = std::pow(g.edges[e].w, p);
  return all_pairs_paths(g, cost, p, policy);
}

PathMatrixResult d_p(const WeightedGraph& g, const FiniteMetricSpace& d, double p,
                     ExecPolicy policy) {
  check_graph_p(p);
  if (d.size() != g.size()) {
    throw InputError("d_p: metric space must be indexed by the graph's vertices");
  }
  std::vector<double> cost(g.edges.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    cost[e] = std::pow(d.d(g.edges[e].u, g.edges[e].v), p);
  }
  return all_pairs_paths(g, cost, p, policy);
}

PathMatrixResult d_p_mu(const WeightedGraph& g, const FiniteMetricSpace& d, double p,
                        const ProbabilityMeasure& mu, ExecPolicy policy) {
  check_graph_p(p);
  if (d.size() != g.size()) {
    throw InputError("d_p_mu: metric space must be indexed by the graph's vertices");
  }
  mu.validate(g.size());
  std::vector<double> cost(g.edges.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto& edge = g.edges[e];
    double acc = 0.0;
    for (const auto& [w, mw] : mu.weights) {
      acc += mw * std::pow(std::abs(d.d(edge.u, w) - d.d(edge.v, w)), p);
    }
    cost[e] = acc;
  }
  return all_pairs_paths(g, cost, p, policy);
}

PathMatrixResult e_p(const WeightedGraph& g, const IndexFunction& f, double p,
                     ExecPolicy policy) {
  check_graph_p(p);
  if (f.values.size() != g.size()) throw InputError("e_p: index not total on the vertices");
  std::vector<double> cost(g.edges.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    cost[e] = std::pow(std::abs(f.values[g.edges[e].u] - f.values[g.edges[e].v]), p);
  }
  return all_pairs_paths(g, cost, p, policy);
}

LipResult lip_constant(const Matrix& d, const std::vector<double>& f) {
  if (d.rows() != f.size()) throw InputError("lip_constant: size mismatch");
  LipResult r;
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = i + 1; j < f.size(); ++j) {
      const double df = std::abs(f[i] - f[j]);
      if (d(i, j) <= 0.0) {
        if (df > 0.0) {
          return LipResult{true, kInf, {i, j}};
        }
        continue;
      }
      const double ratio = df / d(i, j);
      if (ratio > r.value) {
        r.value = ratio;
        r.witness = {i, j};
      }
    }
  }
  return r;
}

SymmetryClasses symmetry_classes(const WeightedGraph& g, const FiniteMetricSpace& d, double p,
                                 const ProbabilityMeasure& mu, double tol, ExecPolicy policy) {
  const PathMatrixResult m = d_p_mu(g, d, p, mu, policy);
  const std::size_t n = g.size();

  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](std::size_t v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (m.values(i, j) <= tol) {
        const std::size_t a = find(i);
        const std::size_t b = find(j);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
  }

  SymmetryClasses out;
  out.tol = tol;
  std::vector<std::int64_t> class_of(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = find(i);
    if (class_of[root] < 0) {
      class_of[root] = static_cast<std::int64_t>(out.classes.size());
      out.classes.push_back({});
    }
    out.classes[static_cast<std::size_t>(class_of[root])].push_back(i);
  }

  // The union may chain pairs that are individually above tol.
  for (const auto& cls : out.classes) {
    for (std::size_t a = 0; a < cls.size() && out.transitive; ++a) {
      for (std::size_t b = a + 1; b < cls.size(); ++b) {
        if (m.values(cls[a], cls[b]) > tol) {
          out.transitive = false;
          break;
        }
      }
    }
  }
  return out;
}

T2Report check_t2(const WeightedGraph& g, const FiniteMetricSpace& d, double p,
                  const IndexFunction& f, const PietschCertificate& certificate,
                  const ToleranceConfig& tol, ExecPolicy policy) {
  check_graph_p(p);
  if (f.values.size() != g.size()) throw InputError("check_t2: index not total");
  if (d.size() != g.size()) throw InputError("check_t2: metric/graph size mismatch");

  const PathMatrixResult ep = e_p(g, f, p, policy);
  const PathMatrixResult dp = d_p(g, d, p, policy);

  T2Report report;
  report.lip = lip_constant(d.d, f.values);
  const std::size_t n = g.size();
  const double slack = 1e-9;

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double bound = report.lip.infinite ? kInf : report.lip.value * dp.values(i, j);
      const double gap = ep.values(i, j) - bound;
      if (gap > report.part1_worst_gap) {
        report.part1_worst_gap = gap;
        report.part1_worst_pair = {i, j};
      }
      if (bound > 1e-12 && std::isfinite(bound)) {
        report.part1_worst_ratio = std::max(report.part1_worst_ratio, ep.values(i, j) / bound);
      }
    }
  }
  report.part1_ok = report.part1_worst_gap <= slack;

  if (!certificate.infinite) {
    report.part2_checked = true;
    const PathMatrixResult dpm = d_p_mu(g, d, p, certificate.measure, policy);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double bound = certificate.constant * dpm.values(i, j);
        const double gap = ep.values(i, j) - bound;
        if (gap > report.part2_worst_gap) {
          report.part2_worst_gap = gap;
          report.part2_worst_pair = {i, j};
        }
        if (bound > 1e-12) {
          report.part2_worst_ratio = std::max(report.part2_worst_ratio, ep.values(i, j) / bound);
        }
      }
    }
    report.part2_ok = report.part2_worst_gap <= slack;
  }
  (void)tol;
  return report;
}

}  // namespace summet
