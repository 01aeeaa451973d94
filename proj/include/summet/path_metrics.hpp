#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "summet/graph.hpp"
#include "summet/metric_space.hpp"
#include "summet/summing.hpp"
#include "summet/util.hpp"

namespace summet {

struct PathResult {
  double value = 0.0;
  std::vector<std::size_t> vertices;  // endpoints included
};

// All-pairs result of a path pseudometric. Values carry the final p-th root;
// raw costs stay in the transformed (summed) space so paths can be rechecked
// without per-step root error.
struct PathMatrixResult {
  std::vector<std::string> ids;
  Matrix values;
  Matrix raw_cost;
  std::vector<std::vector<std::int64_t>> pred;  // pred[src][v], -1 at src
  double p = 1.0;

  PathResult path(std::size_t from, std::size_t to) const;
};

// Per-edge costs in the transformed space; shared by every path metric below.
// Dijkstra from each source; ties broken toward the lexicographically
// smallest predecessor id. Parallel runs one source per thread and is
// bitwise-identical to the serial reference.
PathMatrixResult all_pairs_paths(const WeightedGraph& g, const std::vector<double>& edge_cost,
                                 double p, ExecPolicy policy = ExecPolicy::Parallel);

// Weighted shortest-path p-metric: edge cost w^p.
PathMatrixResult q_p(const WeightedGraph& g, double p, ExecPolicy policy = ExecPolicy::Parallel);

// p-shortest-path pseudometric of an arbitrary metric d over the vertices:
// edge cost d(u,v)^p.
PathMatrixResult d_p(const WeightedGraph& g, const FiniteMetricSpace& d, double p,
                     ExecPolicy policy = ExecPolicy::Parallel);

// Integral-average pseudometric: edge cost sum_w mu_w |d(u,w) - d(v,w)|^p.
PathMatrixResult d_p_mu(const WeightedGraph& g, const FiniteMetricSpace& d, double p,
                        const ProbabilityMeasure& mu, ExecPolicy policy = ExecPolicy::Parallel);

// Best-path estimate of a vertex function: edge cost |f(u) - f(v)|^p.
PathMatrixResult e_p(const WeightedGraph& g, const IndexFunction& f, double p,
                     ExecPolicy policy = ExecPolicy::Parallel);

struct LipResult {
  bool infinite = false;
  double value = 0.0;
  std::pair<std::size_t, std::size_t> witness{0, 0};
};

// max |f(x)-f(y)| / d(x,y); Infinite when a zero-distance pair separates f.
LipResult lip_constant(const Matrix& d, const std::vector<double>& f);

struct SymmetryClasses {
  std::vector<std::vector<std::size_t>> classes;  // each sorted; ordered by least member
  bool transitive = true;  // whether the thresholded relation was transitive at tol
  double tol = 0.0;
};

// Partition of the vertices by d_{p,mu} <= tol, built by union on the
// thresholded relation; non-transitivity at the given tol is flagged.
SymmetryClasses symmetry_classes(const WeightedGraph& g, const FiniteMetricSpace& d, double p,
                                 const ProbabilityMeasure& mu, double tol = 1e-8,
                                 ExecPolicy policy = ExecPolicy::Parallel);

struct T2Report {
  LipResult lip;
  bool part1_ok = true;
  double part1_worst_gap = -kInf;  // E_p - Lip * d_p
  std::pair<std::size_t, std::size_t> part1_worst_pair{0, 0};
  bool part2_checked = false;  // false when the certificate is infinite
  bool part2_ok = true;
  double part2_worst_gap = -kInf;  // E_p - C * d_{p,mu*}
  std::pair<std::size_t, std::size_t> part2_worst_pair{0, 0};
  double part1_worst_ratio = 0.0;
  double part2_worst_ratio = 0.0;
};

// Verifies E_p(f) <= Lip(f) d_p and, for finite certificates,
// E_p(f) <= C d_{p,mu*} over all vertex pairs.
T2Report check_t2(const WeightedGraph& g, const FiniteMetricSpace& d, double p,
                  const IndexFunction& f, const PietschCertificate& certificate,
                  const ToleranceConfig& tol = {}, ExecPolicy policy = ExecPolicy::Parallel);

}  // namespace summet
