#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "summet/lp.hpp"
#include "summet/metric_space.hpp"

namespace summet {

// Finitely supported probability measure over point indices.
struct ProbabilityMeasure {
  std::vector<std::pair<std::size_t, double>> weights;  // sorted by index

  double total() const {
    double s = 0.0;
    for (const auto& [i, w] : weights) s += w;
    return s;
  }

  double at(std::size_t i) const {
    for (const auto& [j, w] : weights) {
      if (j == i) return w;
    }
    return 0.0;
  }

  void validate(std::size_t n_points, double tol = 1e-9) const;

  static ProbabilityMeasure uniform(const std::vector<std::size_t>& support);
  static ProbabilityMeasure dirac(std::size_t point);
};

struct PairSlack {
  std::pair<std::size_t, std::size_t> pair;
  double value;  // C^p * (mu-integral) - |numerator|^p
};

struct PietschCertificate {
  double p = 1.0;
  bool infinite = false;
  double constant = 0.0;
  ProbabilityMeasure measure;                                   // finite case
  std::vector<PairSlack> slack;                                 // finite case
  PairSequence dual_witness;                                    // finite case
  std::optional<std::pair<std::size_t, std::size_t>> witness_pair;  // infinite case
  std::size_t skipped_zero_numerator = 0;
  std::size_t skipped_degenerate = 0;
};

// Minimal C with a probability measure mu on k such that
//   |f(x) - f(y)|^p <= C^p * sum_w mu_w |d(x,w) - d(y,w)|^p   for all pairs.
// Infinite when some pair has a positive numerator but a zero profile on k.
PietschCertificate pietsch_functional(const FiniteMetricSpace& s, const LipschitzFunctional& f,
                                      const std::vector<std::size_t>& k, double p,
                                      const ToleranceConfig& tol = {});

struct DominationReport {
  bool passed = true;
  double worst_violation = -kInf;  // |f(x)-f(y)| - c * integral^(1/p)
  std::pair<std::size_t, std::size_t> worst_pair{0, 0};
};

// Checks the integral domination pairwise for a given (mu, c).
DominationReport verify_domination(const FiniteMetricSpace& s, const LipschitzFunctional& f,
                                   const ProbabilityMeasure& mu, double c, double p,
                                   const ToleranceConfig& tol = {});

// Ratio of one weighted sequence:
//   (sum a_i |f(x1_i)-f(x2_i)|^p)^(1/p) / sup_{w in k} (sum a_i |d(., w) diff|^p)^(1/p).
// Lower-bounds the certificate constant for every sequence.
double summing_ratio_oracle(const FiniteMetricSpace& s, const LipschitzFunctional& f,
                            const std::vector<std::size_t>& k, double p,
                            const PairSequence& seq);

// Finite map between metric spaces.
struct MetricMap {
  FiniteMetricSpace domain;
  FiniteMetricSpace codomain;
  std::vector<std::size_t> vertex_map;  // domain index -> codomain index

  void validate() const;
};

// Same LP with numerator d_N(Tx, Ty)^p.
PietschCertificate pietsch_map(const MetricMap& t, const std::vector<std::size_t>& k, double p,
                               const ToleranceConfig& tol = {});

struct ApproxResult {
  bool infinite = false;
  double constant = 0.0;
  std::vector<std::pair<std::size_t, PietschCertificate>> per_z;  // z in k2
  // infinite case: (z, pair in domain) witnessing non-domination
  std::optional<std::pair<std::size_t, std::pair<std::size_t, std::size_t>>> witness;
};

// Eccentrically p-approximating constant: max over z in k2 of the Pietsch
// constant of x -> d_N(T(x), z), each z carrying its own measure.
ApproxResult approximating_constant(const MetricMap& t, const std::vector<std::size_t>& k1,
                                    const std::vector<std::size_t>& k2, double p,
                                    const ToleranceConfig& tol = {});

struct MixedDominationReport {
  double constant = 0.0;          // max of per-z constants
  ProbabilityMeasure domain_measure;  // convex mix of the per-z measures
  bool passed = true;
  double worst_violation = -kInf;
  std::pair<std::size_t, std::size_t> worst_pair{0, 0};
};

// Averages the per-z dominations with mixing weights nu over k2, producing a
// pair of measures (nu on k2, mixed measure on k1) with the double-integral
// domination, and verifies it on all pairs.
MixedDominationReport verify_mixed_domination(const MetricMap& t, const ApproxResult& approx,
                                              const ProbabilityMeasure& nu, double p,
                                              const ToleranceConfig& tol = {});

}  // namespace summet
