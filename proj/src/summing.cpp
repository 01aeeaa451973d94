#include "summet/summing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace summet {

namespace {

constexpr double kTiny = 1e-14;

void check_subset_in(std::size_t n, const std::vector<std::size_t>& subset, const char* what) {
  if (subset.empty()) throw InputError(std::string(what) + ": subset must be nonempty");
  for (std::size_t i : subset) {
    if (i >= n) throw InputError(std::string(what) + ": subset index out of range");
  }
}

}  // namespace

void ProbabilityMeasure::validate(std::size_t n_points, double tol) const {
  for (const auto& [i, w] : weights) {
    if (i >= n_points) throw InputError("measure: support index out of range");
    if (w < 0.0) throw InputError("measure: negative weight");
  }
  if (std::abs(total() - 1.0) > tol) {
    throw InputError("measure: weights sum to " + std::to_string(total()) + ", expected 1");
  }
}

ProbabilityMeasure ProbabilityMeasure::uniform(const std::vector<std::size_t>& support) {
  if (support.empty()) throw InputError("measure: empty support");
  ProbabilityMeasure mu;
  const double w = 1.0 / static_cast<double>(support.size());
  for (std::size_t i : support) mu.weights.emplace_back(i, w);
  std::sort(mu.weights.begin(), mu.weights.end());
  return mu;
}

ProbabilityMeasure ProbabilityMeasure::dirac(std::size_t point) {
  return ProbabilityMeasure{{{point, 1.0}}};
}

void MetricMap::validate() const {
  if (vertex_map.size() != domain.size()) {
    throw InputError("metric map: mapping must be total on the domain");
  }
  for (std::size_t img : vertex_map) {
    if (img >= codomain.size()) throw InputError("metric map: image index out of range");
  }
}

namespace {

// Shared Pietsch LP over the unordered pairs of `s`, with caller-supplied
// numerators |.|^p per pair. Maximizes t subject to
//   sum_w mu_w A[q][w] >= t * B_q,  sum mu = 1, mu >= 0, t >= 0,
// then C = t^(-1/p). The dual values of the pair rows form the witness
// sequence whose summing ratio attains C.
PietschCertificate pietsch_core(const FiniteMetricSpace& s,
                                const std::vector<std::size_t>& k, double p,
                                const std::vector<double>& numerator_pow_p,
                                const std::vector<std::pair<std::size_t, std::size_t>>& all_pairs,
                                const ToleranceConfig& tol) {
  PietschCertificate cert;
  cert.p = p;

  std::vector<std::size_t> active;  // indices into all_pairs
  for (std::size_t q = 0; q < all_pairs.size(); ++q) {
    const double b = numerator_pow_p[q];
    double amax = 0.0;
    const auto [x, y] = all_pairs[q];
    for (std::size_t w : k) {
      amax = std::max(amax, std::pow(std::abs(s.d(x, w) - s.d(y, w)), p));
    }
    if (b <= kTiny && amax <= kTiny) {
      ++cert.skipped_degenerate;
    } else if (b <= kTiny) {
      ++cert.skipped_zero_numerator;
    } else if (amax <= kTiny) {
      cert.infinite = true;
      cert.witness_pair = all_pairs[q];
      return cert;
    } else {
      active.push_back(q);
    }
  }

  if (active.empty()) {
    // Nothing to dominate; C = 0 with the uniform convention for mu.
    cert.constant = 0.0;
    cert.measure = ProbabilityMeasure::uniform(k);
    return cert;
  }

  // Variables: mu_w for w in k, then t.
  const std::size_t nk = k.size();
  LinearProgram lp(nk + 1);
  lp.objective[nk] = 1.0;
  for (std::size_t q : active) {
    const auto [x, y] = all_pairs[q];
    std::vector<double> row(nk + 1, 0.0);
    for (std::size_t wi = 0; wi < nk; ++wi) {
      row[wi] = std::pow(std::abs(s.d(x, k[wi]) - s.d(y, k[wi])), p);
    }
    row[nk] = -numerator_pow_p[q];
    lp.add_row(std::move(row), Relation::GreaterEq, 0.0);
  }
  {
    std::vector<double> row(nk + 1, 0.0);
    for (std::size_t wi = 0; wi < nk; ++wi) row[wi] = 1.0;
    lp.add_row(std::move(row), Relation::Equal, 1.0);
  }

  const LpSolution sol = solve_lp(lp, tol);
  if (sol.status != LpStatus::Optimal) {
    throw NumericalFailure("pietsch: LP did not reach an optimum");
  }
  const double t_star = sol.objective;
  if (t_star <= kTiny) {
    // Cannot happen once zero-profile pairs are excluded; guard anyway.
    throw NumericalFailure("pietsch: vanishing optimum t* = " + std::to_string(t_star));
  }
  cert.constant = std::pow(t_star, -1.0 / p);

  for (std::size_t wi = 0; wi < nk; ++wi) {
    const double w = sol.primal[wi];
    if (w > 1e-15) cert.measure.weights.emplace_back(k[wi], w);
  }
  std::sort(cert.measure.weights.begin(), cert.measure.weights.end());

  // Slack in the |f|^p scale: C^p <mu, A_q> - B_q.
  const double cp = 1.0 / t_star;
  for (std::size_t q : active) {
    const auto [x, y] = all_pairs[q];
    double integral = 0.0;
    for (const auto& [w, mw] : cert.measure.weights) {
      integral += mw * std::pow(std::abs(s.d(x, w) - s.d(y, w)), p);
    }
    cert.slack.push_back({all_pairs[q], cp * integral - numerator_pow_p[q]});
  }

  // Dual witness: pair-row duals are <= 0 for >= rows under maximization.
  for (std::size_t qi = 0; qi < active.size(); ++qi) {
    const double alpha = -sol.dual[qi];
    if (alpha > 1e-12) {
      cert.dual_witness.pairs.push_back(all_pairs[active[qi]]);
      cert.dual_witness.weights.push_back(alpha);
    }
  }
  return cert;
}

std::vector<std::pair<std::size_t, std::size_t>> unordered_pairs(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  return pairs;
}

}  // namespace

PietschCertificate pietsch_functional(const FiniteMetricSpace& s, const LipschitzFunctional& f,
                                      const std::vector<std::size_t>& k, double p,
                                      const ToleranceConfig& tol) {
  if (!(p >= 1.0)) throw InputError("pietsch: p must be >= 1");
  check_subset_in(s.size(), k, "pietsch");
  if (f.values.size() != s.size()) throw InputError("pietsch: functional not total");

  const auto pairs = unordered_pairs(s.size());
  std::vector<double> num(pairs.size());
  for (std::size_t q = 0; q < pairs.size(); ++q) {
    num[q] = std::pow(std::abs(f.values[pairs[q].first] - f.values[pairs[q].second]), p);
  }
  return pietsch_core(s, k, p, num, pairs, tol);
}

PietschCertificate pietsch_map(const MetricMap& t, const std::vector<std::size_t>& k, double p,
                               const ToleranceConfig& tol) {
  if (!(p >= 1.0)) throw InputError("pietsch: p must be >= 1");
  t.validate();
  check_subset_in(t.domain.size(), k, "pietsch");

  const auto pairs = unordered_pairs(t.domain.size());
  std::vector<double> num(pairs.size());
  for (std::size_t q = 0; q < pairs.size(); ++q) {
    const std::size_t tx = t.vertex_map[pairs[q].first];
    const std::size_t ty = t.vertex_map[pairs[q].second];
    num[q] = std::pow(t.codomain.d(tx, ty), p);
  }
  return pietsch_core(t.domain, k, p, num, pairs, tol);
}

DominationReport verify_domination(const FiniteMetricSpace& s, const LipschitzFunctional& f,
                                   const ProbabilityMeasure& mu, double c, double p,
                                   const ToleranceConfig& tol) {
  mu.validate(s.size());
  if (f.values.size() != s.size()) throw InputError("verify_domination: functional not total");

  DominationReport report;
  for (std::size_t x = 0; x < s.size(); ++x) {
    for (std::size_t y = x + 1; y < s.size(); ++y) {
      double integral = 0.0;
      for (const auto& [w, mw] : mu.weights) {
        integral += mw * std::pow(std::abs(s.d(x, w) - s.d(y, w)), p);
      }
      const double bound = c * std::pow(integral, 1.0 / p);
      const double viol = std::abs(f.values[x] - f.values[y]) - bound;
      if (viol > report.worst_violation) {
        report.worst_violation = viol;
        report.worst_pair = {x, y};
      }
    }
  }
  report.passed = report.worst_violation <= tol.feas_tol;
  return report;
}

double summing_ratio_oracle(const FiniteMetricSpace& s, const LipschitzFunctional& f,
                            const std::vector<std::size_t>& k, double p,
                            const PairSequence& seq) {
  if (!(p >= 1.0)) throw InputError("summing_ratio_oracle: p must be >= 1");
  check_subset_in(s.size(), k, "summing_ratio_oracle");
  seq.validate(s.size());
  if (f.values.size() != s.size()) {
    throw InputError("summing_ratio_oracle: functional not total");
  }

  double num = 0.0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const auto [x1, x2] = seq.pairs[i];
    num += seq.weight(i) * std::pow(std::abs(f.values[x1] - f.values[x2]), p);
  }
  double den = 0.0;
  for (std::size_t w : k) {
    double acc = 0.0;
    for (std::size_t i = 0; i < seq.size(); ++i) {
      const auto [x1, x2] = seq.pairs[i];
      acc += seq.weight(i) * std::pow(std::abs(s.d(x1, w) - s.d(x2, w)), p);
    }
    den = std::max(den, acc);
  }
  if (den <= kTiny) {
    throw DegenerateSequence("summing_ratio_oracle: eccentric denominator vanishes");
  }
  return std::pow(num / den, 1.0 / p);
}

ApproxResult approximating_constant(const MetricMap& t, const std::vector<std::size_t>& k1,
                                    const std::vector<std::size_t>& k2, double p,
                                    const ToleranceConfig& tol) {
  if (!(p >= 1.0)) throw InputError("approximating_constant: p must be >= 1");
  t.validate();
  check_subset_in(t.domain.size(), k1, "approximating_constant (k1)");
  check_subset_in(t.codomain.size(), k2, "approximating_constant (k2)");

  ApproxResult result;
  result.per_z.resize(k2.size());

  const auto pairs = unordered_pairs(t.domain.size());
  bool failed = false;
  std::string failure;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::int64_t zi = 0; zi < static_cast<std::int64_t>(k2.size()); ++zi) {
    try {
      const std::size_t z = k2[static_cast<std::size_t>(zi)];
      std::vector<double> num(pairs.size());
      for (std::size_t q = 0; q < pairs.size(); ++q) {
        const std::size_t tx = t.vertex_map[pairs[q].first];
        const std::size_t ty = t.vertex_map[pairs[q].second];
        num[q] = std::pow(std::abs(t.codomain.d(tx, z) - t.codomain.d(ty, z)), p);
      }
      result.per_z[static_cast<std::size_t>(zi)] = {
          z, pietsch_core(t.domain, k1, p, num, pairs, tol)};
    } catch (const std::exception& e) {
#ifdef _OPENMP
#pragma omp critical
#endif
      {
        failed = true;
        failure = e.what();
      }
    }
  }
  if (failed) throw NumericalFailure("approximating_constant: " + failure);

  // Order-independent max reduction over z, first witness in k2 order.
  for (const auto& [z, cert] : result.per_z) {
    if (cert.infinite) {
      result.infinite = true;
      result.witness = {z, *cert.witness_pair};
      result.constant = kInf;
      return result;
    }
    result.constant = std::max(result.constant, cert.constant);
  }
  return result;
}

MixedDominationReport verify_mixed_domination(const MetricMap& t, const ApproxResult& approx,
                                              const ProbabilityMeasure& nu, double p,
                                              const ToleranceConfig& tol) {
  t.validate();
  nu.validate(t.codomain.size());
  if (approx.infinite) {
    throw InputError("verify_mixed_domination: approximating constant is infinite");
  }

  MixedDominationReport report;
  report.constant = approx.constant;

  // mu_M = sum_z nu_z mu_z over the domain.
  std::vector<double> mixed(t.domain.size(), 0.0);
  for (const auto& [z, nz] : nu.weights) {
    const PietschCertificate* cert = nullptr;
    for (const auto& [zz, c] : approx.per_z) {
      if (zz == z) {
        cert = &c;
        break;
      }
    }
    if (cert == nullptr) {
      throw InputError("verify_mixed_domination: nu charges a point outside k2");
    }
    // Constant maps yield C = 0 certificates with the uniform convention; the
    // mixed measure uses them as-is.
    for (const auto& [w, mw] : cert->measure.weights) mixed[w] += nz * mw;
  }
  for (std::size_t w = 0; w < mixed.size(); ++w) {
    if (mixed[w] > 1e-15) report.domain_measure.weights.emplace_back(w, mixed[w]);
  }

  const double qp = std::pow(approx.constant, p);
  for (std::size_t x = 0; x < t.domain.size(); ++x) {
    for (std::size_t y = x + 1; y < t.domain.size(); ++y) {
      double lhs = 0.0;
      for (const auto& [z, nz] : nu.weights) {
        const std::size_t tx = t.vertex_map[x];
        const std::size_t ty = t.vertex_map[y];
        lhs += nz * std::pow(std::abs(t.codomain.d(tx, z) - t.codomain.d(ty, z)), p);
      }
      double rhs = 0.0;
      for (const auto& [w, mw] : report.domain_measure.weights) {
        rhs += mw * std::pow(std::abs(t.domain.d(x, w) - t.domain.d(y, w)), p);
      }
      const double viol = lhs - qp * rhs;
      if (viol > report.worst_violation) {
        report.worst_violation = viol;
        report.worst_pair = {x, y};
      }
    }
  }
  report.passed = report.worst_violation <= tol.feas_tol;
  return report;
}

}  // namespace summet
