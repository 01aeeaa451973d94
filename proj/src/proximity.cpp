#include "summet/proximity.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace summet {

namespace {

void check_subset(const FiniteMetricSpace& s, const std::vector<std::size_t>& subset) {
  if (subset.empty()) throw InputError("subset of points must be nonempty");
  for (std::size_t y : subset) {
    if (y >= s.size()) throw InputError("subset index out of range");
  }
}

void check_p(double p) {
  if (!(p >= 1.0)) throw InputError("p must be >= 1");
}

}  // namespace

Matrix eccentric_pseudometric(const FiniteMetricSpace& s,
                              const std::vector<std::size_t>& subset) {
  check_subset(s, subset);
  const std::size_t n = s.size();
  Matrix out = Matrix::square(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double best = 0.0;
      for (std::size_t y : subset) {
        best = std::max(best, std::abs(s.d(i, y) - s.d(j, y)));
      }
      out(i, j) = best;
      out(j, i) = best;
    }
  }
  return out;
}

double d_ac(const FiniteMetricSpace& s, const PairSequence& seq, double p) {
  check_p(p);
  seq.validate(s.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const auto [x1, x2] = seq.pairs[i];
    acc += seq.weight(i) * std::pow(s.d(x1, x2), p);
  }
  return std::pow(acc, 1.0 / p);
}

DccResult d_cc(const FiniteMetricSpace& s, const PairSequence& seq, double p,
               const std::vector<std::size_t>& subset) {
  check_p(p);
  check_subset(s, subset);
  seq.validate(s.size());
  DccResult best{-1.0, subset.front()};
  for (std::size_t y : subset) {
    double acc = 0.0;
    for (std::size_t i = 0; i < seq.size(); ++i) {
      const auto [x1, x2] = seq.pairs[i];
      acc += seq.weight(i) * std::pow(std::abs(s.d(x1, y) - s.d(x2, y)), p);
    }
    if (acc > best.value) best = {acc, y};
  }
  best.value = std::pow(best.value, 1.0 / p);
  return best;
}

double pairing(const Molecule& m, const LipschitzFunctional& f) {
  double acc = 0.0;
  for (std::size_t x = 0; x < m.coefficients.size(); ++x) {
    acc += m.coefficients[x] * f.values[x];
  }
  return acc;
}

AeNormResult ae_norm(const FiniteMetricSpace& s, const Molecule& m,
                     const ToleranceConfig& tol) {
  const std::size_t n = s.size();
  if (m.coefficients.size() != n) {
    throw InputError("molecule: coefficient count differs from point count");
  }
  if (std::abs(m.sum()) > 1e-12) {
    throw InputError("molecule: coefficients do not sum to zero");
  }

  AeNormResult result;
  result.witness.values.assign(n, 0.0);
  if (n <= 1) return result;

  // Variables: f(x) for x != base, free; f(base) = 0 eliminated.
  // Constraints: f(x) - f(y) <= d(x,y) for all ordered pairs x != y.
  std::vector<std::size_t> var_of(n, SIZE_MAX);
  std::vector<std::size_t> point_of;
  for (std::size_t x = 0; x < n; ++x) {
    if (x == s.base) continue;
    var_of[x] = point_of.size();
    point_of.push_back(x);
  }
  const std::size_t nv = point_of.size();

  LinearProgram lp(nv);
  for (std::size_t k = 0; k < nv; ++k) {
    lp.set_free(k);
    lp.objective[k] = m.coefficients[point_of[k]];
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y) continue;
      std::vector<double> row(nv, 0.0);
      if (x != s.base) row[var_of[x]] += 1.0;
      if (y != s.base) row[var_of[y]] -= 1.0;
      lp.add_row(std::move(row), Relation::LessEq, s.d(x, y));
    }
  }

  const LpSolution sol = solve_lp(lp, tol);
  if (sol.status != LpStatus::Optimal) {
    throw NumericalFailure("ae_norm: LP did not reach an optimum");
  }
  result.value = sol.objective;
  for (std::size_t k = 0; k < nv; ++k) result.witness.values[point_of[k]] = sol.primal[k];
  return result;
}

namespace {

Molecule signed_molecule(const FiniteMetricSpace& s, const PairSequence& seq,
                         const std::vector<double>& scale, std::uint64_t mask) {
  Molecule m{std::vector<double>(s.size(), 0.0)};
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const double sign = (mask >> i) & 1u ? -1.0 : 1.0;
    const auto [x1, x2] = seq.pairs[i];
    m.coefficients[x1] += sign * scale[i];
    m.coefficients[x2] -= sign * scale[i];
  }
  return m;
}

double exact_wc(const FiniteMetricSpace& s, const PairSequence& seq,
                const std::vector<double>& scale, ExecPolicy policy,
                const ToleranceConfig& tol) {
  const std::size_t n = seq.size();
  // Sign vectors come in +-pairs with equal norm, so the leading sign is fixed.
  const std::uint64_t count = n == 0 ? 0 : (1ull << (n - 1));
  if (count == 0) return 0.0;

  double best = -1.0;
  std::uint64_t best_mask = 0;

#ifdef _OPENMP
  const bool parallel = policy == ExecPolicy::Parallel && count >= 16;
#else
  const bool parallel = false;
  (void)policy;
#endif

  if (parallel) {
#ifdef _OPENMP
#pragma omp parallel
    {
      double local_best = -1.0;
      std::uint64_t local_mask = 0;
#pragma omp for schedule(static)
      for (std::int64_t mask = 0; mask < static_cast<std::int64_t>(count); ++mask) {
        const double v =
            ae_norm(s, signed_molecule(s, seq, scale, static_cast<std::uint64_t>(mask) << 1),
                    tol)
                .value;
        if (v > local_best ||
            (v == local_best && static_cast<std::uint64_t>(mask) < local_mask)) {
          local_best = v;
          local_mask = static_cast<std::uint64_t>(mask);
        }
      }
#pragma omp critical
      {
        if (local_best > best || (local_best == best && local_mask < best_mask)) {
          best = local_best;
          best_mask = local_mask;
        }
      }
    }
#endif
  } else {
    for (std::uint64_t mask = 0; mask < count; ++mask) {
      const double v = ae_norm(s, signed_molecule(s, seq, scale, mask << 1), tol).value;
      if (v > best) {
        best = v;
        best_mask = mask;
      }
    }
  }
  (void)best_mask;
  return best;
}

// Maximize ae_norm(sum_i lambda_i scale_i (chi_{x1_i} - chi_{x2_i})) over the
// unit sphere of l^{p'} by repeated dual-norm alignment; monotone ascent.
double ascent_wc(const FiniteMetricSpace& s, const PairSequence& seq,
                 const std::vector<double>& scale, double p, const WcOptions& opts,
                 const ToleranceConfig& tol) {
  const std::size_t n = seq.size();
  if (n == 0) return 0.0;
  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double pprime = p > 1.0 ? p / (p - 1.0) : kInf;

  auto project = [&](std::vector<double>& lam) {
    double norm = 0.0;
    if (p > 1.0) {
      for (double l : lam) norm += std::pow(std::abs(l), pprime);
      norm = std::pow(norm, 1.0 / pprime);
    } else {
      for (double l : lam) norm = std::max(norm, std::abs(l));
    }
    if (norm <= 0.0) {
      lam.assign(n, 0.0);
      lam[0] = 1.0;
      return;
    }
    for (double& l : lam) l /= norm;
  };

  double best = 0.0;
  for (int start = 0; start < opts.starts; ++start) {
    std::vector<double> lam(n);
    for (double& l : lam) l = gauss(rng);
    project(lam);

    double value = 0.0;
    for (int iter = 0; iter < 50; ++iter) {
      Molecule m{std::vector<double>(s.size(), 0.0)};
      for (std::size_t i = 0; i < n; ++i) {
        const auto [x1, x2] = seq.pairs[i];
        m.coefficients[x1] += lam[i] * scale[i];
        m.coefficients[x2] -= lam[i] * scale[i];
      }
      const AeNormResult r = ae_norm(s, m, tol);
      const double improved = r.value;
      // Align lambda with the subgradient u_i = scale_i (f(x1_i) - f(x2_i)).
      std::vector<double> u(n);
      for (std::size_t i = 0; i < n; ++i) {
        const auto [x1, x2] = seq.pairs[i];
        u[i] = scale[i] * (r.witness.values[x1] - r.witness.values[x2]);
      }
      std::vector<double> next(n, 0.0);
      if (p > 1.0) {
        double unorm = 0.0;
        for (double ui : u) unorm += std::pow(std::abs(ui), p);
        unorm = std::pow(unorm, 1.0 / p);
        if (unorm <= 1e-15) {
          value = improved;
          break;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const double mag = std::pow(std::abs(u[i]) / unorm, p - 1.0);
          next[i] = (u[i] < 0.0 ? -mag : mag);
        }
      } else {
        for (std::size_t i = 0; i < n; ++i) next[i] = u[i] < 0.0 ? -1.0 : 1.0;
      }
      if (improved <= value + 1e-12 * std::max(1.0, value)) {
        value = std::max(value, improved);
        break;
      }
      value = improved;
      lam = std::move(next);
    }
    best = std::max(best, value);
  }
  return best;
}

}  // namespace

WcResult d_wc(const FiniteMetricSpace& s, const PairSequence& seq, double p,
              const WcOptions& opts, const ToleranceConfig& tol) {
  check_p(p);
  seq.validate(s.size());

  WcResult result;
  result.method = opts.mode;
  if (seq.size() == 0) return result;

  // Per-pair scaling a_i^{1/p} folds the weights into the molecule.
  std::vector<double> scale(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) scale[i] = std::pow(seq.weight(i), 1.0 / p);

  if (opts.mode == WcMode::Exact) {
    if (p != 1.0) {
      throw UnsupportedError("d_wc: Exact mode requires p = 1; use Bracket mode for p > 1");
    }
    if (seq.size() > opts.exact_limit) {
      throw InputError("d_wc: pair count exceeds exact_wc_limit (" +
                       std::to_string(opts.exact_limit) + ")");
    }
    const double v = exact_wc(s, seq, scale, opts.policy, tol);
    result.lower = v;
    result.upper = v;
    return result;
  }

  const double upper = d_ac(s, seq, p);
  const double cc_all = d_cc(s, seq, p, s.all_indices()).value;
  const double heur = ascent_wc(s, seq, scale, p, opts, tol);
  result.lower = std::min(std::max(cc_all, heur), upper);
  result.upper = upper;
  return result;
}

}  // namespace summet
