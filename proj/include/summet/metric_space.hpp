#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "summet/errors.hpp"
#include "summet/util.hpp"

namespace summet {

// Finite (pseudo)metric space with a distinguished base point.
struct FiniteMetricSpace {
  std::vector<std::string> ids;
  Matrix d;
  std::size_t base = 0;
  bool pseudometric = false;

  std::size_t size() const { return ids.size(); }

  std::size_t index_of(const std::string& id) const {
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (ids[i] == id) return i;
    }
    throw InputError("unknown point id '" + id + "'");
  }

  std::vector<std::size_t> all_indices() const {
    std::vector<std::size_t> v(size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
    return v;
  }
};

// Finitely supported coefficients over the points, summing to zero.
struct Molecule {
  std::vector<double> coefficients;

  double sum() const {
    double s = 0.0;
    for (double c : coefficients) s += c;
    return s;
  }
};

// w * (chi_x - chi_y) on an n-point space.
inline Molecule pair_molecule(std::size_t n, std::size_t x, std::size_t y, double w = 1.0) {
  Molecule m{std::vector<double>(n, 0.0)};
  m.coefficients[x] += w;
  m.coefficients[y] -= w;
  return m;
}

// Two aligned sequences given as index pairs, with nonnegative weights
// (implicitly all ones when empty).
struct PairSequence {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<double> weights;

  std::size_t size() const { return pairs.size(); }

  double weight(std::size_t i) const { return weights.empty() ? 1.0 : weights[i]; }

  void validate(std::size_t n_points) const {
    if (!weights.empty() && weights.size() != pairs.size()) {
      throw InputError("sequence: weights length differs from pairs length");
    }
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (pairs[i].first >= n_points || pairs[i].second >= n_points) {
        throw InputError("sequence: pair index out of range");
      }
      if (!weights.empty() && weights[i] < 0.0) {
        throw InputError("sequence: negative weight");
      }
    }
  }
};

// Total real-valued function on the points.
struct LipschitzFunctional {
  std::vector<double> values;
};

using IndexFunction = LipschitzFunctional;

// f_y = d(., y) - d(y, base): a 1-Lipschitz functional vanishing at the base point.
inline LipschitzFunctional distance_functional(const FiniteMetricSpace& s, std::size_t y) {
  LipschitzFunctional f{std::vector<double>(s.size(), 0.0)};
  for (std::size_t x = 0; x < s.size(); ++x) f.values[x] = s.d(x, y) - s.d(y, s.base);
  return f;
}

struct ValidationIssue {
  enum class Kind {
    NegativeEntry,
    NonzeroDiagonal,
    Asymmetric,
    TriangleViolation,
    ZeroOffDiagonal,
  };
  Kind kind;
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;  // triangle witness midpoint
  double amount = 0.0;

  std::string describe(const FiniteMetricSpace& s) const;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool valid() const { return issues.empty(); }
};

// Checks the (pseudo)metric axioms and reports every violation with a witness.
ValidationReport validate_metric(const FiniteMetricSpace& s, double metric_tol = 1e-7);

}  // namespace summet
