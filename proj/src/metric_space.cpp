#include "summet/metric_space.hpp"

#include <cmath>
#include <sstream>

namespace summet {

std::string ValidationIssue::describe(const FiniteMetricSpace& s) const {
  std::ostringstream os;
  switch (kind) {
    case Kind::NegativeEntry:
      os << "negative entry d(" << s.ids[i] << "," << s.ids[j] << ") = " << amount;
      break;
    case Kind::NonzeroDiagonal:
      os << "nonzero diagonal d(" << s.ids[i] << "," << s.ids[i] << ") = " << amount;
      break;
    case Kind::Asymmetric:
      os << "asymmetry |d(" << s.ids[i] << "," << s.ids[j] << ") - d(" << s.ids[j] << ","
         << s.ids[i] << ")| = " << amount;
      break;
    case Kind::TriangleViolation:
      os << "triangle violation d(" << s.ids[i] << "," << s.ids[j] << ") > d(" << s.ids[i] << ","
         << s.ids[k] << ") + d(" << s.ids[k] << "," << s.ids[j] << ") by " << amount;
      break;
    case Kind::ZeroOffDiagonal:
      os << "distinct points at distance zero: (" << s.ids[i] << "," << s.ids[j]
         << ") in a space not flagged pseudometric";
      break;
  }
  return os.str();
}

ValidationReport validate_metric(const FiniteMetricSpace& s, double metric_tol) {
  const std::size_t n = s.size();
  if (n == 0) throw InputError("metric space: empty point set");
  if (s.d.rows() != n || s.d.cols() != n) {
    throw InputError("metric space: distance matrix is not square of point-set size");
  }
  if (s.base >= n) throw InputError("metric space: base point index out of range");

  ValidationReport report;
  using Kind = ValidationIssue::Kind;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(s.d(i, i)) > metric_tol) {
      report.issues.push_back({Kind::NonzeroDiagonal, i, i, 0, s.d(i, i)});
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      if (s.d(i, j) < -metric_tol) {
        report.issues.push_back({Kind::NegativeEntry, i, j, 0, s.d(i, j)});
      }
      const double asym = std::abs(s.d(i, j) - s.d(j, i));
      if (asym > metric_tol) {
        report.issues.push_back({Kind::Asymmetric, i, j, 0, asym});
      }
      if (!s.pseudometric && std::abs(s.d(i, j)) <= metric_tol &&
          std::abs(s.d(j, i)) <= metric_tol) {
        report.issues.push_back({Kind::ZeroOffDiagonal, i, j, 0, s.d(i, j)});
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        const double gap = s.d(i, j) - (s.d(i, k) + s.d(k, j));
        if (gap > metric_tol) {
          report.issues.push_back({Kind::TriangleViolation, i, j, k, gap});
        }
      }
    }
  }
  return report;
}

}  // namespace summet
