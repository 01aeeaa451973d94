#pragma once

#include <cstddef>
#include <ostream>
#include <vector>

#include "summet/errors.hpp"
#include "summet/util.hpp"

namespace summet {

enum class Relation { LessEq, Equal, GreaterEq };
enum class LpStatus { Optimal, Infeasible, Unbounded };

struct ToleranceConfig {
  double feas_tol = 1e-9;
  double duality_gap_tol = 1e-7;
  double pivot_tol = 1e-11;
  double metric_tol = 1e-7;
};

// maximize objective'x  subject to  rows[i]'x (relation[i]) rhs[i],
// lower[j] <= x[j] <= upper[j]  (lower may be -inf, upper +inf).
struct LinearProgram {
  std::vector<double> objective;
  std::vector<std::vector<double>> rows;
  std::vector<Relation> relations;
  std::vector<double> rhs;
  std::vector<double> lower;
  std::vector<double> upper;

  explicit LinearProgram(std::size_t num_vars = 0)
      : objective(num_vars, 0.0), lower(num_vars, 0.0), upper(num_vars, kInf) {}

  std::size_t num_vars() const { return objective.size(); }
  std::size_t num_rows() const { return rows.size(); }

  void add_row(std::vector<double> coeffs, Relation rel, double b) {
    rows.push_back(std::move(coeffs));
    relations.push_back(rel);
    rhs.push_back(b);
  }

  void set_free(std::size_t j) {
    lower[j] = -kInf;
    upper[j] = kInf;
  }

  // Throws InputError when the shape invariants are broken.
  void check_shape() const;
};

struct LpSolution {
  LpStatus status = LpStatus::Optimal;
  std::vector<double> primal;
  std::vector<double> dual;  // one per constraint row
  double objective = 0.0;
  double dual_objective = 0.0;
  int iterations = 0;
};

// Deterministic dense revised simplex with Bland's rule.
LpSolution solve_lp(const LinearProgram& lp, const ToleranceConfig& tol = {});

// Human-readable dump, for debugging model construction.
void dump_lp(const LinearProgram& lp, std::ostream& os);

}  // namespace summet
