#include "summet/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace summet {

void LinearProgram::check_shape() const {
  const std::size_t nv = num_vars();
  if (lower.size() != nv || upper.size() != nv) {
    throw InputError("lp: bounds length does not match objective length");
  }
  if (relations.size() != rows.size() || rhs.size() != rows.size()) {
    throw InputError("lp: rows, relations and rhs must have equal length");
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != nv) {
      std::ostringstream msg;
      msg << "lp: row " << i << " has " << rows[i].size() << " coefficients, expected " << nv;
      throw InputError(msg.str());
    }
  }
  for (std::size_t j = 0; j < nv; ++j) {
    if (std::isnan(lower[j]) || std::isnan(upper[j])) throw InputError("lp: NaN bound");
  }
}

void dump_lp(const LinearProgram& lp, std::ostream& os) {
  os << "maximize";
  for (std::size_t j = 0; j < lp.num_vars(); ++j) os << ' ' << lp.objective[j] << "*x" << j;
  os << "\nsubject to\n";
  for (std::size_t i = 0; i < lp.num_rows(); ++i) {
    os << "  r" << i << ':';
    for (std::size_t j = 0; j < lp.num_vars(); ++j) {
      if (lp.rows[i][j] != 0.0) os << ' ' << lp.rows[i][j] << "*x" << j;
    }
    const char* rel = lp.relations[i] == Relation::LessEq    ? "<="
                      : lp.relations[i] == Relation::Equal   ? "=="
                                                             : ">=";
    os << ' ' << rel << ' ' << lp.rhs[i] << '\n';
  }
  os << "bounds\n";
  for (std::size_t j = 0; j < lp.num_vars(); ++j) {
    os << "  " << lp.lower[j] << " <= x" << j << " <= " << lp.upper[j] << '\n';
  }
}

namespace {

// Computational form: maximize c'z  s.t.  A z = b,  z >= 0,  b >= 0.
// Columns hold structural and slack variables; artificials are virtual
// (column e_r for row r) and live in the solver only.
struct StdForm {
  std::size_t m = 0;          // rows (user rows then bound rows)
  std::size_t n = 0;          // structural + slack columns
  std::size_t user_rows = 0;  // duals reported for these only
  std::vector<std::vector<double>> cols;  // column-major, length m each
  std::vector<double> b;
  std::vector<double> c;
  double offset = 0.0;               // objective constant from variable shifts
  std::vector<double> row_sign;      // +-1 per row, from rhs normalization
  std::vector<int> row_slack;        // slack column of each row, -1 if none
  std::vector<double> row_slack_coef;

  struct VarMap {
    std::size_t pos = 0;
    std::size_t neg = 0;  // used only by kind 2
    int kind = 0;         // 0: x = shift + z, 1: x = shift - z, 2: x = z_pos - z_neg
    double shift = 0.0;
  };
  std::vector<VarMap> vars;
};

StdForm build_std_form(const LinearProgram& lp) {
  const std::size_t nv = lp.num_vars();
  const std::size_t nr = lp.num_rows();

  StdForm sf;
  sf.vars.resize(nv);
  std::size_t ncols = 0;
  std::vector<std::size_t> bounded_vars;  // vars needing an upper-bound row
  for (std::size_t j = 0; j < nv; ++j) {
    const double lo = lp.lower[j];
    const double up = lp.upper[j];
    auto& v = sf.vars[j];
    if (std::isinf(lo) && std::isinf(up)) {
      v = {ncols, ncols + 1, 2, 0.0};
      ncols += 2;
    } else if (!std::isinf(lo)) {
      v = {ncols, 0, 0, lo};
      ++ncols;
      if (!std::isinf(up)) bounded_vars.push_back(j);
    } else {
      v = {ncols, 0, 1, up};
      ++ncols;
    }
  }

  const std::size_t m = nr + bounded_vars.size();
  std::size_t nslack = bounded_vars.size();
  for (std::size_t i = 0; i < nr; ++i) {
    if (lp.relations[i] != Relation::Equal) ++nslack;
  }

  sf.m = m;
  sf.n = ncols + nslack;
  sf.user_rows = nr;
  sf.cols.assign(sf.n, std::vector<double>(m, 0.0));
  sf.b.assign(m, 0.0);
  sf.c.assign(sf.n, 0.0);
  sf.row_sign.assign(m, 1.0);
  sf.row_slack.assign(m, -1);
  sf.row_slack_coef.assign(m, 0.0);

  // Structural columns and shifted rhs.
  for (std::size_t i = 0; i < nr; ++i) {
    double bi = lp.rhs[i];
    for (std::size_t j = 0; j < nv; ++j) {
      const double a = lp.rows[i][j];
      if (a == 0.0) continue;
      const auto& v = sf.vars[j];
      switch (v.kind) {
        case 0:
          sf.cols[v.pos][i] += a;
          bi -= a * v.shift;
          break;
        case 1:
          sf.cols[v.pos][i] -= a;
          bi -= a * v.shift;
          break;
        default:
          sf.cols[v.pos][i] += a;
          sf.cols[v.neg][i] -= a;
      }
    }
    sf.b[i] = bi;
  }

  // Objective.
  for (std::size_t j = 0; j < nv; ++j) {
    const double cj = lp.objective[j];
    const auto& v = sf.vars[j];
    switch (v.kind) {
      case 0:
        sf.c[v.pos] += cj;
        sf.offset += cj * v.shift;
        break;
      case 1:
        sf.c[v.pos] -= cj;
        sf.offset += cj * v.shift;
        break;
      default:
        sf.c[v.pos] += cj;
        sf.c[v.neg] -= cj;
    }
  }

  // Upper-bound rows: z_pos <= up - lo.
  for (std::size_t t = 0; t < bounded_vars.size(); ++t) {
    const std::size_t j = bounded_vars[t];
    const std::size_t row = nr + t;
    sf.cols[sf.vars[j].pos][row] = 1.0;
    sf.b[row] = lp.upper[j] - lp.lower[j];
  }

  // Slack columns.
  std::size_t scol = ncols;
  for (std::size_t i = 0; i < nr; ++i) {
    if (lp.relations[i] == Relation::Equal) continue;
    const double coef = lp.relations[i] == Relation::LessEq ? 1.0 : -1.0;
    sf.cols[scol][i] = coef;
    sf.row_slack[i] = static_cast<int>(scol);
    sf.row_slack_coef[i] = coef;
    ++scol;
  }
  for (std::size_t t = 0; t < bounded_vars.size(); ++t) {
    const std::size_t row = nr + t;
    sf.cols[scol][row] = 1.0;
    sf.row_slack[row] = static_cast<int>(scol);
    sf.row_slack_coef[row] = 1.0;
    ++scol;
  }

  // Normalize rhs >= 0.
  for (std::size_t r = 0; r < m; ++r) {
    if (sf.b[r] < 0.0) {
      sf.b[r] = -sf.b[r];
      sf.row_sign[r] = -1.0;
      for (auto& col : sf.cols) col[r] = -col[r];
      sf.row_slack_coef[r] = -sf.row_slack_coef[r];
    }
  }
  return sf;
}

class Simplex {
 public:
  Simplex(const StdForm& sf, const ToleranceConfig& tol)
      : sf_(sf), tol_(tol), m_(sf.m), n_(sf.n) {}

  LpStatus run() {
    init_basis();
    if (has_artificials_) {
      phase_one_ = true;
      const LpStatus st = iterate();
      if (st != LpStatus::Optimal) return st;  // Infeasible from phase 1
      double art_level = 0.0;
      for (std::size_t r = 0; r < m_; ++r) {
        if (is_artificial(basis_[r])) art_level += std::abs(xb_[r]);
      }
      if (art_level > tol_.feas_tol) return LpStatus::Infeasible;
      drive_out_artificials();
    }
    phase_one_ = false;
    return iterate();
  }

  std::vector<double> primal_std() const {
    std::vector<double> z(n_, 0.0);
    for (std::size_t r = 0; r < m_; ++r) {
      if (!is_artificial(basis_[r])) z[basis_[r]] = xb_[r];
    }
    return z;
  }

  std::vector<double> duals_std() const {
    std::vector<double> y(m_, 0.0);
    for (std::size_t r = 0; r < m_; ++r) {
      const double cb = is_artificial(basis_[r]) ? 0.0 : sf_.c[basis_[r]];
      if (cb == 0.0) continue;
      for (std::size_t k = 0; k < m_; ++k) y[k] += cb * binv_[r * m_ + k];
    }
    return y;
  }

  int iterations() const { return iterations_; }

 private:
  bool is_artificial(std::size_t col) const { return col >= n_; }

  void init_basis() {
    basis_.resize(m_);
    for (std::size_t r = 0; r < m_; ++r) {
      if (sf_.row_slack[r] >= 0 && sf_.row_slack_coef[r] > 0.0) {
        basis_[r] = static_cast<std::size_t>(sf_.row_slack[r]);
      } else {
        basis_[r] = n_ + r;  // artificial, column e_r
        has_artificials_ = true;
      }
    }
    binv_.assign(m_ * m_, 0.0);
    for (std::size_t r = 0; r < m_; ++r) binv_[r * m_ + r] = 1.0;
    update_xb();
  }

  void update_xb() {
    xb_.assign(m_, 0.0);
    for (std::size_t r = 0; r < m_; ++r) {
      double v = 0.0;
      for (std::size_t k = 0; k < m_; ++k) v += binv_[r * m_ + k] * sf_.b[k];
      xb_[r] = v;
    }
  }

  double column_cost(std::size_t col) const {
    if (phase_one_) return is_artificial(col) ? -1.0 : 0.0;
    return is_artificial(col) ? 0.0 : sf_.c[col];
  }

  std::vector<double> pricing_duals() const {
    std::vector<double> y(m_, 0.0);
    for (std::size_t r = 0; r < m_; ++r) {
      const double cb = column_cost(basis_[r]);
      if (cb == 0.0) continue;
      for (std::size_t k = 0; k < m_; ++k) y[k] += cb * binv_[r * m_ + k];
    }
    return y;
  }

  // Bland: smallest column index with positive reduced cost.
  long pick_entering(const std::vector<double>& y, const std::vector<char>& in_basis) const {
    for (std::size_t j = 0; j < n_; ++j) {
      if (in_basis[j]) continue;
      double rj = phase_one_ ? 0.0 : sf_.c[j];
      const auto& col = sf_.cols[j];
      for (std::size_t r = 0; r < m_; ++r) rj -= y[r] * col[r];
      if (rj > tol_.feas_tol) return static_cast<long>(j);
    }
    return -1;
  }

  std::vector<double> ftran(std::size_t col) const {
    std::vector<double> a(m_, 0.0);
    const auto& c = sf_.cols[col];
    for (std::size_t r = 0; r < m_; ++r) {
      double v = 0.0;
      for (std::size_t k = 0; k < m_; ++k) v += binv_[r * m_ + k] * c[k];
      a[r] = v;
    }
    return a;
  }

  // Min-ratio with Bland tie-break on the leaving variable index. Rows whose
  // basic variable is an artificial at level zero are forced out at ratio 0
  // (either pivot sign), which keeps artificials at zero in phase 2.
  long pick_leaving(const std::vector<double>& a) const {
    long leave = -1;
    double best_ratio = kInf;
    std::size_t best_var = 0;
    for (std::size_t r = 0; r < m_; ++r) {
      double ratio;
      const bool art_zero =
          is_artificial(basis_[r]) && xb_[r] <= tol_.feas_tol && std::abs(a[r]) > tol_.pivot_tol;
      if (art_zero) {
        ratio = 0.0;
      } else if (a[r] > tol_.pivot_tol) {
        ratio = std::max(0.0, xb_[r] / a[r]);
      } else {
        continue;
      }
      if (ratio < best_ratio || (ratio == best_ratio && basis_[r] < best_var)) {
        best_ratio = ratio;
        best_var = basis_[r];
        leave = static_cast<long>(r);
      }
    }
    return leave;
  }

  void refactorize() {
    // Gauss-Jordan inverse of the basis matrix with partial pivoting.
    std::vector<double> mat(m_ * m_, 0.0);
    for (std::size_t r = 0; r < m_; ++r) {
      const std::size_t col = basis_[r];
      if (is_artificial(col)) {
        mat[(col - n_) * m_ + r] = 1.0;
      } else {
        const auto& c = sf_.cols[col];
        for (std::size_t k = 0; k < m_; ++k) mat[k * m_ + r] = c[k];
      }
    }
    std::vector<double> inv(m_ * m_, 0.0);
    for (std::size_t r = 0; r < m_; ++r) inv[r * m_ + r] = 1.0;
    for (std::size_t p = 0; p < m_; ++p) {
      std::size_t piv_row = p;
      double piv_val = std::abs(mat[p * m_ + p]);
      for (std::size_t r = p + 1; r < m_; ++r) {
        const double v = std::abs(mat[r * m_ + p]);
        if (v > piv_val) {
          piv_val = v;
          piv_row = r;
        }
      }
      if (piv_val < tol_.pivot_tol) {
        throw NumericalFailure("lp: singular basis during refactorization (pivot " +
                               std::to_string(piv_val) + " at column " + std::to_string(p) + ")");
      }
      if (piv_row != p) {
        for (std::size_t k = 0; k < m_; ++k) {
          std::swap(mat[piv_row * m_ + k], mat[p * m_ + k]);
          std::swap(inv[piv_row * m_ + k], inv[p * m_ + k]);
        }
      }
      const double scale = 1.0 / mat[p * m_ + p];
      for (std::size_t k = 0; k < m_; ++k) {
        mat[p * m_ + k] *= scale;
        inv[p * m_ + k] *= scale;
      }
      for (std::size_t r = 0; r < m_; ++r) {
        if (r == p) continue;
        const double f = mat[r * m_ + p];
        if (f == 0.0) continue;
        for (std::size_t k = 0; k < m_; ++k) {
          mat[r * m_ + k] -= f * mat[p * m_ + k];
          inv[r * m_ + k] -= f * inv[p * m_ + k];
        }
      }
    }
    binv_ = std::move(inv);
    update_xb();
  }

  // After phase 1, pivot zero-level artificials out on any usable element of
  // their row. Rows where no element exists are redundant; their artificial
  // stays basic at zero and never moves again.
  void drive_out_artificials() {
    for (std::size_t r = 0; r < m_; ++r) {
      if (!is_artificial(basis_[r])) continue;
      long enter = -1;
      for (std::size_t j = 0; j < n_; ++j) {
        bool basic = false;
        for (std::size_t rr = 0; rr < m_; ++rr) {
          if (basis_[rr] == j) {
            basic = true;
            break;
          }
        }
        if (basic) continue;
        double v = 0.0;
        const auto& col = sf_.cols[j];
        for (std::size_t k = 0; k < m_; ++k) v += binv_[r * m_ + k] * col[k];
        if (std::abs(v) > 1e-9) {
          enter = static_cast<long>(j);
          break;
        }
      }
      if (enter < 0) continue;
      const std::vector<double> a = ftran(static_cast<std::size_t>(enter));
      pivot(r, static_cast<std::size_t>(enter), a);
      ++iterations_;
    }
  }

  void pivot(std::size_t leave_row, std::size_t enter_col, const std::vector<double>& a) {
    const double piv = a[leave_row];
    const double inv_piv = 1.0 / piv;
    for (std::size_t k = 0; k < m_; ++k) binv_[leave_row * m_ + k] *= inv_piv;
    for (std::size_t r = 0; r < m_; ++r) {
      if (r == leave_row) continue;
      const double f = a[r];
      if (f == 0.0) continue;
      for (std::size_t k = 0; k < m_; ++k) {
        binv_[r * m_ + k] -= f * binv_[leave_row * m_ + k];
      }
    }
    basis_[leave_row] = enter_col;
    update_xb();
  }

  LpStatus iterate() {
    const long max_iters = 2000 + 200 * static_cast<long>(m_ + n_);
    std::vector<char> in_basis(n_, 0);
    auto rebuild_in_basis = [&] {
      std::fill(in_basis.begin(), in_basis.end(), 0);
      for (std::size_t r = 0; r < m_; ++r) {
        if (!is_artificial(basis_[r])) in_basis[basis_[r]] = 1;
      }
    };
    rebuild_in_basis();

    long since_refactor = 0;
    while (true) {
      if (iterations_ > max_iters) {
        throw NumericalFailure("lp: iteration limit exceeded (" + std::to_string(iterations_) +
                               " pivots, " + std::to_string(m_) + " rows)");
      }
      const std::vector<double> y = pricing_duals();
      const long enter = pick_entering(y, in_basis);
      if (enter < 0) return LpStatus::Optimal;

      std::vector<double> a = ftran(static_cast<std::size_t>(enter));
      long leave = pick_leaving(a);
      if (leave < 0) {
        if (phase_one_) {
          throw NumericalFailure("lp: phase-1 objective unbounded (numerical breakdown)");
        }
        return LpStatus::Unbounded;
      }
      if (std::abs(a[leave]) < tol_.pivot_tol) {
        refactorize();
        a = ftran(static_cast<std::size_t>(enter));
        if (std::abs(a[leave]) < tol_.pivot_tol) {
          throw NumericalFailure("lp: pivot " + std::to_string(std::abs(a[leave])) +
                                 " below pivot_tol after refactorization (row " +
                                 std::to_string(leave) + ", col " + std::to_string(enter) + ")");
        }
      }
      pivot(static_cast<std::size_t>(leave), static_cast<std::size_t>(enter), a);
      rebuild_in_basis();
      ++iterations_;
      if (++since_refactor >= 128) {
        refactorize();
        since_refactor = 0;
      }
    }
  }

  const StdForm& sf_;
  const ToleranceConfig& tol_;
  std::size_t m_;
  std::size_t n_;
  std::vector<double> binv_;
  std::vector<std::size_t> basis_;
  std::vector<double> xb_;
  bool has_artificials_ = false;
  bool phase_one_ = false;
  int iterations_ = 0;
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, const ToleranceConfig& tol) {
  lp.check_shape();

  // Debug hook: SUMMET_LP_DUMP=<path> appends every model passed in.
  if (const char* dump_path = std::getenv("SUMMET_LP_DUMP")) {
    std::ofstream dump(dump_path, std::ios::app);
    if (dump) {
      dump << "--- lp (" << lp.num_rows() << " rows, " << lp.num_vars() << " vars)\n";
      dump_lp(lp, dump);
    }
  }

  const StdForm sf = build_std_form(lp);

  Simplex solver(sf, tol);
  LpSolution sol;
  sol.status = solver.run();
  sol.iterations = solver.iterations();
  if (sol.status != LpStatus::Optimal) return sol;

  const std::vector<double> z = solver.primal_std();
  sol.primal.assign(lp.num_vars(), 0.0);
  for (std::size_t j = 0; j < lp.num_vars(); ++j) {
    const auto& v = sf.vars[j];
    switch (v.kind) {
      case 0:
        sol.primal[j] = v.shift + z[v.pos];
        break;
      case 1:
        sol.primal[j] = v.shift - z[v.pos];
        break;
      default:
        sol.primal[j] = z[v.pos] - z[v.neg];
    }
  }

  double obj = sf.offset;
  for (std::size_t j = 0; j < sf.n; ++j) obj += sf.c[j] * z[j];
  sol.objective = obj;

  const std::vector<double> y = solver.duals_std();
  sol.dual.assign(lp.num_rows(), 0.0);
  for (std::size_t i = 0; i < lp.num_rows(); ++i) sol.dual[i] = sf.row_sign[i] * y[i];

  double dual_obj = sf.offset;
  for (std::size_t r = 0; r < sf.m; ++r) dual_obj += y[r] * sf.b[r];
  sol.dual_objective = dual_obj;
  return sol;
}

}  // namespace summet
