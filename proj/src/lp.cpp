#include "tvd/lp.hpp"

#include <optional>
#include <stdexcept>

namespace tvd {

namespace {

void check_dimensions(const std::vector<RationalVector>& a, const RationalVector& b, std::size_t n) {
  if (a.size() != b.size()) throw std::invalid_argument("lp: row count of A differs from length of b");
  for (const auto& row : a) {
    if (row.size() != n) throw std::invalid_argument("lp: constraint row has wrong length");
  }
}

bool is_zero_row(const RationalVector& row) {
  for (const auto& v : row) {
    if (sgn(v) != 0) return false;
  }
  return true;
}

// Dense tableau. Column `cols_` of each row holds the right-hand side; the
// objective row stores reduced costs z_j - c_j (entering candidates are
// negative) and the current objective value in its rhs slot.
class Tableau {
 public:
  Tableau(std::vector<RationalVector> rows, std::vector<std::size_t> basis, std::size_t cols)
      : rows_(std::move(rows)), basis_(std::move(basis)), cols_(cols), objective_(cols + 1, Rational(0)) {}

  // Installs "maximize c.x" for columns [0, c.size()); other columns cost 0.
  void set_objective(const RationalVector& c) {
    objective_.assign(cols_ + 1, Rational(0));
    for (std::size_t j = 0; j < c.size(); ++j) objective_[j] = -c[j];
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const std::size_t bj = basis_[i];
      const Rational cb = bj < c.size() ? c[bj] : Rational(0);
      if (sgn(cb) == 0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) {
        if (sgn(rows_[i][j]) != 0) objective_[j] += cb * rows_[i][j];
      }
    }
  }

  // Runs simplex over columns [0, active_cols). Returns false if unbounded.
  bool optimize(std::size_t active_cols) {
    for (;;) {
      std::optional<std::size_t> entering;
      for (std::size_t j = 0; j < active_cols; ++j) {
        if (sgn(objective_[j]) < 0) {
          entering = j;
          break;
        }
      }
      if (!entering) return true;

      std::optional<std::size_t> leaving;
      Rational best_ratio;
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        const Rational& a = rows_[i][*entering];
        if (sgn(a) <= 0) continue;
        Rational ratio = rows_[i][cols_] / a;
        if (!leaving || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[*leaving])) {
          leaving = i;
          best_ratio = std::move(ratio);
        }
      }
      if (!leaving) return false;
      pivot(*leaving, *entering);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    const Rational inv = 1 / rows_[r][c];
    for (auto& v : rows_[r]) {
      if (sgn(v) != 0) v *= inv;
    }
    auto eliminate = [&](RationalVector& row) {
      if (sgn(row[c]) == 0) return;
      const Rational factor = row[c];
      for (std::size_t j = 0; j <= cols_; ++j) {
        if (sgn(rows_[r][j]) != 0) row[j] -= factor * rows_[r][j];
      }
    };
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i != r) eliminate(rows_[i]);
    }
    eliminate(objective_);
    basis_[r] = c;
  }

  // Pivots basic columns >= first_artificial out of the basis where possible
  // and drops the rows where it is not (those rows are redundant).
  void expel(std::size_t first_artificial) {
    for (std::size_t i = 0; i < rows_.size();) {
      if (basis_[i] < first_artificial) {
        ++i;
        continue;
      }
      std::optional<std::size_t> col;
      for (std::size_t j = 0; j < first_artificial; ++j) {
        if (sgn(rows_[i][j]) != 0) {
          col = j;
          break;
        }
      }
      if (col) {
        pivot(i, *col);
        ++i;
      } else {
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
  }

  const Rational& objective_value() const { return objective_[cols_]; }

  RationalVector solution(std::size_t n) const {
    RationalVector x(n, Rational(0));
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (basis_[i] < n) x[basis_[i]] = rows_[i][cols_];
    }
    return x;
  }

 private:
  std::vector<RationalVector> rows_;
  std::vector<std::size_t> basis_;
  std::size_t cols_;
  RationalVector objective_;
};

// Phase 1: builds [A | I | b] with b >= 0 and minimizes the artificial sum.
// Returns the tableau positioned at a basic feasible solution with no
// artificial columns in the basis, or nullopt if infeasible.
std::optional<Tableau> phase_one(const std::vector<RationalVector>& a, const RationalVector& b, std::size_t n) {
  std::vector<RationalVector> kept_rows;
  RationalVector kept_rhs;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (is_zero_row(a[i])) {
      if (sgn(b[i]) != 0) return std::nullopt;
      continue;
    }
    kept_rows.push_back(a[i]);
    kept_rhs.push_back(b[i]);
  }

  const std::size_t m = kept_rows.size();
  const std::size_t cols = n + m;
  std::vector<RationalVector> rows(m, RationalVector(cols + 1, Rational(0)));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    const bool flip = sgn(kept_rhs[i]) < 0;
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = flip ? Rational(-kept_rows[i][j]) : kept_rows[i][j];
    rows[i][n + i] = 1;
    rows[i][cols] = flip ? Rational(-kept_rhs[i]) : kept_rhs[i];
    basis[i] = n + i;
  }

  Tableau tableau(std::move(rows), std::move(basis), cols);
  RationalVector phase_cost(cols, Rational(0));
  for (std::size_t j = n; j < cols; ++j) phase_cost[j] = -1;
  tableau.set_objective(phase_cost);
  tableau.optimize(cols);  // bounded below by zero
  if (sgn(tableau.objective_value()) != 0) return std::nullopt;
  tableau.expel(n);
  return tableau;
}

}  // namespace

LpOutcome lp_maximize(const LinearProgram& lp) {
  const std::size_t n = lp.num_variables();
  check_dimensions(lp.constraints, lp.rhs, n);

  auto tableau = phase_one(lp.constraints, lp.rhs, n);
  if (!tableau) return LpOutcome{LpStatus::Infeasible, Rational(0), {}};

  tableau->set_objective(lp.objective);
  if (!tableau->optimize(n)) return LpOutcome{LpStatus::Unbounded, Rational(0), {}};

  LpOutcome out;
  out.status = LpStatus::Optimal;
  out.witness = tableau->solution(n);
  out.optimum = dot(lp.objective, out.witness);
  return out;
}

Feasibility lp_feasible(const std::vector<RationalVector>& constraints, const RationalVector& rhs,
                        std::size_t num_variables) {
  check_dimensions(constraints, rhs, num_variables);
  auto tableau = phase_one(constraints, rhs, num_variables);
  if (!tableau) return Feasibility{false, {}};
  return Feasibility{true, tableau->solution(num_variables)};
}

}  // namespace tvd
