#include "tvd/lp.hpp"

#include <gtest/gtest.h>

#include <optional>
#include <random>

namespace tvd {
namespace {

Rational q(long p, long d = 1) { return Rational(p, d); }

void expect_valid_witness(const LinearProgram& lp, const LpOutcome& out) {
  ASSERT_EQ(out.status, LpStatus::Optimal);
  ASSERT_EQ(out.witness.size(), lp.num_variables());
  for (const auto& x : out.witness) EXPECT_GE(sgn(x), 0);
  for (std::size_t i = 0; i < lp.constraints.size(); ++i) EXPECT_EQ(dot(lp.constraints[i], out.witness), lp.rhs[i]);
  EXPECT_EQ(dot(lp.objective, out.witness), out.optimum);
}

TEST(LpMaximize, SingleEquality) {
  const LinearProgram lp{{q(1), q(0)}, {{q(1), q(1)}}, {q(1)}};
  const auto out = lp_maximize(lp);
  expect_valid_witness(lp, out);
  EXPECT_EQ(out.optimum, 1);
  EXPECT_EQ(out.witness, (RationalVector{q(1), q(0)}));
}

TEST(LpMaximize, NegativeRightHandSideIsInfeasible) {
  EXPECT_EQ(lp_maximize(LinearProgram{{q(1)}, {{q(1)}}, {q(-1)}}).status, LpStatus::Infeasible);
}

TEST(LpMaximize, TwoByTwoSystem) {
  const LinearProgram lp{{q(1), q(1)}, {{q(1), q(2)}, {q(2), q(1)}}, {q(2), q(2)}};
  const auto out = lp_maximize(lp);
  expect_valid_witness(lp, out);
  EXPECT_EQ(out.optimum, q(4, 3));
  EXPECT_EQ(out.witness, (RationalVector{q(2, 3), q(2, 3)}));
}

TEST(LpMaximize, Unbounded) {
  // x1 - x2 = 0, maximize x1.
  EXPECT_EQ(lp_maximize(LinearProgram{{q(1), q(0)}, {{q(1), q(-1)}}, {q(0)}}).status, LpStatus::Unbounded);
}

TEST(LpMaximize, NoConstraints) {
  EXPECT_EQ(lp_maximize(LinearProgram{{q(0), q(-1)}, {}, {}}).optimum, 0);
  EXPECT_EQ(lp_maximize(LinearProgram{{q(1)}, {}, {}}).status, LpStatus::Unbounded);
}

TEST(LpMaximize, RedundantAndZeroRows) {
  const LinearProgram lp{{q(1), q(2), q(0)},
                         {{q(1), q(1), q(1)}, {q(2), q(2), q(2)}, {q(0), q(0), q(0)}},
                         {q(3), q(6), q(0)}};
  const auto out = lp_maximize(lp);
  expect_valid_witness(lp, out);
  EXPECT_EQ(out.optimum, 6);
}

TEST(LpMaximize, InconsistentZeroRowIsInfeasible) {
  EXPECT_EQ(lp_maximize(LinearProgram{{q(1)}, {{q(0)}}, {q(1)}}).status, LpStatus::Infeasible);
}

TEST(LpMaximize, DimensionErrors) {
  EXPECT_THROW(lp_maximize(LinearProgram{{q(1), q(1)}, {{q(1)}}, {q(1)}}), std::invalid_argument);
  EXPECT_THROW(lp_maximize(LinearProgram{{q(1)}, {{q(1)}}, {}}), std::invalid_argument);
}

// Beale's example cycles under the textbook largest-coefficient rule.
TEST(LpMaximize, BealeCyclingExampleTerminates) {
  const LinearProgram lp{
      {q(0), q(0), q(0), q(3, 4), q(-20), q(1, 2), q(-6)},
      {{q(1), q(0), q(0), q(1, 4), q(-8), q(-1), q(9)},
       {q(0), q(1), q(0), q(1, 2), q(-12), q(-1, 2), q(3)},
       {q(0), q(0), q(1), q(0), q(0), q(1), q(0)}},
      {q(0), q(0), q(1)}};
  const auto out = lp_maximize(lp);
  expect_valid_witness(lp, out);
  EXPECT_EQ(out.optimum, q(5, 4));
  EXPECT_EQ(out.witness, (RationalVector{q(3, 4), q(0), q(0), q(1), q(0), q(1), q(0)}));
}

TEST(LpFeasible, Examples) {
  EXPECT_TRUE(lp_feasible({{q(1), q(1)}}, {q(1)}, 2).feasible);
  EXPECT_FALSE(lp_feasible({{q(1), q(1)}}, {q(-1)}, 2).feasible);
  const auto f = lp_feasible({{q(1), q(-1)}, {q(1), q(1)}}, {q(0), q(2)}, 2);
  ASSERT_TRUE(f.feasible);
  EXPECT_EQ(f.witness, (RationalVector{q(1), q(1)}));
  EXPECT_TRUE(lp_feasible({}, {}, 3).feasible);
}

// Solves the square system B y = b by elimination; nullopt if singular.
std::optional<RationalVector> solve_square(std::vector<RationalVector> a, RationalVector b) {
  const std::size_t m = a.size();
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t piv = col;
    while (piv < m && sgn(a[piv][col]) == 0) ++piv;
    if (piv == m) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == col || sgn(a[r][col]) == 0) continue;
      const Rational f = a[r][col] / a[col][col];
      for (std::size_t j = 0; j < m; ++j) a[r][j] -= f * a[col][j];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t i = 0; i < m; ++i) b[i] /= a[i][i];
  return b;
}

// Best objective over all basic feasible solutions (full-row-rank A).
std::optional<Rational> best_vertex(const LinearProgram& lp) {
  const std::size_t m = lp.constraints.size(), n = lp.num_variables();
  std::optional<Rational> best;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != m) continue;
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < n; ++j) {
      if (mask & (1u << j)) cols.push_back(j);
    }
    std::vector<RationalVector> a(m, RationalVector(m));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t k = 0; k < m; ++k) a[i][k] = lp.constraints[i][cols[k]];
    }
    const auto y = solve_square(a, lp.rhs);
    if (!y) continue;
    bool nonneg = true;
    Rational value = 0;
    for (std::size_t k = 0; k < m; ++k) {
      nonneg = nonneg && sgn((*y)[k]) >= 0;
      value += lp.objective[cols[k]] * (*y)[k];
    }
    if (nonneg && (!best || value > *best)) best = value;
  }
  return best;
}

bool full_row_rank(std::vector<RationalVector> rows) {
  std::size_t rank = 0;
  const std::size_t n = rows.empty() ? 0 : rows[0].size();
  for (std::size_t col = 0; col < n && rank < rows.size(); ++col) {
    std::size_t piv = rank;
    while (piv < rows.size() && sgn(rows[piv][col]) == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      const Rational f = rows[r][col] / rows[rank][col];
      for (std::size_t j = 0; j < n; ++j) rows[r][j] -= f * rows[rank][j];
    }
    ++rank;
  }
  return rank == rows.size();
}

TEST(LpProperties, MatchesVertexEnumerationOnBoundedPrograms) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> small(-3, 3), pos(0, 3);
  int optimal = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = 1 + trial % 3, n = m + 1 + trial % 3;
    LinearProgram lp;
    for (std::size_t j = 0; j < n; ++j) lp.objective.push_back(q(small(rng)));
    RationalVector x0;
    for (std::size_t j = 0; j < n; ++j) x0.push_back(q(pos(rng)));
    for (std::size_t i = 0; i < m; ++i) {
      RationalVector row;
      for (std::size_t j = 0; j < n; ++j) row.push_back(q(small(rng)));
      lp.rhs.push_back(dot(row, x0));
      lp.constraints.push_back(std::move(row));
    }
    // A bounding row sum(x) + s = 10 keeps the feasible set a polytope.
    lp.objective.push_back(0);
    for (auto& row : lp.constraints) row.push_back(0);
    RationalVector bound(n + 1, q(1));
    lp.constraints.push_back(bound);
    lp.rhs.push_back(q(10));
    if (sum(x0) > 10) continue;

    const auto out = lp_maximize(lp);
    ASSERT_EQ(out.status, LpStatus::Optimal);
    expect_valid_witness(lp, out);
    // Weak-duality style spot check against the known feasible point.
    RationalVector feasible = x0;
    feasible.push_back(q(10) - sum(x0));
    EXPECT_LE(dot(lp.objective, feasible), out.optimum);
    if (full_row_rank(lp.constraints)) {
      const auto best = best_vertex(lp);
      ASSERT_TRUE(best.has_value());
      EXPECT_EQ(*best, out.optimum);
    }
    ++optimal;
  }
  EXPECT_GT(optimal, 100);
}

}  // namespace
}  // namespace tvd
