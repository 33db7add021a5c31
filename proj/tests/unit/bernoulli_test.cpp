#include "tvd/bernoulli.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

namespace tvd::bernoulli {
namespace {

double exact_f2(double x) { return 2 * x * x + 0.5; }

TEST(GridFunction, InitialGuessAndGrid) {
  const GridFunction g(2.0, 5);
  EXPECT_EQ(g.size(), 5u);
  EXPECT_DOUBLE_EQ(g.point(0), -0.5);
  EXPECT_DOUBLE_EQ(g.point(2), 0.0);
  EXPECT_DOUBLE_EQ(g.point(4), 0.5);
  EXPECT_DOUBLE_EQ(g.value(1), 0.5);
  EXPECT_DOUBLE_EQ(g(0.125), 0.25);
  EXPECT_DOUBLE_EQ(g(2.0), 4.0);
  EXPECT_DOUBLE_EQ(g(-0.75), 1.5);
}

TEST(GridFunction, RejectsBadParameters) {
  EXPECT_THROW(GridFunction(1.0, 5), std::invalid_argument);
  EXPECT_THROW(GridFunction(0.5, 5), std::invalid_argument);
  EXPECT_THROW(GridFunction(2.0, 4), std::invalid_argument);
  EXPECT_THROW(GridFunction(2.0, 1), std::invalid_argument);
}

TEST(ApplyOperator, KnownFixedPointForThetaTwo) {
  GridFunction g(2.0, 1025);
  for (std::size_t i = 0; i < g.size(); ++i) g.mutable_values()[i] = exact_f2(g.point(i));
  const auto s = apply_operator(g);
  // theta = 2 maps grid points onto grid points; only rounding remains.
  EXPECT_LE(sup_distance(s, g), 1e-12);
}

TEST(ApplyOperator, EndpointsStayOne) {
  for (double theta : {1.3, 2.0, 3.0, 7.5}) {
    GridFunction g(theta, 101);
    for (int k = 0; k < 5; ++k) g = apply_operator(g);
    EXPECT_DOUBLE_EQ(g.value(0), 1.0);
    EXPECT_DOUBLE_EQ(g.value(100), 1.0);
    // The formula itself returns 1 at x = 1/2 when g(1/2) = 1.
    const double x = 0.5;
    EXPECT_NEAR((g(theta * x - (theta - 1) / 2) + g(theta * x + (theta - 1) / 2)) / (2 * theta), 1.0, 1e-12);
  }
}

TEST(ApplyOperator, ContractsByOneOverTheta) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(0.0, 2.0);
  for (double theta : {1.2, 1.5, 2.0, 2.5, 3.0}) {
    for (int trial = 0; trial < 10; ++trial) {
      GridFunction g(theta, 257), h(theta, 257);
      for (std::size_t i = 1; i <= 128; ++i) {
        g.mutable_values()[i] = g.mutable_values()[256 - i] = unit(rng);
        h.mutable_values()[i] = h.mutable_values()[256 - i] = unit(rng);
      }
      const double before = sup_distance(g, h);
      const double after = sup_distance(apply_operator(g), apply_operator(h));
      EXPECT_LE(after, before / theta + 1e-12);
    }
  }
}

TEST(SolveF, ThetaTwoMatchesClosedForm) {
  const auto fp = solve_f(2.0, 4097, 1e-9);
  EXPECT_TRUE(fp.converged);
  double err = 0;
  for (std::size_t i = 0; i < fp.f.size(); ++i) err = std::max(err, std::abs(fp.f.value(i) - exact_f2(fp.f.point(i))));
  EXPECT_LE(err, 1e-6);
}

TEST(SolveF, ThetaThreeAtZero) {
  const auto fp = solve_f(3.0, 4097, 1e-9);
  EXPECT_NEAR(fp.f(0.0), 2.0 / 3.0, 1e-6);
}

TEST(SolveF, EndpointsSymmetryAndNonnegativity) {
  for (double theta : {1.5, (1 + std::sqrt(5.0)) / 2, 2.0, 4.0}) {
    const auto fp = solve_f(theta, 1025, 1e-8);
    const auto& v = fp.f.values();
    EXPECT_EQ(v.front(), 1.0);
    EXPECT_EQ(v.back(), 1.0);
    for (std::size_t i = 0; i < v.size(); ++i) {
      EXPECT_EQ(v[i], v[v.size() - 1 - i]);
      EXPECT_GE(v[i], 0.0);
    }
  }
}

TEST(SolveF, ChangesShrinkGeometrically) {
  for (double theta : {1.5, 2.0, 3.0}) {
    const auto fp = solve_f(theta, 2049, 1e-10);
    ASSERT_GE(fp.changes.size(), 2u);
    for (std::size_t k = 1; k < fp.changes.size(); ++k) {
      EXPECT_LE(fp.changes[k], fp.changes[k - 1] / theta + 1e-12) << "theta " << theta << " step " << k;
    }
  }
}

TEST(SolveF, IterationCap) {
  // A huge tolerance stops after the first iteration.
  const auto fp = solve_f(2.0, 101, 10.0);
  EXPECT_EQ(fp.changes.size(), 1u);
  EXPECT_THROW(solve_f(2.0, 101, 0.0), std::invalid_argument);
  EXPECT_THROW(solve_f(1.0, 101, 1e-6), std::invalid_argument);
}

TEST(DTheta, Examples) {
  EXPECT_NEAR(d_theta(2.0, 0.3), 0.84, 1e-6);
  EXPECT_NEAR(d_theta(3.0, 0.0), 5.0 / 6.0, 1e-6);
  for (double theta : {1.5, 2.0, 3.0}) {
    EXPECT_DOUBLE_EQ(d_theta(theta, 0.5), 1.0);
    EXPECT_DOUBLE_EQ(d_theta(theta, -0.5), 1.0);
  }
  EXPECT_THROW(d_theta(2.0, 0.6), std::invalid_argument);
  EXPECT_THROW(d_theta(2.0, -0.51), std::invalid_argument);
}

TEST(WriteCsv, HeaderAndRows) {
  const auto fp = solve_f(2.0, 5, 1e-9);
  std::ostringstream out;
  write_csv(out, fp.f);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "x,f,d");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 5);
  EXPECT_NE(out.str().find("0,0.5,0.75"), std::string::npos);
}

}  // namespace
}  // namespace tvd::bernoulli
