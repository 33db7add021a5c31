#pragma once

// Numerical fixed point of
//
//   f(x) = 1/(2 theta) f(theta x - (theta - 1)/2) + 1/(2 theta) f(theta x + (theta - 1)/2)
//
// on [-1/2, 1/2], with f(x) = 2|x| outside. The operator is a contraction with
// factor 1/theta in the sup norm. The distance between p1 and p2 in the
// Bernoulli chain is d_theta(x) = 1/2 + f(x)/2.
//
// f is sampled on a uniform odd-sized grid and evaluated between samples by
// linear interpolation. For singular theta (e.g. Pisot numbers) the
// interpolation error is not bounded rigorously.

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <vector>

namespace tvd::bernoulli {

class GridFunction {
 public:
  /// The boundary extension f(x) = 2|x| sampled on `grid_points` points.
  /// Throws std::invalid_argument unless theta > 1 and grid_points is odd and >= 3.
  GridFunction(double theta, std::size_t grid_points);

  double theta() const { return theta_; }
  std::size_t size() const { return values_.size(); }
  double point(std::size_t i) const;
  double value(std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& mutable_values() { return values_; }

  /// Linear interpolation inside [-1/2, 1/2]; 2|x| outside.
  double operator()(double x) const;

 private:
  double theta_;
  std::vector<double> values_;
};

/// One application of the operator. Endpoints take the boundary value 1 and
/// the negative half mirrors the positive half.
GridFunction apply_operator(const GridFunction& g);

/// max_i |a_i - b_i|
double sup_distance(const GridFunction& a, const GridFunction& b);

struct FixedPoint {
  GridFunction f;
  std::vector<double> changes;  // sup-norm change of each iteration
  bool converged = false;       // last change <= tol
};

/// Iterates from 2|x| until the sup-change is <= tol or
/// ceil(log(2/tol) / log(theta)) iterations have run.
FixedPoint solve_f(double theta, std::size_t grid_points, double tol);

inline constexpr std::size_t kDefaultGridPoints = 4097;
inline constexpr double kDefaultTolerance = 1e-9;

/// 1/2 + f(x)/2. Throws std::invalid_argument unless |x| <= 1/2.
double d_theta(double theta, double x, std::size_t grid_points = kDefaultGridPoints,
               double tol = kDefaultTolerance);
double d_theta(const GridFunction& f, double x);

/// Writes "x,f,d" rows, one per grid point.
void write_csv(std::ostream& out, const GridFunction& f);

}  // namespace tvd::bernoulli
