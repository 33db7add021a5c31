#include "tvd/bernoulli.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace tvd::bernoulli {

GridFunction::GridFunction(double theta, std::size_t grid_points) : theta_(theta) {
  if (!(theta > 1.0)) throw std::invalid_argument("theta must be > 1");
  if (grid_points < 3 || grid_points % 2 == 0) {
    throw std::invalid_argument("grid size must be odd and at least 3");
  }
  values_.resize(grid_points);
  for (std::size_t i = 0; i < grid_points; ++i) values_[i] = 2.0 * std::abs(point(i));
}

double GridFunction::point(std::size_t i) const {
  // (i - c) / (n - 1) with c = (n - 1) / 2 keeps the grid exactly symmetric.
  const auto half = static_cast<double>((values_.size() - 1) / 2);
  return (static_cast<double>(i) - half) / static_cast<double>(values_.size() - 1);
}

double GridFunction::operator()(double x) const {
  if (x <= -0.5 || x >= 0.5) return 2.0 * std::abs(x);
  const double pos = (x + 0.5) * static_cast<double>(values_.size() - 1);
  const auto j = std::min(static_cast<std::size_t>(pos), values_.size() - 2);
  const double t = pos - static_cast<double>(j);
  return (1.0 - t) * values_[j] + t * values_[j + 1];
}

GridFunction apply_operator(const GridFunction& g) {
  GridFunction out = g;
  auto& v = out.mutable_values();
  const std::size_t n = v.size();
  const std::size_t mid = (n - 1) / 2;
  const double theta = g.theta();
  const double shift = 0.5 * (theta - 1.0);
  const double weight = 1.0 / (2.0 * theta);
  for (std::size_t i = mid; i + 1 < n; ++i) {
    const double x = g.point(i);
    v[i] = weight * g(theta * x - shift) + weight * g(theta * x + shift);
  }
  v[n - 1] = 1.0;
  for (std::size_t i = 0; i < mid; ++i) v[i] = v[n - 1 - i];
  return out;
}

double sup_distance(const GridFunction& a, const GridFunction& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a.value(i) - b.value(i)));
  return d;
}

FixedPoint solve_f(double theta, std::size_t grid_points, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  GridFunction f(theta, grid_points);
  const auto cap = static_cast<std::size_t>(std::ceil(std::log(2.0 / tol) / std::log(theta)));
  FixedPoint result{f, {}, false};
  for (std::size_t k = 0; k < std::max<std::size_t>(cap, 1); ++k) {
    GridFunction next = apply_operator(result.f);
    const double change = sup_distance(next, result.f);
    result.changes.push_back(change);
    result.f = std::move(next);
    if (change <= tol) {
      result.converged = true;
      break;
    }
  }
  return result;
}

double d_theta(const GridFunction& f, double x) {
  if (!(x >= -0.5 && x <= 0.5)) throw std::invalid_argument("x must lie in [-1/2, 1/2]");
  return 0.5 + 0.5 * f(x);
}

double d_theta(double theta, double x, std::size_t grid_points, double tol) {
  if (!(x >= -0.5 && x <= 0.5)) throw std::invalid_argument("x must lie in [-1/2, 1/2]");
  return d_theta(solve_f(theta, grid_points, tol).f, x);
}

void write_csv(std::ostream& out, const GridFunction& f) {
  const auto old_precision = out.precision(17);
  out << "x,f,d\n";
  for (std::size_t i = 0; i < f.size(); ++i) {
    out << f.point(i) << "," << f.value(i) << "," << 0.5 + 0.5 * f.value(i) << "\n";
  }
  out.precision(old_precision);
}

}  // namespace tvd::bernoulli
