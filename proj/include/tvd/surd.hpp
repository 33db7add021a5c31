#pragma once

// Exact values of the form sum_i c_i * sqrt(r_i) with rational c_i and
// natural r_i. Terms are kept with square-free-reduced radicands (as far as
// trial division reaches) and like radicands are combined.

#include "tvd/rational.hpp"

#include <compare>
#include <string>
#include <vector>

namespace tvd {

struct SurdTerm {
  Rational coefficient;
  mpz_class radicand;  // >= 1
};

class SurdSum {
 public:
  SurdSum() = default;
  explicit SurdSum(const Rational& value);

  /// coefficient * sqrt(radicand); radicand must be >= 0.
  static SurdSum sqrt_of(const mpz_class& radicand, const Rational& coefficient = Rational(1));
  /// coefficient * sqrt(value) for a nonnegative rational value.
  static SurdSum sqrt_of(const Rational& value, const Rational& coefficient = Rational(1));

  const std::vector<SurdTerm>& terms() const { return terms_; }
  bool is_rational() const;

  SurdSum& operator+=(const SurdSum& other);
  SurdSum& operator*=(const Rational& factor);
  friend SurdSum operator+(SurdSum lhs, const SurdSum& rhs) { return lhs += rhs; }
  friend SurdSum operator*(SurdSum lhs, const Rational& rhs) { return lhs *= rhs; }

  double to_double() const;

  /// e.g. "1/4*sqrt(2) + 1/3"; "0" for the empty sum.
  std::string to_string() const;

  /// Exact comparison against a rational, by interval refinement with exact
  /// integer square roots. Throws std::runtime_error if undecided after a
  /// very large precision, which cannot happen for fully reduced radicands.
  std::strong_ordering compare(const Rational& value) const;

  /// Exact comparison between two surd sums.
  std::strong_ordering compare(const SurdSum& other) const;

 private:
  void add_term(const Rational& coefficient, const mpz_class& radicand);

  std::vector<SurdTerm> terms_;  // sorted by radicand, no zero coefficients
};

}  // namespace tvd
