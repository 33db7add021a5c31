#include "tvd/surd.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tvd {

namespace {

// Splits n = s^2 * r with r free of prime squares up to the trial limit.
void extract_square(const mpz_class& n, mpz_class& outside, mpz_class& inside) {
  outside = 1;
  inside = n;
  if (inside <= 1) return;
  for (unsigned long p = 2; p <= 1000000; p += (p == 2 ? 1 : 2)) {
    mpz_class pp = mpz_class(p) * p;
    if (pp > inside) break;
    while (mpz_divisible_p(inside.get_mpz_t(), pp.get_mpz_t()) != 0) {
      inside /= pp;
      outside *= p;
    }
  }
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), inside.get_mpz_t());
  if (root * root == inside) {
    outside *= root;
    inside = 1;
  }
}

// Rational lower and upper bounds of sqrt(r) with 2^-bits absolute accuracy.
void sqrt_bounds(const mpz_class& r, unsigned long bits, Rational& lo, Rational& hi) {
  mpz_class scaled = r << (2 * bits);
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
  mpz_class den = mpz_class(1) << bits;
  lo = Rational(root, den);
  lo.canonicalize();
  if (root * root == scaled) {
    hi = lo;
  } else {
    hi = Rational(root + 1, den);
    hi.canonicalize();
  }
}

}  // namespace

SurdSum::SurdSum(const Rational& value) {
  add_term(value, mpz_class(1));
}

SurdSum SurdSum::sqrt_of(const mpz_class& radicand, const Rational& coefficient) {
  if (radicand < 0) throw std::invalid_argument("SurdSum: negative radicand");
  SurdSum out;
  if (radicand == 0) return out;
  mpz_class outside, inside;
  extract_square(radicand, outside, inside);
  out.add_term(coefficient * Rational(outside), inside);
  return out;
}

SurdSum SurdSum::sqrt_of(const Rational& value, const Rational& coefficient) {
  if (sgn(value) < 0) throw std::invalid_argument("SurdSum: negative radicand");
  // sqrt(p/q) = sqrt(p*q) / q
  const mpz_class p = value.get_num();
  const mpz_class q = value.get_den();
  Rational scaled = coefficient / Rational(q);
  return sqrt_of(mpz_class(p * q), scaled);
}

bool SurdSum::is_rational() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const SurdTerm& t) { return t.radicand == 1; });
}

void SurdSum::add_term(const Rational& coefficient, const mpz_class& radicand) {
  if (sgn(coefficient) == 0) return;
  auto it = std::lower_bound(terms_.begin(), terms_.end(), radicand,
                             [](const SurdTerm& t, const mpz_class& r) { return t.radicand < r; });
  if (it != terms_.end() && it->radicand == radicand) {
    it->coefficient += coefficient;
    if (sgn(it->coefficient) == 0) terms_.erase(it);
  } else {
    terms_.insert(it, SurdTerm{coefficient, radicand});
  }
}

SurdSum& SurdSum::operator+=(const SurdSum& other) {
  for (const auto& t : other.terms_) add_term(t.coefficient, t.radicand);
  return *this;
}

SurdSum& SurdSum::operator*=(const Rational& factor) {
  if (sgn(factor) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coefficient *= factor;
  return *this;
}

double SurdSum::to_double() const {
  double acc = 0.0;
  for (const auto& t : terms_) acc += t.coefficient.get_d() * std::sqrt(t.radicand.get_d());
  return acc;
}

std::string SurdSum::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coefficient;
    if (!first) {
      os << (sgn(c) < 0 ? " - " : " + ");
      c = abs(c);
    }
    first = false;
    if (t.radicand == 1) {
      os << tvd::to_string(c);
    } else if (c == 1) {
      os << "sqrt(" << t.radicand.get_str() << ")";
    } else {
      os << tvd::to_string(c) << "*sqrt(" << t.radicand.get_str() << ")";
    }
  }
  return os.str();
}

std::strong_ordering SurdSum::compare(const Rational& value) const {
  SurdSum diff = *this;
  diff.add_term(-value, mpz_class(1));
  if (diff.terms_.empty()) return std::strong_ordering::equal;
  if (diff.is_rational()) {
    const int s = sgn(diff.terms_.front().coefficient);
    return s < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }

  for (unsigned long bits = 64; bits <= (1ul << 20); bits *= 2) {
    Rational lo = 0, hi = 0;
    for (const auto& t : diff.terms_) {
      Rational s_lo, s_hi;
      sqrt_bounds(t.radicand, bits, s_lo, s_hi);
      if (sgn(t.coefficient) > 0) {
        lo += t.coefficient * s_lo;
        hi += t.coefficient * s_hi;
      } else {
        lo += t.coefficient * s_hi;
        hi += t.coefficient * s_lo;
      }
    }
    if (sgn(lo) > 0) return std::strong_ordering::greater;
    if (sgn(hi) < 0) return std::strong_ordering::less;
  }
  throw std::runtime_error("SurdSum::compare: undecided at maximum precision");
}

std::strong_ordering SurdSum::compare(const SurdSum& other) const {
  SurdSum diff = *this;
  diff += other * Rational(-1);
  return diff.compare(Rational(0));
}

}  // namespace tvd
