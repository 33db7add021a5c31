#include "tvd/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace tvd {

namespace {

bool is_integer_literal(std::string_view text) {
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    text.remove_prefix(1);
  }
  if (text.empty()) return false;
  for (char ch : text) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

bool is_natural_literal(std::string_view text) {
  return !text.empty() && text.front() != '-' && text.front() != '+' && is_integer_literal(text);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
  if (!is_integer_literal(num) || (slash != std::string_view::npos && !is_natural_literal(den))) {
    throw std::invalid_argument("not a rational literal: '" + std::string(text) + "'");
  }
  if (num.front() == '+') num.remove_prefix(1);

  mpz_class numerator(std::string(num), 10);
  mpz_class denominator(1);
  if (slash != std::string_view::npos) {
    denominator = mpz_class(std::string(den), 10);
    if (denominator == 0) {
      throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    }
  }
  Rational value(numerator, denominator);
  value.canonicalize();
  return value;
}

std::string to_string(const Rational& value) {
  return value.get_str(10);
}

double to_double(const Rational& value) {
  return value.get_d();
}

Rational dot(const RationalVector& lhs, const RationalVector& rhs) {
  if (lhs.size() != rhs.size()) {
    throw std::invalid_argument("dot: dimension mismatch");
  }
  Rational acc = 0;
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    if (sgn(lhs[i]) != 0 && sgn(rhs[i]) != 0) acc += lhs[i] * rhs[i];
  }
  return acc;
}

Rational sum(const RationalVector& values) {
  Rational acc = 0;
  for (const auto& v : values) acc += v;
  return acc;
}

}  // namespace tvd
