#include "tvd/equivalence.hpp"

#include <deque>
#include <optional>

namespace tvd {

namespace {

// Row-echelon set used for exact independence tests. Each stored row has a
// leading 1 in its pivot column and zeros in the pivot columns of all
// earlier rows.
class EchelonSet {
 public:
  // Reduces `v` against the set; if a nonzero remainder is left it is added
  // and true is returned.
  bool insert(RationalVector v) {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Rational factor = v[pivots_[r]];
      if (sgn(factor) == 0) continue;
      for (std::size_t j = 0; j < v.size(); ++j) {
        if (sgn(rows_[r][j]) != 0) v[j] -= factor * rows_[r][j];
      }
    }
    std::optional<std::size_t> pivot;
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (sgn(v[j]) != 0) {
        pivot = j;
        break;
      }
    }
    if (!pivot) return false;
    const Rational lead = v[*pivot];
    for (auto& x : v) {
      if (sgn(x) != 0) x /= lead;
    }
    // Keep earlier rows free of the new pivot so later reductions stay one pass.
    for (auto& row : rows_) {
      const Rational factor = row[*pivot];
      if (sgn(factor) == 0) continue;
      for (std::size_t j = 0; j < v.size(); ++j) {
        if (sgn(v[j]) != 0) row[j] -= factor * v[j];
      }
    }
    rows_.push_back(std::move(v));
    pivots_.push_back(*pivot);
    return true;
  }

 private:
  std::vector<RationalVector> rows_;
  std::vector<std::size_t> pivots_;
};

// blockdiag(M(a), M(a)) * v for a column vector v of length 2|Q|.
RationalVector apply_block(const Lmc& lmc, LetterIndex a, const RationalVector& v) {
  const std::size_t n = lmc.num_states();
  RationalVector out(2 * n, Rational(0));
  for (const auto& t : lmc.edges(a)) {
    if (sgn(v[t.to]) != 0) out[t.from] += t.probability * v[t.to];
    if (sgn(v[n + t.to]) != 0) out[n + t.from] += t.probability * v[n + t.to];
  }
  return out;
}

}  // namespace

EquivalenceBasis equivalence_basis(const Lmc& lmc) {
  const std::size_t n = lmc.num_states();
  EquivalenceBasis basis;
  basis.num_states = n;

  RationalVector eta(2 * n, Rational(1));
  for (std::size_t i = n; i < 2 * n; ++i) eta[i] = -1;

  EchelonSet echelon;
  std::deque<std::size_t> queue;
  if (echelon.insert(eta)) {
    basis.vectors.push_back(eta);
    queue.push_back(0);
  }
  while (!queue.empty()) {
    const std::size_t idx = queue.front();
    queue.pop_front();
    for (LetterIndex a = 0; a < lmc.num_letters(); ++a) {
      RationalVector next = apply_block(lmc, a, basis.vectors[idx]);
      if (echelon.insert(next)) {
        basis.vectors.push_back(std::move(next));
        queue.push_back(basis.vectors.size() - 1);
      }
    }
  }
  return basis;
}

EquivalenceBasis equivalence_basis(const ProblemInstance& instance) {
  return equivalence_basis(instance.lmc);
}

bool is_equivalent(const SubDistribution& mu1, const SubDistribution& mu2, const EquivalenceBasis& basis) {
  const std::size_t n = basis.num_states;
  if (mu1.size() != n || mu2.size() != n) {
    throw std::invalid_argument("is_equivalent: subdistribution dimension does not match the basis");
  }
  for (const auto& b : basis.vectors) {
    Rational acc = 0;
    for (std::size_t q = 0; q < n; ++q) {
      if (sgn(mu1[q]) != 0) acc += mu1[q] * b[q];
      if (sgn(mu2[q]) != 0) acc += mu2[q] * b[n + q];
    }
    if (sgn(acc) != 0) return false;
  }
  return true;
}

namespace {

bool masses_agree(const SubDistribution& mu1, const SubDistribution& mu2, const Lmc& lmc, std::size_t remaining) {
  if (remaining == 0) return mu1.mass() == mu2.mass();
  if (mu1.is_zero() && mu2.is_zero()) return true;
  for (LetterIndex a = 0; a < lmc.num_letters(); ++a) {
    if (!masses_agree(step(mu1, a, lmc), step(mu2, a, lmc), lmc, remaining - 1)) return false;
  }
  return true;
}

}  // namespace

bool is_equivalent_bruteforce(const SubDistribution& mu1, const SubDistribution& mu2, const Lmc& lmc,
                              std::uint64_t max_words) {
  const std::size_t length = 2 * lmc.num_states();
  std::uint64_t words = 1;
  for (std::size_t i = 0; i < length; ++i) {
    if (lmc.num_letters() != 0 && words > max_words / lmc.num_letters()) {
      throw InstanceTooLarge("is_equivalent_bruteforce: more than " + std::to_string(max_words) + " words");
    }
    words *= lmc.num_letters();
  }
  if (mu1.size() != lmc.num_states() || mu2.size() != lmc.num_states()) {
    throw std::invalid_argument("is_equivalent_bruteforce: dimension mismatch");
  }
  return masses_agree(mu1, mu2, lmc, length);
}

bool distance_zero(const ProblemInstance& instance) {
  return is_equivalent(instance.pi1, instance.pi2, equivalence_basis(instance));
}

}  // namespace tvd
