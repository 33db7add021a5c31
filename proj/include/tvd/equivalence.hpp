#pragma once

// Language equivalence of subdistributions.
//
// mu1 and mu2 are equivalent iff |mu1 M(w)| = |mu2 M(w)| for every word w.
// Gluing them into the row vector (mu1 mu2) turns this into orthogonality
// against every column blockdiag(M(w), M(w)) * eta with
// eta = (1,...,1,-1,...,-1). Those columns span a space of dimension at most
// 2|Q|; equivalence_basis() computes a basis of it by worklist closure.

#include "tvd/lmc.hpp"
#include "tvd/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace tvd {

struct EquivalenceBasis {
  std::size_t num_states = 0;          // |Q|; every vector has length 2|Q|
  std::vector<RationalVector> vectors;  // linearly independent, in discovery order
};

EquivalenceBasis equivalence_basis(const Lmc& lmc);
EquivalenceBasis equivalence_basis(const ProblemInstance& instance);

/// (mu1 mu2) . b == 0 for every basis vector b.
/// Throws std::invalid_argument if a dimension does not match the basis.
bool is_equivalent(const SubDistribution& mu1, const SubDistribution& mu2, const EquivalenceBasis& basis);

class InstanceTooLarge : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Testing oracle: compares |mu1^w| and |mu2^w| for every word of length
/// exactly 2|Q|. Throws InstanceTooLarge when |Sigma|^(2|Q|) exceeds max_words.
bool is_equivalent_bruteforce(const SubDistribution& mu1, const SubDistribution& mu2, const Lmc& lmc,
                              std::uint64_t max_words = std::uint64_t{1} << 22);

/// d(pi1, pi2) == 0.
bool distance_zero(const ProblemInstance& instance);

}  // namespace tvd
