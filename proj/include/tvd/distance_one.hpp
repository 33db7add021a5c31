#pragma once

// Polynomial-time decision of d(pi1, pi2) = 1.
//
// d < 1 iff some state r1 admits equivalent subdistributions mu1, mu2 with
// r1 in supp(mu1) and supp(mu2) contained in the set of states that can be
// occupied together with r1 after a common word. The latter set comes from
// reachability in the product graph; the former is an LP feasibility test.

#include "tvd/equivalence.hpp"
#include "tvd/lmc.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace tvd {

/// Pairs (r1, r2) such that r1 in supp(pi1^w) and r2 in supp(pi2^w) for some word w.
class ReachSet {
 public:
  explicit ReachSet(std::size_t num_states) : n_(num_states), pairs_(num_states * num_states, false) {}

  std::size_t num_states() const { return n_; }
  bool contains(StateIndex r1, StateIndex r2) const { return pairs_[r1 * n_ + r2]; }
  bool insert(StateIndex r1, StateIndex r2);
  std::size_t size() const;

  /// R_{r1} = { r2 | (r1, r2) in R }, ascending.
  std::vector<StateIndex> targets(StateIndex r1) const;

  /// Every pair of `other` is also in this set.
  bool includes(const ReachSet& other) const;

 private:
  std::size_t n_;
  std::vector<bool> pairs_;
};

/// Breadth-first closure from supp1 x supp2 along joint edges
/// (q1, q2) -> (r1, r2) for letters a with M(a)(q1, r1) > 0 and M(a)(q2, r2) > 0.
ReachSet reach_set(const Lmc& lmc, std::span<const StateIndex> supp1, std::span<const StateIndex> supp2);
ReachSet reach_set(const ProblemInstance& instance);

/// Is there mu1 >= 0 over Q and mu2 >= 0 over `targets` with mu1(r1) = 1 and
/// (mu1 mu2) orthogonal to every basis vector?
bool coupling_feasible(StateIndex r1, std::span<const StateIndex> targets, const EquivalenceBasis& basis);

/// true iff d(pi1, pi2) = 1.
bool distance_one(const ProblemInstance& instance);

}  // namespace tvd
