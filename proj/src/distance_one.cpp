#include "tvd/distance_one.hpp"

#include "tvd/lp.hpp"

#include <deque>
#include <stdexcept>

namespace tvd {

bool ReachSet::insert(StateIndex r1, StateIndex r2) {
  auto ref = pairs_[r1 * n_ + r2];
  if (ref) return false;
  ref = true;
  return true;
}

std::size_t ReachSet::size() const {
  std::size_t count = 0;
  for (bool b : pairs_) count += b ? 1 : 0;
  return count;
}

std::vector<StateIndex> ReachSet::targets(StateIndex r1) const {
  std::vector<StateIndex> out;
  for (StateIndex r2 = 0; r2 < n_; ++r2) {
    if (contains(r1, r2)) out.push_back(r2);
  }
  return out;
}

bool ReachSet::includes(const ReachSet& other) const {
  if (other.n_ != n_) return false;
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    if (other.pairs_[i] && !pairs_[i]) return false;
  }
  return true;
}

ReachSet reach_set(const Lmc& lmc, std::span<const StateIndex> supp1, std::span<const StateIndex> supp2) {
  const std::size_t n = lmc.num_states();
  ReachSet reach(n);
  std::deque<std::pair<StateIndex, StateIndex>> queue;
  for (StateIndex q1 : supp1) {
    for (StateIndex q2 : supp2) {
      if (reach.insert(q1, q2)) queue.emplace_back(q1, q2);
    }
  }

  // successors[a][q] = targets of q under letter a
  std::vector<std::vector<std::vector<StateIndex>>> successors(lmc.num_letters(),
                                                               std::vector<std::vector<StateIndex>>(n));
  for (const auto& t : lmc.transitions()) {
    if (sgn(t.probability) > 0) successors[t.letter][t.from].push_back(t.to);
  }

  while (!queue.empty()) {
    const auto [q1, q2] = queue.front();
    queue.pop_front();
    for (LetterIndex a = 0; a < lmc.num_letters(); ++a) {
      for (StateIndex r1 : successors[a][q1]) {
        for (StateIndex r2 : successors[a][q2]) {
          if (reach.insert(r1, r2)) queue.emplace_back(r1, r2);
        }
      }
    }
  }
  return reach;
}

ReachSet reach_set(const ProblemInstance& instance) {
  const auto s1 = instance.pi1.support();
  const auto s2 = instance.pi2.support();
  return reach_set(instance.lmc, s1, s2);
}

bool coupling_feasible(StateIndex r1, std::span<const StateIndex> targets, const EquivalenceBasis& basis) {
  const std::size_t n = basis.num_states;
  if (r1 >= n) throw std::invalid_argument("coupling_feasible: state out of range");
  if (targets.empty()) return false;

  // Variables: mu1(q) for every q, then mu2(r) for r in targets.
  const std::size_t vars = n + targets.size();
  std::vector<RationalVector> rows;
  RationalVector rhs;

  RationalVector anchor(vars, Rational(0));
  anchor[r1] = 1;
  rows.push_back(std::move(anchor));
  rhs.emplace_back(1);

  for (const auto& b : basis.vectors) {
    RationalVector row(vars, Rational(0));
    for (StateIndex q = 0; q < n; ++q) row[q] = b[q];
    for (std::size_t k = 0; k < targets.size(); ++k) {
      if (targets[k] >= n) throw std::invalid_argument("coupling_feasible: target out of range");
      row[n + k] = b[n + targets[k]];
    }
    rows.push_back(std::move(row));
    rhs.emplace_back(0);
  }
  return lp_feasible(rows, rhs, vars).feasible;
}

bool distance_one(const ProblemInstance& instance) {
  const auto basis = equivalence_basis(instance);
  const auto reach = reach_set(instance);
  for (StateIndex r1 = 0; r1 < instance.lmc.num_states(); ++r1) {
    const auto targets = reach.targets(r1);
    if (targets.empty()) continue;
    if (coupling_feasible(r1, targets, basis)) return false;
  }
  return true;
}

}  // namespace tvd
