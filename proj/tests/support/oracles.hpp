#pragma once

// Slow reference computations that avoid the library's equivalence basis
// and prefix-class aggregation. Only usable on tiny instances.

#include "tvd/bounds.hpp"
#include "tvd/lmc.hpp"
#include "tvd/lp.hpp"

#include <functional>
#include <set>
#include <utility>
#include <vector>

namespace tvd::testing {

/// Calls `visit` on every word of exactly `length` letters, in lexicographic order.
inline void for_each_word(std::size_t letters, std::size_t length, const std::function<void(const Word&)>& visit) {
  Word w(length, 0);
  while (true) {
    visit(w);
    std::size_t i = length;
    while (i > 0 && w[i - 1] + 1 == letters) w[--i] = 0;
    if (i == 0) return;
    ++w[i - 1];
  }
}

/// Keeps a maximal linearly independent subset of `rows` (exact elimination).
inline std::vector<RationalVector> independent_subset(const std::vector<RationalVector>& rows) {
  std::vector<RationalVector> reduced;  // echelon copies
  std::vector<std::size_t> pivots;
  std::vector<RationalVector> kept;
  for (const auto& row : rows) {
    RationalVector r = row;
    for (std::size_t k = 0; k < reduced.size(); ++k) {
      if (sgn(r[pivots[k]]) == 0) continue;
      const Rational f = r[pivots[k]] / reduced[k][pivots[k]];
      for (std::size_t j = 0; j < r.size(); ++j) r[j] -= f * reduced[k][j];
    }
    std::size_t p = 0;
    while (p < r.size() && sgn(r[p]) == 0) ++p;
    if (p == r.size()) continue;
    reduced.push_back(std::move(r));
    pivots.push_back(p);
    kept.push_back(row);
  }
  return kept;
}

/// The vectors q -> |delta_q^w| for all words with |w| < 2|Q|, reduced to an
/// independent subset. mu1 and mu2 are equivalent iff mu1 . v = mu2 . v for all v.
inline std::vector<RationalVector> word_functionals(const Lmc& lmc) {
  const std::size_t n = lmc.num_states();
  std::vector<RationalVector> all;
  std::vector<RationalVector> layer{RationalVector(n, Rational(1))};
  for (std::size_t len = 0; len < 2 * n; ++len) {
    std::vector<RationalVector> next;
    for (const auto& v : layer) {
      all.push_back(v);
      // M(a) v for each letter, i.e. prepend a to the word.
      for (LetterIndex a = 0; a < lmc.num_letters(); ++a) {
        RationalVector u(n, Rational(0));
        for (const auto& e : lmc.edges(a)) u[e.from] += e.probability * v[e.to];
        next.push_back(std::move(u));
      }
    }
    layer = independent_subset(next);
  }
  return independent_subset(all);
}

inline std::vector<StateIndex> successor_support(const std::vector<StateIndex>& support, LetterIndex a, const Lmc& lmc) {
  std::set<StateIndex> out;
  for (const auto& e : lmc.edges(a)) {
    for (StateIndex q : support) {
      if (e.from == q) out.insert(e.to);
    }
  }
  return {out.begin(), out.end()};
}

/// Distance-1 via the support-pair semi-algorithm: d < 1 iff some reachable
/// pair (supp pi1^w, supp pi2^w) admits nonzero equivalent mu1, mu2 supported
/// inside it.
inline bool distance_one_by_support_pairs(const ProblemInstance& instance) {
  const Lmc& lmc = instance.lmc;
  const auto functionals = word_functionals(lmc);
  using Pair = std::pair<std::vector<StateIndex>, std::vector<StateIndex>>;
  std::set<Pair> seen;
  std::vector<Pair> todo{{instance.pi1.support(), instance.pi2.support()}};
  seen.insert(todo.front());
  while (!todo.empty()) {
    const Pair p = todo.back();
    todo.pop_back();
    const auto& [s1, s2] = p;
    if (!s1.empty() && !s2.empty()) {
      const std::size_t vars = s1.size() + s2.size();
      std::vector<RationalVector> rows;
      std::vector<Rational> rhs;
      RationalVector mass(vars, Rational(0));
      for (std::size_t i = 0; i < s1.size(); ++i) mass[i] = 1;
      rows.push_back(mass);
      rhs.emplace_back(1);
      for (const auto& v : functionals) {
        RationalVector row(vars, Rational(0));
        for (std::size_t i = 0; i < s1.size(); ++i) row[i] = v[s1[i]];
        for (std::size_t i = 0; i < s2.size(); ++i) row[s1.size() + i] = -v[s2[i]];
        rows.push_back(std::move(row));
        rhs.emplace_back(0);
      }
      if (lp_feasible(rows, rhs, vars).feasible) return false;
    }
    for (LetterIndex a = 0; a < lmc.num_letters(); ++a) {
      Pair next{successor_support(s1, a, lmc), successor_support(s2, a, lmc)};
      if (next.first.empty() && next.second.empty()) continue;
      if (seen.insert(next).second) todo.push_back(std::move(next));
    }
  }
  return true;
}

/// min(k) and con(k) by enumerating every word of length k separately.
inline LevelBounds naive_level_bounds(const ProblemInstance& instance, const EquivalenceBasis& basis, std::size_t k) {
  LevelBounds acc{Rational(0), Rational(0)};
  for_each_word(instance.lmc.num_letters(), k, [&](const Word& w) {
    const auto u = apply_word(instance.pi1, w, instance.lmc);
    const auto v = apply_word(instance.pi2, w, instance.lmc);
    const Rational m1 = u.mass(), m2 = v.mass();
    acc.min_mass += m1 < m2 ? m1 : m2;
    acc.coupled_mass += coupled_mass(u, v, basis);
  });
  return acc;
}

}  // namespace tvd::testing
