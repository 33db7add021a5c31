#include "tvd/bounds.hpp"

#include "tvd/distance_one.hpp"
#include "tvd/lp.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <thread>

namespace tvd {

std::string_view to_string(ApproxStatus status) {
  switch (status) {
    case ApproxStatus::Exact:
      return "Exact";
    case ApproxStatus::Converged:
      return "Converged";
    case ApproxStatus::DepthCapped:
      return "DepthCapped";
  }
  return "?";
}

namespace {

RationalVector class_key(const SubDistribution& first, const SubDistribution& second) {
  RationalVector key;
  key.reserve(first.size() + second.size());
  key.insert(key.end(), first.weights.begin(), first.weights.end());
  key.insert(key.end(), second.weights.begin(), second.weights.end());
  return key;
}

}  // namespace

std::vector<PrefixClass> initial_classes(const ProblemInstance& instance) {
  const Rational total = instance.pi1.mass() + instance.pi2.mass();
  PrefixClass root{instance.pi1, instance.pi2, total};
  for (auto& w : root.first.weights) w /= total;
  for (auto& w : root.second.weights) w /= total;
  return {std::move(root)};
}

std::vector<PrefixClass> refine_classes(std::span<const PrefixClass> classes, const Lmc& lmc) {
  const std::size_t n = lmc.num_states();
  std::map<RationalVector, Rational> merged;
  for (const auto& cls : classes) {
    for (LetterIndex a = 0; a < lmc.num_letters(); ++a) {
      SubDistribution u = step(cls.first, a, lmc);
      SubDistribution v = step(cls.second, a, lmc);
      const Rational scale = u.mass() + v.mass();
      if (sgn(scale) == 0) continue;
      for (auto& w : u.weights) w /= scale;
      for (auto& w : v.weights) w /= scale;
      Rational weight = cls.weight * scale;
      auto [it, inserted] = merged.try_emplace(class_key(u, v), weight);
      if (!inserted) it->second += weight;
    }
  }

  std::vector<PrefixClass> out;
  out.reserve(merged.size());
  for (auto& [key, weight] : merged) {
    PrefixClass cls{SubDistribution(RationalVector(key.begin(), key.begin() + static_cast<std::ptrdiff_t>(n))),
                    SubDistribution(RationalVector(key.begin() + static_cast<std::ptrdiff_t>(n), key.end())),
                    weight};
    out.push_back(std::move(cls));
  }
  return out;
}

Rational coupled_mass(const SubDistribution& first, const SubDistribution& second, const EquivalenceBasis& basis) {
  const std::size_t n = basis.num_states;
  if (first.size() != n || second.size() != n) {
    throw std::invalid_argument("coupled_mass: dimension does not match the basis");
  }
  const auto s1 = first.support();
  const auto s2 = second.support();
  if (s1.empty() || s2.empty()) return 0;

  // Variables: mu1 on s1, mu2 on s2, then one slack per bound constraint.
  const std::size_t k1 = s1.size();
  const std::size_t k2 = s2.size();
  const std::size_t core = k1 + k2;
  const std::size_t vars = 2 * core;

  LinearProgram lp;
  lp.objective.assign(vars, Rational(0));
  for (std::size_t i = 0; i < k1; ++i) lp.objective[i] = 1;

  for (std::size_t i = 0; i < core; ++i) {
    RationalVector row(vars, Rational(0));
    row[i] = 1;
    row[core + i] = 1;
    lp.constraints.push_back(std::move(row));
    lp.rhs.push_back(i < k1 ? first[s1[i]] : second[s2[i - k1]]);
  }
  for (const auto& b : basis.vectors) {
    RationalVector row(vars, Rational(0));
    bool nonzero = false;
    for (std::size_t i = 0; i < k1; ++i) {
      row[i] = b[s1[i]];
      nonzero = nonzero || sgn(row[i]) != 0;
    }
    for (std::size_t i = 0; i < k2; ++i) {
      row[k1 + i] = b[n + s2[i]];
      nonzero = nonzero || sgn(row[k1 + i]) != 0;
    }
    if (!nonzero) continue;
    lp.constraints.push_back(std::move(row));
    lp.rhs.emplace_back(0);
  }

  const auto outcome = lp_maximize(lp);
  if (outcome.status != LpStatus::Optimal) {
    // mu = 0 is always feasible and the objective is bounded by |first|.
    throw std::logic_error("coupled_mass: coupling LP did not reach an optimum");
  }
  return outcome.optimum;
}

namespace {

LevelBounds level_bounds_range(std::span<const PrefixClass> classes, const EquivalenceBasis& basis) {
  LevelBounds acc{Rational(0), Rational(0)};
  for (const auto& cls : classes) {
    const Rational m1 = cls.first.mass();
    const Rational m2 = cls.second.mass();
    const Rational min_part = m1 < m2 ? m1 : m2;
    const Rational con_part = coupled_mass(cls.first, cls.second, basis);
    if (!(min_part <= 1 && con_part <= min_part && sgn(con_part) >= 0)) {
      throw std::logic_error("level_bounds: per-class ordering 1 >= min >= con >= 0 violated");
    }
    acc.min_mass += cls.weight * min_part;
    acc.coupled_mass += cls.weight * con_part;
  }
  return acc;
}

}  // namespace

LevelBounds level_bounds(std::span<const PrefixClass> classes, const EquivalenceBasis& basis, unsigned jobs) {
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(jobs, classes.size()));
  if (workers <= 1) return level_bounds_range(classes, basis);

  std::vector<LevelBounds> partial(workers);
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  const std::size_t chunk = (classes.size() + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = std::min(classes.size(), w * chunk);
    const std::size_t end = std::min(classes.size(), begin + chunk);
    threads.emplace_back([&, w, begin, end] {
      try {
        partial[w] = level_bounds_range(classes.subspan(begin, end - begin), basis);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  LevelBounds total{Rational(0), Rational(0)};
  for (const auto& p : partial) {
    total.min_mass += p.min_mass;
    total.coupled_mass += p.coupled_mass;
  }
  return total;
}

Bracket to_bracket(const LevelBounds& level, std::size_t depth) {
  return Bracket{Rational(1 - level.min_mass), Rational(1 - level.coupled_mass), depth};
}

std::vector<Bracket> bracket_sequence(const ProblemInstance& instance, std::size_t max_depth, unsigned jobs) {
  const auto basis = equivalence_basis(instance);
  std::vector<Bracket> out;
  auto classes = initial_classes(instance);
  for (std::size_t depth = 0;; ++depth) {
    out.push_back(to_bracket(level_bounds(classes, basis, jobs), depth));
    if (depth == max_depth) break;
    classes = refine_classes(classes, instance.lmc);
  }
  return out;
}

ApproxReport approximate(const ProblemInstance& instance, const Rational& eps, const ApproxOptions& options) {
  if (sgn(eps) <= 0) throw std::invalid_argument("approximate: eps must be positive");

  const auto basis = equivalence_basis(instance);
  if (is_equivalent(instance.pi1, instance.pi2, basis)) {
    return ApproxReport{Bracket{Rational(0), Rational(0), 0}, ApproxStatus::Exact, {}};
  }
  if (distance_one(instance)) {
    return ApproxReport{Bracket{Rational(1), Rational(1), 0}, ApproxStatus::Exact, {}};
  }

  ApproxReport report;
  auto classes = initial_classes(instance);
  for (std::size_t depth = 0;; ++depth) {
    report.history.push_back(to_bracket(level_bounds(classes, basis, options.jobs), depth));
    report.bracket = report.history.back();
    if (report.bracket.width() <= eps) {
      report.status = ApproxStatus::Converged;
      break;
    }
    if (depth >= options.max_depth) {
      report.status = ApproxStatus::DepthCapped;
      break;
    }
    classes = refine_classes(classes, instance.lmc);
  }
  return report;
}

}  // namespace tvd
