#pragma once

// Anytime two-sided approximation of the total variation distance.
//
// For a depth k, min(k) sums min(|pi1^w|, |pi2^w|) over all words of length k
// and con(k) sums the largest mass of equivalent sub-subdistributions
// mu1 <= pi1^w, mu2 <= pi2^w. Then 1 - min(k) <= d <= 1 - con(k), min(k) is
// nonincreasing, con(k) nondecreasing, and both brackets close in the limit.
//
// Words are not enumerated individually. Both per-word quantities are
// positively homogeneous in the pair (pi1^w, pi2^w), so words whose pairs are
// proportional are merged into one PrefixClass carrying the pair normalized
// to combined mass 1 and the total combined mass as its weight.

#include "tvd/equivalence.hpp"
#include "tvd/lmc.hpp"
#include "tvd/rational.hpp"

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace tvd {

struct PrefixClass {
  SubDistribution first;   // normalized pi1^w; |first| + |second| == 1
  SubDistribution second;  // normalized pi2^w
  Rational weight;         // sum of |pi1^w| + |pi2^w| over the merged words
};

struct Bracket {
  Rational lower;
  Rational upper;
  std::size_t depth = 0;

  Rational width() const { return upper - lower; }
};

struct LevelBounds {
  Rational min_mass;      // min(k)
  Rational coupled_mass;  // con(k)
};

enum class ApproxStatus { Exact, Converged, DepthCapped };

std::string_view to_string(ApproxStatus status);

struct ApproxReport {
  Bracket bracket;
  ApproxStatus status = ApproxStatus::DepthCapped;
  std::vector<Bracket> history;  // one entry per explored depth; empty for Exact
};

struct ApproxOptions {
  std::size_t max_depth = 30;
  unsigned jobs = 1;
};

/// The single depth-0 class built from (pi1, pi2).
std::vector<PrefixClass> initial_classes(const ProblemInstance& instance);

/// Extends every class by every letter, drops extensions where both sides
/// vanish, renormalizes, and merges classes with identical normalized pairs.
/// The result is sorted by the pair (lexicographic over first then second).
std::vector<PrefixClass> refine_classes(std::span<const PrefixClass> classes, const Lmc& lmc);

/// con(w) for one pair: the maximum of |mu1| over 0 <= mu1 <= first,
/// 0 <= mu2 <= second with (mu1 mu2) orthogonal to the basis.
Rational coupled_mass(const SubDistribution& first, const SubDistribution& second, const EquivalenceBasis& basis);

/// (min(k), con(k)) for classes at a common depth. Per-class LPs are split
/// across `jobs` threads; the sums do not depend on the split.
/// Throws std::logic_error if some class violates 1 >= min >= con >= 0.
LevelBounds level_bounds(std::span<const PrefixClass> classes, const EquivalenceBasis& basis, unsigned jobs = 1);

Bracket to_bracket(const LevelBounds& level, std::size_t depth);

/// Brackets for depths 0..max_depth without the exact fast paths.
std::vector<Bracket> bracket_sequence(const ProblemInstance& instance, std::size_t max_depth, unsigned jobs = 1);

/// Returns [0,0] or [1,1] with status Exact when the distance-0 or distance-1
/// decision applies; otherwise deepens one level at a time until the bracket
/// is at most eps wide (Converged) or max_depth is reached (DepthCapped).
/// Throws std::invalid_argument if eps <= 0.
ApproxReport approximate(const ProblemInstance& instance, const Rational& eps, const ApproxOptions& options = {});

}  // namespace tvd
