#pragma once

// Random small instances for property tests.
//
// Fully random chains almost never contain equivalent pairs, so half of the
// generated chains are lumpable refinements of a smaller base chain: every
// state copies the outgoing behaviour of its base state and splits each
// transition randomly among the copies of the base target. Two states (or
// two distributions) with the same image in the base chain are equivalent.
// Full-support chains never reach distance 1, so another share of instances
// puts pi1 and pi2 on two independent blocks with no shared states.

#include "tvd/lmc.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <vector>

namespace tvd::testing {

struct RandomShape {
  std::size_t min_states = 1;
  std::size_t max_states = 4;
  std::size_t min_letters = 1;
  std::size_t max_letters = 2;
  int weight_range = 3;  // integer weights 0..weight_range before normalizing
};

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline std::vector<std::string> numbered(const char* prefix, std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(prefix + std::to_string(i));
  return names;
}

// Random integer weights, at least one positive, normalized to sum 1.
inline RationalVector random_distribution(std::mt19937_64& rng, std::size_t n, int range, bool sparse) {
  std::vector<int> w(n);
  int total = 0;
  while (total == 0) {
    total = 0;
    for (auto& v : w) {
      v = uniform_int(rng, 0, range);
      if (sparse && uniform_int(rng, 0, 1) == 0) v = 0;
      total += v;
    }
  }
  RationalVector out;
  for (int v : w) out.push_back(Rational(v, total));
  for (auto& r : out) r.canonicalize();
  return out;
}

// Each row: a random distribution over (letter, target) pairs.
inline std::vector<Transition> random_rows(std::mt19937_64& rng, std::size_t n, std::size_t letters, int range) {
  std::vector<Transition> out;
  for (StateIndex q = 0; q < n; ++q) {
    const auto row = random_distribution(rng, n * letters, range, true);
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (sgn(row[k]) > 0) out.push_back(Transition{q, k / n, k % n, row[k]});
    }
  }
  return out;
}

inline Lmc random_plain_lmc(std::mt19937_64& rng, std::size_t n, std::size_t letters, int range) {
  return Lmc(numbered("s", n), numbered("a", letters), random_rows(rng, n, letters, range));
}

struct Lumped {
  Lmc lmc;
  std::vector<StateIndex> image;  // state -> base state
};

inline Lumped random_lumpable_lmc(std::mt19937_64& rng, std::size_t n, std::size_t letters, int range) {
  const std::size_t base_n = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<int>(n)));
  const auto base = random_rows(rng, base_n, letters, range);
  std::vector<StateIndex> image(n);
  for (std::size_t q = 0; q < n; ++q) image[q] = q < base_n ? q : static_cast<StateIndex>(uniform_int(rng, 0, static_cast<int>(base_n) - 1));
  std::shuffle(image.begin(), image.end(), rng);

  std::vector<Transition> transitions;
  for (StateIndex q = 0; q < n; ++q) {
    for (const auto& t : base) {
      if (t.from != image[q]) continue;
      std::vector<StateIndex> copies;
      for (StateIndex r = 0; r < n; ++r) {
        if (image[r] == t.to) copies.push_back(r);
      }
      const auto split = random_distribution(rng, copies.size(), range, false);
      for (std::size_t i = 0; i < copies.size(); ++i) {
        if (sgn(split[i]) > 0) transitions.push_back(Transition{q, t.letter, copies[i], Rational(t.probability * split[i])});
      }
    }
  }
  return Lumped{Lmc(numbered("s", n), numbered("a", letters), std::move(transitions)), std::move(image)};
}

// Mass of `mu` pushed onto the base states.
inline RationalVector lump(const RationalVector& mu, const std::vector<StateIndex>& image, std::size_t base_n) {
  RationalVector out(base_n, Rational(0));
  for (std::size_t q = 0; q < mu.size(); ++q) out[image[q]] += mu[q];
  return out;
}

// A distribution with the same lumped image as `mu`, split randomly.
inline RationalVector relabel_within_classes(std::mt19937_64& rng, const RationalVector& mu,
                                             const std::vector<StateIndex>& image) {
  std::size_t base_n = 0;
  for (auto b : image) base_n = std::max(base_n, b + 1);
  const auto lumped = lump(mu, image, base_n);
  RationalVector out(mu.size(), Rational(0));
  for (StateIndex b = 0; b < base_n; ++b) {
    std::vector<StateIndex> members;
    for (StateIndex q = 0; q < image.size(); ++q) {
      if (image[q] == b) members.push_back(q);
    }
    const auto split = random_distribution(rng, members.size(), 3, false);
    for (std::size_t i = 0; i < members.size(); ++i) out[members[i]] = lumped[b] * split[i];
  }
  return out;
}

inline ProblemInstance random_block_instance(std::mt19937_64& rng, std::size_t n, std::size_t letters, int range) {
  const auto left = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<int>(n) - 1));
  auto transitions = random_rows(rng, left, letters, range);
  for (auto t : random_rows(rng, n - left, letters, range)) {
    t.from += left;
    t.to += left;
    transitions.push_back(t);
  }
  const auto w1 = random_distribution(rng, left, range, true);
  const auto w2 = random_distribution(rng, n - left, range, true);
  RationalVector pi1(n, Rational(0)), pi2(n, Rational(0));
  std::copy(w1.begin(), w1.end(), pi1.begin());
  std::copy(w2.begin(), w2.end(), pi2.begin() + static_cast<std::ptrdiff_t>(left));
  return make_instance(Lmc(numbered("s", n), numbered("a", letters), std::move(transitions)), SubDistribution(pi1),
                       SubDistribution(pi2));
}

/// A random valid instance: 40% lumpable with pi2 usually equivalent to pi1,
/// 30% two disjoint blocks, 30% unstructured.
inline ProblemInstance random_instance(std::mt19937_64& rng, const RandomShape& shape = {}) {
  const auto n = static_cast<std::size_t>(uniform_int(rng, static_cast<int>(shape.min_states), static_cast<int>(shape.max_states)));
  const auto letters =
      static_cast<std::size_t>(uniform_int(rng, static_cast<int>(shape.min_letters), static_cast<int>(shape.max_letters)));
  const bool sparse_init = uniform_int(rng, 0, 1) == 0;
  const int mode = uniform_int(rng, 0, 9);
  if (mode >= 7 && n >= 2) return random_block_instance(rng, n, letters, shape.weight_range);
  if (mode < 4) {
    auto lumped = random_lumpable_lmc(rng, n, letters, shape.weight_range);
    const auto pi1 = random_distribution(rng, n, shape.weight_range, sparse_init);
    const auto pi2 = uniform_int(rng, 0, 2) == 0 ? random_distribution(rng, n, shape.weight_range, sparse_init)
                                                 : relabel_within_classes(rng, pi1, lumped.image);
    return make_instance(std::move(lumped.lmc), SubDistribution(pi1), SubDistribution(pi2));
  }
  auto lmc = random_plain_lmc(rng, n, letters, shape.weight_range);
  const auto pi1 = random_distribution(rng, n, shape.weight_range, sparse_init);
  const auto pi2 = random_distribution(rng, n, shape.weight_range, sparse_init);
  return make_instance(std::move(lmc), SubDistribution(pi1), SubDistribution(pi2));
}

}  // namespace tvd::testing
