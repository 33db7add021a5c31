#pragma once

// Monte-Carlo view of the distance through the likelihood ratio
// L_i = |pi2^{r_i}| / |pi1^{r_i}| along a random run r. The event
// {lim L_i <= 1} maximizes pi1(E) - pi2(E); the estimator replaces the limit
// by L at a fixed horizon.

#include "tvd/lmc.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace tvd {

/// SplitMix64 (Steele, Lea, Flood 2014). The k-th output for seed s is
/// mix(s + k * 0x9E3779B97F4A7C15), k = 1, 2, ..., where
///   mix(z): z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///           z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///           return z ^ (z >> 31)
/// It is counter-based, so stream i of a seed is seeded with its i-th output.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static std::uint64_t mix(std::uint64_t z);

  /// Seed of sub-stream `index`; independent of how many values were drawn.
  static std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next();

  /// Uniform in [0, 1) with 53 random bits.
  double uniform();

 private:
  std::uint64_t state_;
};

struct Trajectory {
  Word word;
  std::vector<double> ratios;  // L_0 = 1, L_1, ...
  bool truncated = false;      // |pi1^{r_i}| hit zero; ratios stop before i
};

/// Exact prefix masses along `word`, rendered to doubles.
Trajectory likelihood_trajectory(const ProblemInstance& instance, const Word& word);

struct McOptions {
  std::size_t run_length = 200;
  std::size_t samples = 20000;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
};

struct McEstimate {
  double estimate = 0.0;   // p1 - p2, in [-1, 1]
  double std_error = 0.0;  // sqrt(p1(1-p1)/n + p2(1-p2)/n)
  double p1 = 0.0;         // fraction of pi1-runs with L_n <= 1
  double p2 = 0.0;         // fraction of pi2-runs with L_n <= 1
  double mean_ratio_pi1 = 0.0;       // sample mean of L_n over pi1-runs
  double mean_ratio_std_error = 0.0;  // its standard error
};

/// Relative slack under which L_n is treated as exactly 1. Ties are common
/// (every equivalent pair has L identically 1) and rounding must not split them.
inline constexpr double kRatioTieTolerance = 1e-9;

/// Throws std::invalid_argument if run_length or samples is zero.
/// Results are bit-identical for a given seed, whatever `jobs` is.
McEstimate estimate_distance_mc(const ProblemInstance& instance, const McOptions& options);

/// Draws `count` runs of length `run_length` under pi1 (side 1) or pi2
/// (side 2) from the same streams the estimator uses.
std::vector<Word> sample_words(const ProblemInstance& instance, int side, std::size_t run_length,
                               std::size_t count, std::uint64_t seed);

/// "side,run,i,L" rows for the first `count` runs of each side.
void write_trajectories_csv(std::ostream& out, const ProblemInstance& instance, std::size_t run_length,
                            std::size_t count, std::uint64_t seed);

}  // namespace tvd
