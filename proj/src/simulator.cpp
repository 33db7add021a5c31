#include "tvd/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace tvd {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
constexpr std::size_t kBatchSize = 1024;
}  // namespace

std::uint64_t SplitMix64::mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::stream_seed(std::uint64_t seed, std::uint64_t index) {
  return mix(seed + (index + 1) * kGolden);
}

std::uint64_t SplitMix64::next() {
  state_ += kGolden;
  return mix(state_);
}

double SplitMix64::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

Trajectory likelihood_trajectory(const ProblemInstance& instance, const Word& word) {
  Trajectory out;
  out.word = word;
  out.ratios.push_back(1.0);
  SubDistribution mu1 = instance.pi1;
  SubDistribution mu2 = instance.pi2;
  for (LetterIndex a : word) {
    mu1 = step(mu1, a, instance.lmc);
    mu2 = step(mu2, a, instance.lmc);
    const Rational m1 = mu1.mass();
    if (sgn(m1) == 0) {
      out.truncated = true;
      break;
    }
    out.ratios.push_back(to_double(Rational(mu2.mass() / m1)));
  }
  return out;
}

namespace {

struct Move {
  LetterIndex letter;
  StateIndex to;
  double cumulative;
};

struct Edge {
  StateIndex from;
  StateIndex to;
  double probability;
};

// Floating-point copy of the chain for sampling and ratio tracking.
class FloatChain {
 public:
  explicit FloatChain(const ProblemInstance& instance)
      : n_(instance.lmc.num_states()), moves_(n_), edges_(instance.lmc.num_letters()) {
    std::vector<Rational> running(n_, Rational(0));
    for (const auto& t : instance.lmc.transitions()) {
      running[t.from] += t.probability;
      moves_[t.from].push_back(Move{t.letter, t.to, to_double(running[t.from])});
      edges_[t.letter].push_back(Edge{t.from, t.to, to_double(t.probability)});
    }
    for (auto& m : moves_) {
      if (!m.empty()) m.back().cumulative = 1.0;
    }
    init_[0] = cumulative(instance.pi1);
    init_[1] = cumulative(instance.pi2);
    start_[0] = to_doubles(instance.pi1);
    start_[1] = to_doubles(instance.pi2);
  }

  std::size_t num_states() const { return n_; }

  StateIndex initial(int side, SplitMix64& rng) const { return pick(init_[side - 1], rng.uniform()); }

  const Move& move(StateIndex q, SplitMix64& rng) const {
    const auto& options = moves_[q];
    const double u = rng.uniform();
    auto it = std::upper_bound(options.begin(), options.end(), u,
                               [](double v, const Move& m) { return v < m.cumulative; });
    if (it == options.end()) --it;
    return *it;
  }

  const std::vector<double>& start(int side) const { return start_[side - 1]; }

  // out = mu * M(a); returns |out|.
  double apply(const std::vector<double>& mu, LetterIndex a, std::vector<double>& out) const {
    std::fill(out.begin(), out.end(), 0.0);
    for (const auto& e : edges_[a]) out[e.to] += mu[e.from] * e.probability;
    double total = 0.0;
    for (double v : out) total += v;
    return total;
  }

 private:
  static std::vector<double> to_doubles(const SubDistribution& pi) {
    std::vector<double> out;
    for (const auto& w : pi.weights) out.push_back(to_double(w));
    return out;
  }

  static std::vector<double> cumulative(const SubDistribution& pi) {
    std::vector<double> out;
    Rational running = 0;
    for (const auto& w : pi.weights) {
      running += w;
      out.push_back(to_double(running));
    }
    out.back() = 1.0;
    return out;
  }

  static StateIndex pick(const std::vector<double>& cumulative, double u) {
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    if (it == cumulative.end()) --it;
    return static_cast<StateIndex>(it - cumulative.begin());
  }

  std::size_t n_;
  std::vector<std::vector<Move>> moves_;
  std::vector<std::vector<Edge>> edges_;
  std::vector<double> init_[2];
  std::vector<double> start_[2];
};

struct RunResult {
  Word word;
  double log_ratio = 0.0;
  bool ratio_infinite = false;  // pi1 prefix mass vanished
  bool ratio_zero = false;      // pi2 prefix mass vanished
};

// Samples one run under pi_side while tracking log L on normalized vectors.
RunResult simulate_run(const FloatChain& chain, int side, std::size_t run_length, SplitMix64& rng,
                       bool keep_word) {
  RunResult result;
  std::vector<double> u1 = chain.start(1), u2 = chain.start(2);
  std::vector<double> next1(chain.num_states()), next2(chain.num_states());
  StateIndex state = chain.initial(side, rng);
  for (std::size_t i = 0; i < run_length; ++i) {
    const Move& m = chain.move(state, rng);
    state = m.to;
    if (keep_word) result.word.push_back(m.letter);
    if (result.ratio_infinite || result.ratio_zero) continue;

    const double s1 = chain.apply(u1, m.letter, next1);
    const double s2 = chain.apply(u2, m.letter, next2);
    if (s1 == 0.0) {
      result.ratio_infinite = true;
      continue;
    }
    if (s2 == 0.0) {
      result.ratio_zero = true;
      continue;
    }
    result.log_ratio += std::log(s2) - std::log(s1);
    for (std::size_t q = 0; q < u1.size(); ++q) {
      u1[q] = next1[q] / s1;
      u2[q] = next2[q] / s2;
    }
  }
  return result;
}

bool in_event(const RunResult& r) {
  if (r.ratio_infinite) return false;
  if (r.ratio_zero) return true;
  return r.log_ratio <= kRatioTieTolerance;
}

double ratio_value(const RunResult& r) {
  if (r.ratio_zero) return 0.0;
  if (r.ratio_infinite) return std::numeric_limits<double>::infinity();
  return std::exp(r.log_ratio);
}

struct BatchTally {
  std::size_t hits = 0;
  double ratio_sum = 0.0;
  double ratio_square_sum = 0.0;
};

BatchTally run_batch(const FloatChain& chain, int side, std::size_t batch, std::size_t count,
                     std::size_t run_length, std::uint64_t seed) {
  SplitMix64 rng(SplitMix64::stream_seed(seed, 2 * batch + static_cast<std::uint64_t>(side - 1)));
  BatchTally tally;
  for (std::size_t k = 0; k < count; ++k) {
    const RunResult r = simulate_run(chain, side, run_length, rng, false);
    if (in_event(r)) ++tally.hits;
    if (side == 1) {
      const double l = ratio_value(r);
      tally.ratio_sum += l;
      tally.ratio_square_sum += l * l;
    }
  }
  return tally;
}

}  // namespace

McEstimate estimate_distance_mc(const ProblemInstance& instance, const McOptions& options) {
  if (options.run_length == 0 || options.samples == 0) {
    throw std::invalid_argument("run length and sample count must be positive");
  }
  const FloatChain chain(instance);
  const std::size_t batches = (options.samples + kBatchSize - 1) / kBatchSize;
  const auto batch_count = [&](std::size_t b) { return std::min(kBatchSize, options.samples - b * kBatchSize); };

  // Index 2b + (side - 1); filled independently, reduced in index order.
  std::vector<BatchTally> tallies(2 * batches);
  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t job = first; job < tallies.size(); job += stride) {
      const std::size_t b = job / 2;
      const int side = static_cast<int>(job % 2) + 1;
      tallies[job] = run_batch(chain, side, b, batch_count(b), options.run_length, options.seed);
    }
  };
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(options.jobs, tallies.size()));
  if (workers == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> threads;
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(work, w, workers);
    for (auto& t : threads) t.join();
  }

  std::size_t hits1 = 0, hits2 = 0;
  double ratio_sum = 0.0, ratio_square_sum = 0.0;
  for (std::size_t b = 0; b < batches; ++b) {
    hits1 += tallies[2 * b].hits;
    hits2 += tallies[2 * b + 1].hits;
    ratio_sum += tallies[2 * b].ratio_sum;
    ratio_square_sum += tallies[2 * b].ratio_square_sum;
  }

  const auto n = static_cast<double>(options.samples);
  McEstimate out;
  out.p1 = static_cast<double>(hits1) / n;
  out.p2 = static_cast<double>(hits2) / n;
  out.estimate = out.p1 - out.p2;
  out.std_error = std::sqrt(out.p1 * (1.0 - out.p1) / n + out.p2 * (1.0 - out.p2) / n);
  out.mean_ratio_pi1 = ratio_sum / n;
  const double variance = options.samples > 1
                              ? std::max(0.0, (ratio_square_sum - n * out.mean_ratio_pi1 * out.mean_ratio_pi1) / (n - 1))
                              : 0.0;
  out.mean_ratio_std_error = std::sqrt(variance / n);
  return out;
}

std::vector<Word> sample_words(const ProblemInstance& instance, int side, std::size_t run_length,
                               std::size_t count, std::uint64_t seed) {
  if (side != 1 && side != 2) throw std::invalid_argument("side must be 1 or 2");
  const FloatChain chain(instance);
  std::vector<Word> words;
  SplitMix64 rng(SplitMix64::stream_seed(seed, static_cast<std::uint64_t>(side - 1)));
  for (std::size_t k = 0; k < count; ++k) {
    words.push_back(simulate_run(chain, side, run_length, rng, true).word);
  }
  return words;
}

void write_trajectories_csv(std::ostream& out, const ProblemInstance& instance, std::size_t run_length,
                            std::size_t count, std::uint64_t seed) {
  const auto old_precision = out.precision(17);
  out << "side,run,i,L\n";
  for (int side = 1; side <= 2; ++side) {
    const auto words = sample_words(instance, side, run_length, count, seed);
    for (std::size_t run = 0; run < words.size(); ++run) {
      const auto traj = likelihood_trajectory(instance, words[run]);
      for (std::size_t i = 0; i < traj.ratios.size(); ++i) {
        out << side << "," << run << "," << i << "," << traj.ratios[i] << "\n";
      }
      if (traj.truncated) out << side << "," << run << "," << traj.ratios.size() << ",inf\n";
    }
  }
  out.precision(old_precision);
}

}  // namespace tvd
