#pragma once

// Labelled Markov chains: states, letters and per-letter transition weights
// over exact rationals, plus the subdistribution dynamics mu -> mu * M(w).

#include "tvd/rational.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace tvd {

using StateIndex = std::size_t;
using LetterIndex = std::size_t;
using Word = std::vector<LetterIndex>;

struct Transition {
  StateIndex from = 0;
  LetterIndex letter = 0;
  StateIndex to = 0;
  Rational probability;
};

/// Raised when a chain is structurally malformed (duplicate names, indices out
/// of range, repeated transitions) or when a word uses a letter not in the alphabet.
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Immutable labelled Markov chain. States and letters keep declaration order;
/// transitions with probability zero are dropped on construction.
///
/// Stochasticity is not enforced here so that malformed chains can be
/// inspected with validate_lmc(); make_instance() enforces it.
class Lmc {
 public:
  Lmc(std::vector<std::string> states, std::vector<std::string> alphabet,
      std::vector<Transition> transitions);

  std::size_t num_states() const { return states_.size(); }
  std::size_t num_letters() const { return alphabet_.size(); }

  const std::vector<std::string>& states() const { return states_; }
  const std::vector<std::string>& alphabet() const { return alphabet_; }
  const std::string& state_name(StateIndex q) const { return states_.at(q); }
  const std::string& letter_name(LetterIndex a) const { return alphabet_.at(a); }

  std::optional<StateIndex> find_state(std::string_view name) const;
  std::optional<LetterIndex> find_letter(std::string_view name) const;

  /// All transitions ordered by (from, letter, to).
  const std::vector<Transition>& transitions() const { return transitions_; }

  /// Transitions labelled with `letter`, ordered by (from, to).
  std::span<const Transition> edges(LetterIndex letter) const;

  /// M(letter)(from, to); zero when absent.
  Rational probability(LetterIndex letter, StateIndex from, StateIndex to) const;

 private:
  std::vector<std::string> states_;
  std::vector<std::string> alphabet_;
  std::vector<Transition> transitions_;
  std::vector<Transition> by_letter_;
  std::vector<std::size_t> letter_offsets_;
};

/// Nonnegative weights over the states of a chain, total mass at most 1.
struct SubDistribution {
  RationalVector weights;

  SubDistribution() = default;
  explicit SubDistribution(std::size_t num_states) : weights(num_states, Rational(0)) {}
  explicit SubDistribution(RationalVector w) : weights(std::move(w)) {}

  static SubDistribution dirac(std::size_t num_states, StateIndex q);

  std::size_t size() const { return weights.size(); }
  Rational mass() const { return sum(weights); }
  bool is_zero() const;
  std::vector<StateIndex> support() const;

  const Rational& operator[](StateIndex q) const { return weights[q]; }
  Rational& operator[](StateIndex q) { return weights[q]; }

  bool operator==(const SubDistribution& other) const { return weights == other.weights; }
};

struct NotStochastic {
  StateIndex state;
  Rational row_sum;
};

struct NegativeProbability {
  StateIndex state;
  LetterIndex letter;
  StateIndex target;
  Rational value;
};

using ValidationIssue = std::variant<NotStochastic, NegativeProbability>;

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool ok() const { return issues.empty(); }
  std::string describe(const Lmc& lmc) const;
};

/// Checks that every entry is nonnegative and that every state's outgoing
/// probabilities, summed over all letters, equal exactly 1.
ValidationReport validate_lmc(const Lmc& lmc);

class InvalidInstance : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A stochastic chain with two initial distributions of mass exactly 1.
struct ProblemInstance {
  Lmc lmc;
  SubDistribution pi1;
  SubDistribution pi2;
};

/// Builds a ProblemInstance, throwing InvalidInstance unless the chain passes
/// validate_lmc() and both initial vectors are nonnegative distributions over its states.
ProblemInstance make_instance(Lmc lmc, SubDistribution pi1, SubDistribution pi2);

/// mu * M(letter).
SubDistribution step(const SubDistribution& mu, LetterIndex letter, const Lmc& lmc);

/// mu * M(w), folding step() left to right.
SubDistribution apply_word(const SubDistribution& mu, std::span<const LetterIndex> word, const Lmc& lmc);

/// Resolves letter names. A string without whitespace is read one character
/// per letter; otherwise it is split on whitespace into letter names.
Word to_word(const Lmc& lmc, std::string_view text);
Word to_word(const Lmc& lmc, std::span<const std::string> letters);

/// Block-diagonal union of two chains over the same alphabet. State names are
/// kept when the two state sets are disjoint and suffixed with "_1"/"_2"
/// otherwise. The alphabet order follows the first chain.
ProblemInstance disjoint_union(const std::pair<Lmc, SubDistribution>& first,
                               const std::pair<Lmc, SubDistribution>& second);

}  // namespace tvd
