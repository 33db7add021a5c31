#include "tvd/lmc.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <tuple>

namespace tvd {

namespace {

void require_unique(const std::vector<std::string>& names, const char* what) {
  std::set<std::string_view> seen;
  for (const auto& name : names) {
    if (name.empty()) throw ModelError(std::string("empty ") + what + " name");
    if (!seen.insert(name).second) {
      throw ModelError(std::string("duplicate ") + what + " '" + name + "'");
    }
  }
}

std::optional<std::size_t> index_of(const std::vector<std::string>& names, std::string_view name) {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) return std::nullopt;
  return static_cast<std::size_t>(it - names.begin());
}

}  // namespace

Lmc::Lmc(std::vector<std::string> states, std::vector<std::string> alphabet,
         std::vector<Transition> transitions)
    : states_(std::move(states)), alphabet_(std::move(alphabet)) {
  require_unique(states_, "state");
  require_unique(alphabet_, "letter");

  for (auto& t : transitions) {
    if (t.from >= states_.size() || t.to >= states_.size() || t.letter >= alphabet_.size()) {
      throw ModelError("transition refers to a state or letter out of range");
    }
    if (sgn(t.probability) != 0) transitions_.push_back(std::move(t));
  }
  std::sort(transitions_.begin(), transitions_.end(), [](const Transition& a, const Transition& b) {
    return std::tie(a.from, a.letter, a.to) < std::tie(b.from, b.letter, b.to);
  });
  for (std::size_t i = 1; i < transitions_.size(); ++i) {
    const auto& p = transitions_[i - 1];
    const auto& t = transitions_[i];
    if (p.from == t.from && p.letter == t.letter && p.to == t.to) {
      throw ModelError("duplicate transition " + states_[t.from] + " " + alphabet_[t.letter] + " " +
                       states_[t.to]);
    }
  }

  by_letter_ = transitions_;
  std::stable_sort(by_letter_.begin(), by_letter_.end(),
                   [](const Transition& a, const Transition& b) { return a.letter < b.letter; });
  letter_offsets_.assign(alphabet_.size() + 1, 0);
  for (const auto& t : by_letter_) ++letter_offsets_[t.letter + 1];
  for (std::size_t a = 0; a < alphabet_.size(); ++a) letter_offsets_[a + 1] += letter_offsets_[a];
}

std::optional<StateIndex> Lmc::find_state(std::string_view name) const {
  return index_of(states_, name);
}

std::optional<LetterIndex> Lmc::find_letter(std::string_view name) const {
  return index_of(alphabet_, name);
}

std::span<const Transition> Lmc::edges(LetterIndex letter) const {
  if (letter >= alphabet_.size()) {
    throw ModelError("unknown letter index " + std::to_string(letter));
  }
  return std::span<const Transition>(by_letter_).subspan(letter_offsets_[letter],
                                                         letter_offsets_[letter + 1] - letter_offsets_[letter]);
}

Rational Lmc::probability(LetterIndex letter, StateIndex from, StateIndex to) const {
  for (const auto& t : edges(letter)) {
    if (t.from == from && t.to == to) return t.probability;
  }
  return 0;
}

SubDistribution SubDistribution::dirac(std::size_t num_states, StateIndex q) {
  SubDistribution mu(num_states);
  mu.weights.at(q) = 1;
  return mu;
}

bool SubDistribution::is_zero() const {
  return std::all_of(weights.begin(), weights.end(), [](const Rational& w) { return sgn(w) == 0; });
}

std::vector<StateIndex> SubDistribution::support() const {
  std::vector<StateIndex> out;
  for (StateIndex q = 0; q < weights.size(); ++q) {
    if (sgn(weights[q]) > 0) out.push_back(q);
  }
  return out;
}

std::string ValidationReport::describe(const Lmc& lmc) const {
  std::ostringstream os;
  for (const auto& issue : issues) {
    if (const auto* ns = std::get_if<NotStochastic>(&issue)) {
      os << "state " << lmc.state_name(ns->state) << ": outgoing probabilities sum to "
         << to_string(ns->row_sum) << ", expected 1\n";
    } else {
      const auto& np = std::get<NegativeProbability>(issue);
      os << "transition " << lmc.state_name(np.state) << " " << lmc.letter_name(np.letter) << " "
         << lmc.state_name(np.target) << ": negative probability " << to_string(np.value) << "\n";
    }
  }
  return os.str();
}

ValidationReport validate_lmc(const Lmc& lmc) {
  ValidationReport report;
  RationalVector row_sums(lmc.num_states(), Rational(0));
  for (const auto& t : lmc.transitions()) {
    if (sgn(t.probability) < 0) {
      report.issues.emplace_back(NegativeProbability{t.from, t.letter, t.to, t.probability});
    }
    row_sums[t.from] += t.probability;
  }
  for (StateIndex q = 0; q < lmc.num_states(); ++q) {
    if (row_sums[q] != 1) report.issues.emplace_back(NotStochastic{q, row_sums[q]});
  }
  return report;
}

ProblemInstance make_instance(Lmc lmc, SubDistribution pi1, SubDistribution pi2) {
  if (auto report = validate_lmc(lmc); !report.ok()) {
    throw InvalidInstance("chain is not a labelled Markov chain:\n" + report.describe(lmc));
  }
  for (const auto* pi : {&pi1, &pi2}) {
    const char* which = pi == &pi1 ? "init1" : "init2";
    if (pi->size() != lmc.num_states()) {
      throw InvalidInstance(std::string(which) + ": dimension does not match the state count");
    }
    for (const auto& w : pi->weights) {
      if (sgn(w) < 0) throw InvalidInstance(std::string(which) + ": negative weight");
    }
    if (pi->mass() != 1) {
      throw InvalidInstance(std::string(which) + ": weights sum to " + to_string(pi->mass()) + ", expected 1");
    }
  }
  return ProblemInstance{std::move(lmc), std::move(pi1), std::move(pi2)};
}

SubDistribution step(const SubDistribution& mu, LetterIndex letter, const Lmc& lmc) {
  if (mu.size() != lmc.num_states()) {
    throw ModelError("subdistribution dimension does not match the chain");
  }
  SubDistribution out(lmc.num_states());
  for (const auto& t : lmc.edges(letter)) {
    if (sgn(mu.weights[t.from]) != 0) out.weights[t.to] += mu.weights[t.from] * t.probability;
  }
  return out;
}

SubDistribution apply_word(const SubDistribution& mu, std::span<const LetterIndex> word, const Lmc& lmc) {
  SubDistribution current = mu;
  for (LetterIndex a : word) current = step(current, a, lmc);
  return current;
}

Word to_word(const Lmc& lmc, std::span<const std::string> letters) {
  Word word;
  word.reserve(letters.size());
  for (const auto& name : letters) {
    auto a = lmc.find_letter(name);
    if (!a) throw ModelError("unknown letter '" + name + "'");
    word.push_back(*a);
  }
  return word;
}

Word to_word(const Lmc& lmc, std::string_view text) {
  std::vector<std::string> names;
  const bool spaced = std::any_of(text.begin(), text.end(),
                                  [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
  if (spaced) {
    std::istringstream is{std::string(text)};
    for (std::string tok; is >> tok;) names.push_back(tok);
  } else {
    for (char c : text) names.emplace_back(1, c);
  }
  return to_word(lmc, names);
}

ProblemInstance disjoint_union(const std::pair<Lmc, SubDistribution>& first,
                               const std::pair<Lmc, SubDistribution>& second) {
  const Lmc& m1 = first.first;
  const Lmc& m2 = second.first;

  std::set<std::string> letters1(m1.alphabet().begin(), m1.alphabet().end());
  std::set<std::string> letters2(m2.alphabet().begin(), m2.alphabet().end());
  if (letters1 != letters2) throw ModelError("disjoint_union: alphabets differ");

  std::set<std::string> names1(m1.states().begin(), m1.states().end());
  const bool clash = std::any_of(m2.states().begin(), m2.states().end(),
                                 [&](const std::string& s) { return names1.count(s) > 0; });

  std::vector<std::string> states;
  for (const auto& s : m1.states()) states.push_back(clash ? s + "_1" : s);
  for (const auto& s : m2.states()) states.push_back(clash ? s + "_2" : s);

  const std::size_t offset = m1.num_states();
  std::vector<Transition> transitions = m1.transitions();
  for (const auto& t : m2.transitions()) {
    const LetterIndex a = *m1.find_letter(m2.letter_name(t.letter));
    transitions.push_back(Transition{t.from + offset, a, t.to + offset, t.probability});
  }

  SubDistribution pi1(states.size());
  SubDistribution pi2(states.size());
  for (StateIndex q = 0; q < m1.num_states(); ++q) pi1[q] = first.second.weights.at(q);
  for (StateIndex q = 0; q < m2.num_states(); ++q) pi2[q + offset] = second.second.weights.at(q);

  return make_instance(Lmc(std::move(states), m1.alphabet(), std::move(transitions)), std::move(pi1),
                       std::move(pi2));
}

}  // namespace tvd
