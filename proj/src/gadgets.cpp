#include "tvd/gadgets.hpp"

#include <algorithm>

namespace tvd::gadgets {

namespace {

const Rational kHalf(1, 2);

void require_open_half(const Rational& x) {
  if (!(sgn(x) > 0 && x < kHalf)) {
    throw GadgetError("gadget parameter x must satisfy 0 < x < 1/2, got " + to_string(x));
  }
}

struct Builder {
  std::vector<std::string> states;
  std::vector<std::string> letters;
  std::vector<Transition> transitions;

  std::size_t state(const std::string& name) {
    states.push_back(name);
    return states.size() - 1;
  }
  std::size_t letter(const std::string& name) {
    letters.push_back(name);
    return letters.size() - 1;
  }
  void edge(std::size_t from, std::size_t a, std::size_t to, const Rational& p) {
    if (sgn(p) != 0) transitions.push_back(Transition{from, a, to, p});
  }

  ProblemInstance build(std::size_t init1, std::size_t init2) {
    const std::size_t n = states.size();
    return make_instance(Lmc(states, letters, transitions), SubDistribution::dirac(n, init1),
                         SubDistribution::dirac(n, init2));
  }
};

// One Irrational(x) block: q1 and q2 with a, b loops and a c-exit to `sink`.
void add_block(Builder& b, std::size_t q1, std::size_t q2, std::size_t sink, std::size_t a, std::size_t bl,
               std::size_t c, const Rational& x) {
  b.edge(q1, a, q1, kHalf);
  b.edge(q1, bl, q1, kHalf - x);
  b.edge(q1, c, sink, x);
  b.edge(q2, a, q2, kHalf - x);
  b.edge(q2, bl, q2, kHalf);
  b.edge(q2, c, sink, x);
}

ProblemInstance make_parallel(const std::vector<Rational>& xs) {
  if (xs.empty()) throw GadgetError("parallel gadget needs at least one parameter");
  for (const auto& x : xs) require_open_half(x);
  const std::size_t n = xs.size();

  Builder b;
  const std::size_t p1 = b.state("p1");
  const std::size_t p2 = b.state("p2");
  std::vector<std::size_t> left, right;
  for (std::size_t i = 1; i <= n; ++i) left.push_back(b.state("q1_" + std::to_string(i)));
  for (std::size_t i = 1; i <= n; ++i) right.push_back(b.state("q2_" + std::to_string(i)));
  const std::size_t r = b.state("r");

  std::vector<std::size_t> choice;
  for (std::size_t i = 1; i <= n; ++i) choice.push_back(b.letter("c" + std::to_string(i)));
  const std::size_t a = b.letter("a");
  const std::size_t bl = b.letter("b");
  const std::size_t c = b.letter("c");

  const Rational share(1, static_cast<unsigned long>(n));
  for (std::size_t i = 0; i < n; ++i) {
    b.edge(p1, choice[i], left[i], share);
    b.edge(p2, choice[i], right[i], share);
    add_block(b, left[i], right[i], r, a, bl, c, xs[i]);
  }
  b.edge(r, c, r, Rational(1));
  return b.build(p1, p2);
}

SurdSum irrational_distance(const Rational& x) {
  // sqrt(2x) / 2
  return SurdSum::sqrt_of(Rational(2 * x), kHalf);
}

}  // namespace

SqrtSumParameters sqrt_sum_parameters(const SqrtSum& spec) {
  if (spec.s.empty()) throw GadgetError("square-root-sum instance needs at least one s_i");
  if (spec.t < 1) throw GadgetError("square-root-sum threshold t must be >= 1");
  for (auto s : spec.s) {
    if (s < 1) throw GadgetError("square-root-sum entries s_i must be >= 1");
  }
  SqrtSumParameters out;
  out.h = mpz_class(3) * mpz_class(*std::max_element(spec.s.begin(), spec.s.end()));
  const Rational h2(out.h * out.h);
  for (auto s : spec.s) {
    Rational x = Rational(2 * mpz_class(s)) / h2;
    out.xs.push_back(x);
  }
  out.tau = Rational(mpz_class(spec.t)) / Rational(mpz_class(spec.s.size()) * out.h);
  return out;
}

Generated generate(const GadgetSpec& spec) {
  return std::visit(
      [](const auto& g) -> Generated {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, Example1>) {
          Builder b;
          const auto q1 = b.state("q1"), q2 = b.state("q2"), r1 = b.state("r1"), r2 = b.state("r2");
          const auto a = b.letter("a"), bl = b.letter("b"), c = b.letter("c");
          b.edge(q1, a, q1, kHalf);
          b.edge(q1, bl, q1, Rational(1, 4));
          b.edge(q1, c, r1, Rational(1, 4));
          b.edge(q2, a, q2, Rational(1, 4));
          b.edge(q2, bl, q2, kHalf);
          b.edge(q2, c, r2, Rational(1, 4));
          b.edge(r1, c, r1, Rational(1));
          b.edge(r2, c, r2, Rational(1));
          return Generated{b.build(q1, q2), std::nullopt};
        } else if constexpr (std::is_same_v<T, TwoState>) {
          Builder b;
          const auto q1 = b.state("q1"), q2 = b.state("q2");
          const auto a = b.letter("a"), bl = b.letter("b");
          b.edge(q1, a, q1, Rational(1, 3));
          b.edge(q1, bl, q2, Rational(2, 3));
          b.edge(q2, a, q2, Rational(2, 3));
          b.edge(q2, bl, q1, Rational(1, 3));
          return Generated{b.build(q1, q2), std::nullopt};
        } else if constexpr (std::is_same_v<T, Irrational>) {
          require_open_half(g.x);
          Builder b;
          const auto q1 = b.state("q1"), q2 = b.state("q2"), r = b.state("r");
          const auto a = b.letter("a"), bl = b.letter("b"), c = b.letter("c");
          add_block(b, q1, q2, r, a, bl, c, g.x);
          b.edge(r, c, r, Rational(1));
          return Generated{b.build(q1, q2), std::nullopt};
        } else if constexpr (std::is_same_v<T, Parallel>) {
          return Generated{make_parallel(g.xs), std::nullopt};
        } else if constexpr (std::is_same_v<T, BernoulliChain>) {
          if (!(g.theta > 1)) throw GadgetError("Bernoulli chain needs theta > 1");
          if (!(g.x >= -kHalf && g.x <= kHalf)) throw GadgetError("Bernoulli chain needs -1/2 <= x <= 1/2");
          Builder b;
          const auto p1 = b.state("p1"), p2 = b.state("p2"), q1 = b.state("q1"), q2 = b.state("q2"),
                     r1 = b.state("r1"), r2 = b.state("r2");
          const auto a = b.letter("a"), bl = b.letter("b");
          const Rational small = 1 / (2 * g.theta);
          const Rational cross = kHalf - small;
          b.edge(p1, a, q1, kHalf - g.x);
          b.edge(p1, bl, r1, kHalf + g.x);
          b.edge(p2, a, q2, kHalf + g.x);
          b.edge(p2, bl, r2, kHalf - g.x);
          b.edge(q1, a, q1, kHalf);
          b.edge(q1, a, q2, cross);
          b.edge(q1, bl, q1, small);
          b.edge(q2, a, q2, small);
          b.edge(q2, bl, q2, kHalf);
          b.edge(q2, bl, q1, cross);
          b.edge(r1, a, r1, Rational(1));
          b.edge(r2, bl, r2, Rational(1));
          return Generated{b.build(p1, p2), std::nullopt};
        } else {
          const auto params = sqrt_sum_parameters(g);
          return Generated{make_parallel(params.xs), params.tau};
        }
      },
      spec);
}

SurdSum closed_form(const GadgetSpec& spec) {
  return std::visit(
      [](const auto& g) -> SurdSum {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, Example1>) {
          return irrational_distance(Rational(1, 4));
        } else if constexpr (std::is_same_v<T, TwoState>) {
          return SurdSum(Rational(1));
        } else if constexpr (std::is_same_v<T, Irrational>) {
          require_open_half(g.x);
          return irrational_distance(g.x);
        } else if constexpr (std::is_same_v<T, Parallel>) {
          if (g.xs.empty()) throw GadgetError("parallel gadget needs at least one parameter");
          SurdSum total;
          for (const auto& x : g.xs) {
            require_open_half(x);
            total += irrational_distance(x);
          }
          return total * Rational(1, static_cast<unsigned long>(g.xs.size()));
        } else if constexpr (std::is_same_v<T, BernoulliChain>) {
          throw GadgetError("the Bernoulli chain has no closed form; use the fixed-point solver");
        } else {
          const auto params = sqrt_sum_parameters(g);
          SurdSum total;
          for (auto s : g.s) total += SurdSum::sqrt_of(mpz_class(s));
          return total * (1 / Rational(mpz_class(g.s.size()) * params.h));
        }
      },
      spec);
}

std::string family_name(const GadgetSpec& spec) {
  static const char* names[] = {"example1", "two-state", "irrational", "parallel", "bernoulli", "sqrt-sum"};
  return names[spec.index()];
}

}  // namespace tvd::gadgets
