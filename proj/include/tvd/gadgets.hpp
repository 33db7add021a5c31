#pragma once

// Parametric example chains with known distances between their two initial
// states, and their closed-form distances.

#include "tvd/lmc.hpp"
#include "tvd/rational.hpp"
#include "tvd/surd.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace tvd::gadgets {

/// Two chains q1 -> r1 and q2 -> r2 over {a, b, c}, already unioned.
/// q1 emits a with 1/2 and b with 1/4, q2 the other way round; both leave
/// with c at 1/4 to a state that emits c forever. Distance sqrt(2)/4.
struct Example1 {};

/// Two states over {a, b}: q1 loops on a (1/3) and moves on b (2/3); q2 loops
/// on a (2/3) and moves on b (1/3). Distance 1.
struct TwoState {};

/// States q1, q2, r over {a, b, c} with parameter 0 < x < 1/2:
/// q1: a 1/2 (loop), b 1/2 - x (loop), c x -> r; q2 mirrors a and b;
/// r: c 1 (loop). Distance sqrt(2x)/2.
struct Irrational {
  Rational x;
};

/// n copies of Irrational(x_i) behind an initial uniform choice of letter
/// c_i, sharing the absorbing state r. Distance (1/n) sum sqrt(2 x_i)/2.
struct Parallel {
  std::vector<Rational> xs;
};

/// The six-state chain whose distance between p1 and p2 is 1/2 + f(x)/2 for
/// the Bernoulli-convolution fixed point f of parameter theta > 1,
/// with -1/2 <= x <= 1/2.
struct BernoulliChain {
  Rational theta;
  Rational x;
};

/// Parallel instance encoding sum_i sqrt(s_i) >= t as distance >= tau with
/// h = 3 max s_i, x_i = 2 s_i / h^2 and tau = t / (n h).
struct SqrtSum {
  std::vector<unsigned long> s;
  unsigned long t = 1;
};

using GadgetSpec = std::variant<Example1, TwoState, Irrational, Parallel, BernoulliChain, SqrtSum>;

class GadgetError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Generated {
  ProblemInstance instance;
  std::optional<Rational> threshold;  // set for SqrtSum only
};

/// Throws GadgetError when the parameters are out of range.
Generated generate(const GadgetSpec& spec);

/// Exact distance between the two initial states. Throws GadgetError for
/// BernoulliChain, which has no closed form (see bernoulli.hpp).
SurdSum closed_form(const GadgetSpec& spec);

/// Parameters x_i, h and tau of the square-root-sum encoding.
struct SqrtSumParameters {
  mpz_class h;
  std::vector<Rational> xs;
  Rational tau;
};
SqrtSumParameters sqrt_sum_parameters(const SqrtSum& spec);

std::string family_name(const GadgetSpec& spec);

}  // namespace tvd::gadgets
