#pragma once

#include "tvd/lmc_format.hpp"

#include <string>

namespace tvd::testing {

// q1 and q2 each leak into their own absorbing c-loop.
inline const std::string kAbsorbingPairText =
    "states: q1 q2 r1 r2\n"
    "alphabet: a b c\n"
    "init1: q1=1\n"
    "init2: q2=1\n"
    "trans: q1 a q1 1/2\n"
    "trans: q1 b q1 1/4\n"
    "trans: q1 c r1 1/4\n"
    "trans: q2 a q2 1/4\n"
    "trans: q2 b q2 1/2\n"
    "trans: q2 c r2 1/4\n"
    "trans: r1 c r1 1\n"
    "trans: r2 c r2 1\n";

// Two states at distance 1: a keeps the state, b swaps it.
inline const std::string kSwapText =
    "states: q1 q2\n"
    "alphabet: a b\n"
    "init1: q1=1\n"
    "init2: q2=1\n"
    "trans: q1 a q1 1/3\n"
    "trans: q1 b q2 2/3\n"
    "trans: q2 a q2 2/3\n"
    "trans: q2 b q1 1/3\n";

inline ProblemInstance absorbing_pair() { return parse_lmc(kAbsorbingPairText); }
inline ProblemInstance swap_chain() { return parse_lmc(kSwapText); }

inline ProblemInstance with_initial(const ProblemInstance& inst, const std::string& s1, const std::string& s2) {
  const auto n = inst.lmc.num_states();
  return make_instance(inst.lmc, SubDistribution::dirac(n, *inst.lmc.find_state(s1)),
                       SubDistribution::dirac(n, *inst.lmc.find_state(s2)));
}

}  // namespace tvd::testing
