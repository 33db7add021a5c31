#pragma once

// Exact rational linear programming in equality standard form:
//
//   maximize c.x  subject to  A x = b,  x >= 0.
//
// Two-phase primal simplex on a dense tableau with Bland's least-index rule
// for both the entering and the leaving variable, so it terminates on
// degenerate programs. All arithmetic is exact.

#include "tvd/rational.hpp"

#include <cstddef>
#include <vector>

namespace tvd {

struct LinearProgram {
  RationalVector objective;                 // c, one entry per variable
  std::vector<RationalVector> constraints;  // rows of A
  RationalVector rhs;                       // b

  std::size_t num_variables() const { return objective.size(); }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  Rational optimum;        // valid when Optimal
  RationalVector witness;  // valid when Optimal: A x = b, x >= 0, c.x = optimum
};

struct Feasibility {
  bool feasible = false;
  RationalVector witness;
};

/// Throws std::invalid_argument when the dimensions of c, A and b disagree.
LpOutcome lp_maximize(const LinearProgram& lp);

/// Phase 1 only: is {x >= 0 | A x = b} nonempty? `num_variables` is needed
/// when A has no rows.
Feasibility lp_feasible(const std::vector<RationalVector>& constraints, const RationalVector& rhs,
                        std::size_t num_variables);

}  // namespace tvd
