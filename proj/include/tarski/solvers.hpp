#ifndef TARSKI_SOLVERS_HPP
#define TARSKI_SOLVERS_HPP

#include "tarski/lattice.hpp"
#include "tarski/oracle.hpp"

#include <optional>
#include <vector>

namespace tarski {

enum class IterationDirection { FromBottom, FromTop };

struct SolverOptions {
  /// Cross-check every new query against all previous ones and stop with a
  /// witness at the first comparable violated pair.
  bool paranoid = false;
};

struct FixSet {
  std::vector<GridPoint> points;
  /// Set when the componentwise min (max) of the points is itself fixed,
  /// which always holds for monotone f.
  std::optional<GridPoint> lfp;
  std::optional<GridPoint> gfp;

  bool contains(const GridPoint& p) const;
  bool empty() const { return points.empty(); }
};

/// Repeated application of f from box.low (LFP) or box.high (GFP).
SolveOutcome value_iteration(MonotoneOracle& oracle, const GridBox& box,
                             IterationDirection dir = IterationDirection::FromBottom);

/// Bisection on a one-dimensional box.
SolveOutcome binary_search_1d(MonotoneOracle& oracle, const GridBox& interval);

/// Nested binary search: fixes the last coordinate at the midpoint, solves
/// the remaining coordinates recursively, and keeps the half that f points
/// into. At most (floor(log2 N) + 1)^d queries for monotone self-maps.
SolveOutcome dqy_solve(MonotoneOracle& oracle, const GridBox& box, const SolverOptions& options = {});

/// Ascending walk x -> f(x) from box.low, stopping at a fixed point or at
/// the first x with f(x) not <= f(f(x)).
SolveOutcome local_search_pls(MonotoneOracle& oracle, const GridBox& box);

/// Every fixed point in the box by exhaustive evaluation.
FixSet brute_force_fix(MonotoneOracle& oracle, const GridBox& box);

}  // namespace tarski

#endif  // TARSKI_SOLVERS_HPP
