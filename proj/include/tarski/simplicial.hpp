#ifndef TARSKI_SIMPLICIAL_HPP
#define TARSKI_SIMPLICIAL_HPP

#include "tarski/lattice.hpp"
#include "tarski/oracle.hpp"
#include "tarski/rational.hpp"

#include <optional>
#include <vector>

namespace tarski {

/// Freudenthal simplex: y^0 = base, y^j = y^(j-1) + e_(perm[j-1]). The
/// permutation ranges over the coordinates where the box is not flat, so the
/// vertices form a chain y^0 <= ... <= y^k.
struct Simplex {
  GridPoint base;
  std::vector<int> perm;

  std::vector<GridPoint> vertices() const;
};

/// Barycentric coordinates of x in the simplex, or nothing if x is outside.
std::optional<RationalVector> barycentric_in(const Simplex& s, const RationalVector& x);

struct Located {
  Simplex simplex;
  RationalVector lambda;
};

/// The simplex of the box's subdivision containing x. The base is floor(x),
/// pulled down by one where x sits on the box's upper face; the permutation
/// sorts fractional parts in decreasing order, ties by coordinate index.
Located locate_simplex(const RationalVector& x, const GridBox& box);

/// Piecewise-linear extension f'(x) = sum_j lambda_j f(y^j). With clamp,
/// each f(y^j) is first clamped into the box, which keeps f' linear on every
/// simplex and maps the box into itself.
RationalVector pl_eval(MonotoneOracle& oracle, const RationalVector& x, const GridBox& box, bool clamp);

/// f' evaluated through a given simplex that contains x.
RationalVector pl_eval_in(MonotoneOracle& oracle, const Simplex& s, const RationalVector& x,
                          const GridBox& box, bool clamp);

struct PlFixedPoint {
  RationalVector x;
  Simplex simplex;
  RationalVector lambda;
};

/// A fixed point of the clamped f' on the box, found by scanning simplices in
/// lexicographic (base, permutation) order and solving each one exactly over
/// its vertex supports. Each lattice point is queried at most once.
PlFixedPoint pl_fixed_point_exact(MonotoneOracle& oracle, const GridBox& box);

/// The face of the simplex with x in its relative interior.
struct Cell {
  std::vector<GridPoint> support;
  GridPoint u;  ///< top vertex
  GridPoint v;  ///< bottom vertex
};

Cell extract_cell(const Simplex& s, const RationalVector& lambda);

struct PpadTrace {
  std::vector<GridBox> boxes;  ///< box at each level, outermost first
  std::vector<RationalVector> pl_fixed_points;
};

/// Fixed point or violation by repeatedly solving the PL extension and
/// recursing into the smaller of L(low, v) and L(u, high).
SolveOutcome ppad_route_solve(MonotoneOracle& oracle, const GridBox& box, PpadTrace* trace = nullptr);

RationalVector to_rational(const GridPoint& p);
/// Integer point equal to x, if x is integral.
std::optional<GridPoint> to_grid(const RationalVector& x);

}  // namespace tarski

#endif  // TARSKI_SIMPLICIAL_HPP
