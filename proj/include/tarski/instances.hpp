#ifndef TARSKI_INSTANCES_HPP
#define TARSKI_INSTANCES_HPP

#include "tarski/lattice.hpp"
#include "tarski/oracle.hpp"
#include "tarski/rational.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

namespace tarski {

// ---------------------------------------------------------------------------
// Herringbones

/// A monotone unit-step path from (1,1) to (N,N) with one marked point. The
/// induced map sends path points one step toward the marked point and every
/// other point one diagonal step toward the path.
struct HerringboneInstance {
  Coord n = 0;
  std::vector<GridPoint> path;
  std::size_t fixed_index = 0;
  std::optional<std::uint64_t> seed;

  const GridPoint& fixed_point() const { return path[fixed_index]; }
};

/// Throws std::invalid_argument unless the path is a monotone unit-step path
/// from (1,1) to (N,N) and the fixed index is on it.
void validate(const HerringboneInstance& inst);

/// Builds an instance from a path and a point on it.
HerringboneInstance make_herringbone(Coord n, std::vector<GridPoint> path, const GridPoint& fixed);

/// The 5x5 example path (1,1),(1,2),(2,2),(2,3),(2,4),(3,4),(4,4),(5,4),(5,5)
/// with fixed point (2,2).
HerringboneInstance sample_herringbone();

class HerringboneOracle : public MonotoneOracle {
 public:
  explicit HerringboneOracle(HerringboneInstance inst);

  const HerringboneInstance& instance() const { return inst_; }

 protected:
  GridPoint evaluate(const GridPoint& x) override;

 private:
  // The path meets every anti-diagonal x + y = const exactly once, so the
  // path itself, indexed by x + y - 2, is the membership index.
  HerringboneInstance inst_;
};

std::unique_ptr<HerringboneOracle> herringbone_from_path(const HerringboneInstance& inst);

struct HerringboneDistributionParams {
  Coord n = 16;
  std::uint64_t seed = 0;
  Coord band_halfwidth = 2;   ///< floor(N^(1/4))
  Coord region_width = 4;     ///< floor(sqrt N)
  Coord subregion_width = 4;  ///< 2 * band_halfwidth

  static HerringboneDistributionParams for_size(Coord n, std::uint64_t seed);
};

/// Where the regions and special sub-regions of a random herringbone lie,
/// as ranges of x + y.
struct HerringboneLayout {
  std::vector<Coord> region_begin;
  std::vector<Coord> region_end;  ///< exclusive
  std::vector<Coord> entry_offset;  ///< x - y chosen for each region
  std::vector<Coord> special_begin;
  std::vector<Coord> special_end;  ///< exclusive
};

struct RandomHerringbone {
  HerringboneInstance instance;
  HerringboneLayout layout;
};

/// Random herringbone whose path stays in the band |x - y| <= N^(1/4),
/// keeps x - y fixed up to one outside a random special sub-region of each
/// region, and moves to the next region's offset inside it.
RandomHerringbone herringbone_random_with_layout(const HerringboneDistributionParams& params);
HerringboneInstance herringbone_random(const HerringboneDistributionParams& params);

/// Uniformly random path and fixed point, for any N >= 1.
HerringboneInstance herringbone_uniform_path(Coord n, std::uint64_t seed);

// ---------------------------------------------------------------------------
// SAT

struct CnfFormula {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;

  /// Bit i - 1 of the assignment is the value of variable i.
  bool satisfied_by(std::uint64_t assignment) const;
};

/// DIMACS CNF: comment lines, a "p cnf V C" header, zero-terminated clauses.
CnfFormula parse_dimacs(std::string_view text);

/// One-dimensional map on {0, ..., 2^n}, stored shifted by one onto
/// [1, 2^n + 1]: a satisfying assignment is fixed, every other assignment
/// moves up by one, and the top is fixed. Its least fixed point is below the
/// top exactly when the formula is satisfiable.
std::unique_ptr<MonotoneOracle> sat_lfp_instance(const CnfFormula& cnf);

// ---------------------------------------------------------------------------
// Continuous maps

template <typename Scalar>
using ContinuousMap = std::function<Vector<Scalar>(const Vector<Scalar>&)>;

/// g(x) = round(k f(x / k)) on {k, ..., N k}^d with k = ceil(1 / eps); a
/// fixed point x of g gives the approximate fixed point x / k of f.
class DiscretizedOracle : public MonotoneOracle {
 public:
  DiscretizedOracle(ContinuousMap<Rational> f, Coord n, int d, Coord k);

  Coord scale() const { return k_; }
  RationalVector to_continuous(const GridPoint& x) const;

 protected:
  GridPoint evaluate(const GridPoint& x) override;

 private:
  ContinuousMap<Rational> f_;
  Coord k_;
};

std::unique_ptr<DiscretizedOracle> discretize_continuous(ContinuousMap<Rational> f, Coord n, int d,
                                                         const Rational& eps);

}  // namespace tarski

#endif  // TARSKI_INSTANCES_HPP
