#ifndef TARSKI_LATTICE_HPP
#define TARSKI_LATTICE_HPP

#include <Eigen/Core>

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace tarski {

using Coord = std::int64_t;

/// A point of the integer grid. Coordinates are 1-based on [N]^d unless a box
/// says otherwise.
using GridPoint = Eigen::Matrix<Coord, Eigen::Dynamic, 1>;

GridPoint make_point(std::initializer_list<Coord> coords);
GridPoint make_point(const std::vector<Coord>& coords);
std::vector<Coord> to_vector(const GridPoint& p);
std::string to_string(const GridPoint& p);

// ---------------------------------------------------------------------------
// Errors

/// Two points or boxes of different dimension were combined.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A caller queried or constructed something outside its box.
class DomainError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// The oracle answered outside its own domain.
class MalformedOracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A solver's premise failed (box not self-mapped and no witness available).
class MalformedInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal consistency check failed; signals a bug, never bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// ---------------------------------------------------------------------------
// Partial order

/// Componentwise x <= y.
bool leq(const GridPoint& x, const GridPoint& y);
/// Componentwise (max, min).
std::pair<GridPoint, GridPoint> join_meet(const GridPoint& x, const GridPoint& y);
GridPoint join(const GridPoint& x, const GridPoint& y);
GridPoint meet(const GridPoint& x, const GridPoint& y);

// ---------------------------------------------------------------------------
// Boxes

/// The integer box L(low, high) = { x : low <= x <= high }.
class GridBox {
 public:
  GridBox() = default;
  GridBox(GridPoint low, GridPoint high);

  /// [1, side_0] x ... x [1, side_{d-1}].
  static GridBox from_sides(const std::vector<Coord>& sides);
  /// [1, n]^d.
  static GridBox cube(Coord n, int d);

  const GridPoint& low() const { return low_; }
  const GridPoint& high() const { return high_; }
  int dims() const { return static_cast<int>(low_.size()); }
  Coord side(int i) const { return high_[i] - low_[i] + 1; }

  bool contains(const GridPoint& x) const;
  bool contains(const GridBox& other) const;
  /// Number of integer points, saturating at UINT64_MAX.
  std::uint64_t point_count() const;
  /// Componentwise clamp into the box.
  GridPoint clamp(const GridPoint& x) const;

  /// Row-major rank of x (last coordinate fastest).
  std::uint64_t index_of(const GridPoint& x) const;
  GridPoint point_at(std::uint64_t index) const;

  /// Calls fn(point) for every point in row-major order.
  template <typename Fn>
  void for_each(Fn&& fn) const {
    if (dims() == 0) return;
    GridPoint x = low_;
    while (true) {
      fn(static_cast<const GridPoint&>(x));
      int i = dims() - 1;
      while (i >= 0 && x[i] == high_[i]) {
        x[i] = low_[i];
        --i;
      }
      if (i < 0) return;
      ++x[i];
    }
  }

  bool operator==(const GridBox& other) const {
    return low_ == other.low_ && high_ == other.high_;
  }

 private:
  GridPoint low_;
  GridPoint high_;
};

std::string to_string(const GridBox& b);

// ---------------------------------------------------------------------------
// Solver outcomes

/// x <= y with f(x) not <= f(y).
struct MonotonicityWitness {
  GridPoint x;
  GridPoint y;
  GridPoint fx;
  GridPoint fy;

  /// Re-checks the order-theoretic conditions on the stored values.
  bool valid() const { return leq(x, y) && !leq(fx, fy); }
};

struct SolveOutcome {
  std::variant<GridPoint, MonotonicityWitness> result;
  std::uint64_t queries = 0;

  bool is_fixed_point() const { return std::holds_alternative<GridPoint>(result); }
  const GridPoint& point() const { return std::get<GridPoint>(result); }
  const MonotonicityWitness& witness() const { return std::get<MonotonicityWitness>(result); }
};

}  // namespace tarski

#endif  // TARSKI_LATTICE_HPP
