#ifndef TARSKI_STOCHASTIC_HPP
#define TARSKI_STOCHASTIC_HPP

#include "tarski/lattice.hpp"
#include "tarski/oracle.hpp"
#include "tarski/rational.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace tarski {

// ---------------------------------------------------------------------------
// Matrix games and rounding

struct MatrixGameSolution {
  Rational value;
  RationalVector row_strategy;
  RationalVector col_strategy;
};

/// Exact minimax value of the zero-sum game where the row player maximizes.
MatrixGameSolution matrix_game_value(const RationalMatrix& a);

/// The rational p/q with 1 <= q <= max_den closest to x; ties go to the
/// smaller denominator.
Rational best_rational_approx(const Rational& x, const BigInt& max_den);

// ---------------------------------------------------------------------------
// Simple stochastic games

enum class SsgKind { Random, Max, Min, ZeroSink, OneSink };

struct SsgEdge {
  int to = 0;
  Rational p;  ///< transition probability; unused for max and min vertices
};

struct SsgVertex {
  SsgKind kind = SsgKind::ZeroSink;
  std::vector<SsgEdge> edges;
};

struct SsgInstance {
  std::vector<SsgVertex> vertices;
  int start = 0;

  int size() const { return static_cast<int>(vertices.size()); }
  /// Vertices that are not sinks, in index order.
  std::vector<int> inner() const;
  /// Throws MalformedInputError on bad edges, probabilities, or start.
  void validate() const;
};

/// One step of the value equations: random vertices average, max and min
/// vertices pick the best successor, sinks are 0 and 1. Entries of x at sink
/// positions are ignored.
RationalVector ssg_value_map(const SsgInstance& inst, const RationalVector& x);

/// Exact values by enumerating all positional strategy pairs. For each pair,
/// vertices that cannot reach the 1-sink get 0 and the rest solve a linear
/// system. Throws std::runtime_error when more than `budget` pairs exist.
RationalVector ssg_brute_force(const SsgInstance& inst, std::uint64_t budget = 1u << 20);

/// eps is the target accuracy, beta the discount, grid_side the scale M of
/// the grid {0..M}, denominator_bound the D used for rounding.
struct PrecisionPlan {
  Rational eps;
  Rational beta;
  Coord grid_side = 0;
  BigInt denominator_bound;

  /// Throws std::invalid_argument unless 0 < beta < 1, grid_side >= 2, D >= 1.
  void validate() const;
};

/// Any field set here replaces the derived value; the grid side is then
/// recomputed from eps and beta.
struct PlanOverrides {
  std::optional<Rational> eps;
  std::optional<Rational> beta;
  std::optional<BigInt> denominator_bound;
};

/// Plan from instance data: D bounds every value denominator (Hadamard bound
/// on the linear systems of positional strategies); beta and M are powers of
/// two sized so the rounded discounted value lands within 1/(4 D^2) of the
/// true value, assuming expected absorption time at most n / p_min^n.
PrecisionPlan ssg_default_plan(const SsgInstance& inst, const PlanOverrides& overrides = {});

enum class MonotoneSolver { Dqy, ValueIteration, Pls };

struct SsgTarskiResult {
  RationalVector approx;   ///< all vertices, v*/M on inner ones
  RationalVector rounded;  ///< best rational approximations with denominator <= D
  Rational residual;       ///< max over inner vertices of |(1 - beta) F(approx) - approx|
  std::uint64_t queries = 0;
};

/// Grid map H(v)_i = floor(M (1 - beta) F(v / M)_i) on the inner vertices,
/// stored 1-based: grid value g represents v = g - 1.
std::unique_ptr<MonotoneOracle> ssg_grid_oracle(const SsgInstance& inst, const PrecisionPlan& plan);

SsgTarskiResult ssg_solve_tarski(const SsgInstance& inst, const PrecisionPlan& plan,
                                 MonotoneSolver solver = MonotoneSolver::Dqy);

// ---------------------------------------------------------------------------
// Shapley games

struct ShapleyState {
  RationalMatrix reward;
  /// transition[j][k] is the vector of move probabilities over states.
  std::vector<std::vector<RationalVector>> transition;
};

struct ShapleyInstance {
  std::vector<ShapleyState> states;
  int start = 0;

  int size() const { return static_cast<int>(states.size()); }
  /// Smallest halting probability over all states and action pairs.
  Rational min_halt() const;
  /// Largest absolute reward.
  Rational max_reward() const;
  void validate() const;
};

/// x_i <- Val(A^i + sum_r P^i(r) x_r).
RationalVector shapley_value_map(const ShapleyInstance& inst, const RationalVector& x);

enum class ShapleyRoute { ContractionIteration, TarskiGrid };

struct ShapleyResult {
  RationalVector value;
  Rational residual;  ///< max norm of F(value) - value
  std::uint64_t steps = 0;  ///< iterations or grid queries
};

/// Values within eps in max norm. The contraction route iterates F on a
/// grid of step eps q^2 / 8 until the residual drops below eps q. The grid
/// route solves H'(v)_i = floor(F(v h)_i / h) on {-K..K}^n with h = eps q / 2
/// and K = ceil(M / (q h)).
ShapleyResult shapley_solve(const ShapleyInstance& inst, const Rational& eps, ShapleyRoute route,
                            MonotoneSolver solver = MonotoneSolver::Dqy);

/// The grid map of the Tarski route, stored 1-based (g represents g - K - 1).
std::unique_ptr<MonotoneOracle> shapley_grid_oracle(const ShapleyInstance& inst, const Rational& eps);

}  // namespace tarski

#endif  // TARSKI_STOCHASTIC_HPP
