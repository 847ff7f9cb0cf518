#ifndef TARSKI_SUPERMODULAR_HPP
#define TARSKI_SUPERMODULAR_HPP

#include "tarski/lattice.hpp"
#include "tarski/oracle.hpp"
#include "tarski/rational.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

namespace tarski {

/// Payoff of one player as a function of the full strategy profile.
using Utility = std::function<Rational(const GridPoint& profile)>;

/// A game whose players choose points of integer boxes. The profile is the
/// concatenation of all players' strategies, player 0 first.
class SupermodularGame {
 public:
  SupermodularGame(std::vector<GridBox> strategy_boxes, std::vector<Utility> utilities);

  int players() const { return static_cast<int>(boxes_.size()); }
  const GridBox& strategy_box(int i) const { return boxes_.at(static_cast<std::size_t>(i)); }
  int player_dims(int i) const { return strategy_box(i).dims(); }
  /// Total number of coordinates.
  int dims() const { return profile_box_.dims(); }
  /// First profile coordinate of player i.
  int offset(int i) const { return offsets_.at(static_cast<std::size_t>(i)); }
  const GridBox& profile_box() const { return profile_box_; }

  Rational utility(int i, const GridPoint& profile) const;
  GridPoint strategy(const GridPoint& profile, int i) const;
  GridPoint with_strategy(GridPoint profile, int i, const GridPoint& s) const;

 private:
  std::vector<GridBox> boxes_;
  std::vector<Utility> utilities_;
  std::vector<int> offsets_;
  GridBox profile_box_;
};

enum class BestResponseKind { Sup, Inf };

namespace violation {
/// u(x) + u(y) > u(x v y) + u(x ^ y) for profiles differing only in the player's block.
struct Supermodularity {
  GridPoint x;
  GridPoint y;
  int player;
};
/// Own strategies s <= s2, others t <= t2, and
/// u(s2, t2) - u(s, t2) < u(s2, t) - u(s, t). Profiles are stored whole:
/// low_low = (s, t), high_low = (s2, t), low_high = (s, t2), high_high = (s2, t2).
struct IncreasingDifferences {
  GridPoint low_low;
  GridPoint high_low;
  GridPoint low_high;
  GridPoint high_high;
  int player;
};
/// The join (or meet) of the argmax set is not itself a best response.
struct SupNotInArgmax {
  int player;
  GridPoint profile;
};
}  // namespace violation

using PropertyViolation =
    std::variant<violation::Supermodularity, violation::IncreasingDifferences, violation::SupNotInArgmax>;

std::string describe(const PropertyViolation& v);
/// Re-evaluates the stored inequality; true if it is still violated.
bool reproduces(const SupermodularGame& game, const PropertyViolation& v);

/// The game failed a supermodularity requirement or an equilibrium check.
class GameError : public std::runtime_error {
 public:
  explicit GameError(const std::string& what, std::optional<PropertyViolation> v = std::nullopt)
      : std::runtime_error(what), violation(std::move(v)) {}
  std::optional<PropertyViolation> violation;
};

/// Join (Sup) or meet (Inf) of player i's argmax against the other players'
/// strategies in `profile` (player i's own block is ignored). The argmax is
/// found by scanning the whole strategy box.
GridPoint best_response(const SupermodularGame& game, int i, const GridPoint& profile, BestResponseKind kind);

/// Exact argmax set of player i against `profile`.
std::vector<GridPoint> argmax_set(const SupermodularGame& game, int i, const GridPoint& profile);

/// profile -> (best_response(0), ..., best_response(k-1)).
std::unique_ptr<MonotoneOracle> beta_oracle(const SupermodularGame& game, BestResponseKind kind);

/// True if no player can strictly gain by a unilateral deviation.
bool is_pure_equilibrium(const SupermodularGame& game, const GridPoint& profile);

struct EquilibriumResult {
  GridPoint profile;
  /// Calls to the best-response profile map made by the search.
  std::uint64_t oracle_calls = 0;
  /// Direct best-response computations for the skipped player (shortcut only).
  std::uint64_t substitutions = 0;
};

/// A pure equilibrium as a fixed point of the best-response map. With the
/// shortcut, the player of largest dimension (lowest index on ties) is never
/// recursed on: inside the divide-and-conquer search its block is replaced by
/// its best response to the current partial profile.
EquilibriumResult solve_equilibrium(const SupermodularGame& game, BestResponseKind kind, bool shortcut);

/// Searches for a violation of own-strategy supermodularity or increasing
/// differences. Exhaustive for each player when the number of checked tuples
/// fits in sample_budget; random sampling of that many tuples otherwise.
std::optional<PropertyViolation> check_c2_c3(const SupermodularGame& game, std::uint64_t sample_budget,
                                             std::uint64_t seed = 1);

/// Two players on the domain of f with u1(x, y) = -|x - y|^2 and
/// u2(x, y) = -|f(x) - y|^2. Equilibria are exactly (x, x) for x in Fix(f).
/// The oracle must outlive the game.
SupermodularGame game_from_monotone(MonotoneOracle& f);

/// Reduction to any number of players with the given dimensions.
struct MultiReduction {
  SupermodularGame game;
  /// Profile coordinate of each position in the dimension-sorted order.
  std::vector<int> order;
  int d = 0;

  /// The d-vector read from the first d sorted coordinates.
  GridPoint fixed_point_of(const GridPoint& profile) const;
  /// The profile that repeats x cyclically.
  GridPoint profile_of(const GridPoint& x) const;
};

/// Requires sum(dims) >= 2d and sum(dims) - max(dims) >= d. Throws
/// std::invalid_argument otherwise.
MultiReduction game_from_monotone_multi(MonotoneOracle& f, const std::vector<int>& dims);

/// Discrete effort game: u_i(s) = alpha_i * s_i * (sum of others) - cost_i(s_i),
/// strategies 0..m_i, cost_i given as a table indexed by effort.
SupermodularGame diamond_search(const std::vector<Rational>& alpha, const std::vector<std::vector<Rational>>& cost);

}  // namespace tarski

#endif  // TARSKI_SUPERMODULAR_HPP
