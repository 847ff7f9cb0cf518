#ifndef TARSKI_ADVERSARY_HPP
#define TARSKI_ADVERSARY_HPP

#include "tarski/instances.hpp"
#include "tarski/lattice.hpp"
#include "tarski/oracle.hpp"
#include "tarski/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tarski {

enum class AdversaryDirection { NW, SE, N, S, E, W, FixedHere };

enum class QueryClass {
  Forced,       ///< point already known to be off the path
  Repeated,     ///< asked before; same answer again
  NonDecisive,  ///< NW or SE chosen by remaining path count
  Short,        ///< NW or SE chosen by distance to the walls
  Decisive,     ///< point must be on the path; principal direction
};

std::string to_string(AdversaryDirection d);
std::string to_string(QueryClass c);

/// Offset of a direction as a grid step; FixedHere is the zero step.
GridPoint direction_step(AdversaryDirection d);

struct AdversaryAnswer {
  AdversaryDirection direction;
  QueryClass classification;
  GridPoint value;  ///< q + direction_step(direction)
};

/// The two forbidden regions of the N x N grid. The upper-left region is
/// { y >= ul_low[x] } and the lower-right region is { y <= lr_high[x] };
/// both bounds are non-decreasing in x.
class Staircases {
 public:
  explicit Staircases(Coord n);

  Coord n() const { return n_; }
  bool in_upper_left(const GridPoint& p) const { return p[1] >= ul_low_[static_cast<std::size_t>(p[0])]; }
  bool in_lower_right(const GridPoint& p) const { return p[1] <= lr_high_[static_cast<std::size_t>(p[0])]; }
  /// Off-grid points count as forbidden.
  bool forbidden(const GridPoint& p) const;

  /// Removes { x <= q.x, y >= q.y }: the answer at q was SE.
  void add_upper_left_block(const GridPoint& q);
  /// Removes { x >= q.x, y <= q.y }: the answer at q was NW.
  void add_lower_right_block(const GridPoint& q);

  Coord ul_low(Coord x) const { return ul_low_[static_cast<std::size_t>(x)]; }
  Coord lr_high(Coord x) const { return lr_high_[static_cast<std::size_t>(x)]; }

 private:
  Coord n_;
  std::vector<Coord> ul_low_;
  std::vector<Coord> lr_high_;
};

/// Monotone unit-step paths from domain.low to domain.high avoiding both
/// forbidden regions, counted exactly.
BigInt path_count(const GridBox& domain, const Staircases& walls);

struct AnswerRecord {
  GridPoint query;
  AdversaryAnswer answer;
  bool in_active = false;  ///< query fell in the domain that holds the fixed point
  BigInt count_before;     ///< paths in that domain before the answer
  BigInt count_after;
};

/// Deterministic online adversary on [N]^2. It commits to nothing beyond a
/// chain of path points and two forbidden staircases, and answers so as to
/// keep as many candidate main paths as possible.
class AdversaryState {
 public:
  explicit AdversaryState(Coord n);

  Coord n() const { return n_; }
  Coord width() const { return w_; }

  AdversaryAnswer answer(const GridPoint& q);

  const std::vector<AnswerRecord>& history() const { return history_; }
  const Staircases& walls() const { return walls_; }
  /// Points known to lie on the main path, ordered along it.
  const std::vector<GridPoint>& committed() const { return chain_; }
  /// Box between the committed points around the fixed point.
  GridBox current_domain() const { return GridBox(active_lo_, active_hi_); }
  BigInt current_count() const { return path_count(current_domain(), walls_); }
  bool finished() const { return finished_; }

 private:
  struct Located;

  Located locate(const GridPoint& q) const;
  std::size_t chain_index_by_sum(Coord s) const;
  void commit(const GridPoint& p);
  bool free_in(const GridBox& box, const GridPoint& p) const;
  BigInt count_in(const GridBox& box) const;
  AdversaryAnswer decisive(const GridPoint& q, const Located& where, BigInt& after);
  AdversaryDirection pick(const GridPoint& q, const GridBox& target_box, bool forward, BigInt& count);

  Coord n_;
  Coord w_;
  Staircases walls_;
  std::vector<GridPoint> chain_;
  GridPoint active_lo_;
  GridPoint active_hi_;
  bool finished_ = false;
  std::map<std::pair<Coord, Coord>, AdversaryAnswer> cache_;
  std::vector<AnswerRecord> history_;
};

/// Oracle view of an adversary, for running unmodified solvers against it.
class AdversaryOracle : public MonotoneOracle {
 public:
  explicit AdversaryOracle(Coord n);

  AdversaryState& state() { return state_; }
  const AdversaryState& state() const { return state_; }

 protected:
  GridPoint evaluate(const GridPoint& x) override { return state_.answer(x).value; }

 private:
  AdversaryState state_;
};

/// A herringbone consistent with every answer given so far. Throws
/// InternalError if no such instance exists.
HerringboneInstance extract_consistent_instance(const AdversaryState& state);

/// Checks the potential inequality for one answer: with C the path count of
/// the fixed point's domain, a decisive answer keeps 4 C'^2 >= C, a
/// non-decisive one 4 C' >= C, and a short one C' N^w >= C.
bool potential_holds(const AnswerRecord& r, Coord n, Coord w);

struct DuelReport {
  std::string solver;
  Coord n = 0;
  std::uint64_t queries = 0;
  std::vector<AnswerRecord> history;
  HerringboneInstance extracted;
  std::optional<GridPoint> claimed;
  std::size_t replay_mismatches = 0;
  bool claim_matches = false;
  std::size_t potential_failures = 0;

  bool consistent() const { return replay_mismatches == 0 && claim_matches; }
};

/// Names accepted by duel(): dqy, vi, pls, binsearch.
const std::vector<std::string>& duel_solvers();

/// Runs a solver against a fresh adversary on [N]^2 and audits the result.
/// binsearch is nested binary search with the first coordinate outermost.
DuelReport duel(std::string_view solver, Coord n);

}  // namespace tarski

#endif  // TARSKI_ADVERSARY_HPP
