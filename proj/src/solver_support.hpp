#ifndef TARSKI_SRC_SOLVER_SUPPORT_HPP
#define TARSKI_SRC_SOLVER_SUPPORT_HPP

#include "tarski/lattice.hpp"
#include "tarski/oracle.hpp"

#include <vector>

namespace tarski::detail {

struct WitnessFound {
  MonotonicityWitness witness;
};

/// Query front end shared by the solvers. In paranoid mode every answer is
/// compared with all earlier ones and a violated comparable pair is thrown
/// as WitnessFound.
class Asker {
 public:
  Asker(MonotoneOracle& oracle, bool paranoid) : oracle_(oracle), paranoid_(paranoid) {}

  GridPoint operator()(const GridPoint& x) {
    GridPoint fx = oracle_.query(x);
    if (paranoid_) {
      for (const auto& r : seen_) {
        if (leq(r.query, x) && !leq(r.answer, fx)) throw WitnessFound{{r.query, x, r.answer, fx}};
        if (leq(x, r.query) && !leq(fx, r.answer)) throw WitnessFound{{x, r.query, fx, r.answer}};
      }
      seen_.push_back({x, fx});
    }
    return fx;
  }

  /// f(x) left the box in one of its first k coordinates. Compares against
  /// the matching corner; if that does not expose a violation, the box was
  /// not mapped into itself and MalformedInputError is thrown.
  MonotonicityWitness escape(const GridBox& box, const GridPoint& x, const GridPoint& fx, int k) {
    bool above = false;
    bool below = false;
    for (int j = 0; j < k; ++j) {
      if (fx[j] > box.high()[j]) above = true;
      if (fx[j] < box.low()[j]) below = true;
    }
    if (above && x != box.high()) {
      GridPoint fh = (*this)(box.high());
      if (!leq(fx, fh)) return {x, box.high(), fx, fh};
    }
    if (below && x != box.low()) {
      GridPoint fl = (*this)(box.low());
      if (!leq(fl, fx)) return {box.low(), x, fl, fx};
    }
    throw MalformedInputError("f does not map " + to_string(box) + " into itself (f" +
                              to_string(x) + " = " + to_string(fx) + ")");
  }

 private:
  MonotoneOracle& oracle_;
  bool paranoid_;
  std::vector<QueryRecord> seen_;
};

}  // namespace tarski::detail

#endif  // TARSKI_SRC_SOLVER_SUPPORT_HPP
