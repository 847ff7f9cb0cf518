#ifndef TARSKI_ORACLE_HPP
#define TARSKI_ORACLE_HPP

#include "tarski/lattice.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace tarski {

struct QueryRecord {
  GridPoint query;
  GridPoint answer;
};

/// Black-box map f from a box into itself. Monotonicity is a promise only.
///
/// query() validates both the argument and the answer against the domain and
/// counts every call. Subclasses implement evaluate().
class MonotoneOracle {
 public:
  explicit MonotoneOracle(GridBox domain);
  virtual ~MonotoneOracle() = default;

  MonotoneOracle(const MonotoneOracle&) = delete;
  MonotoneOracle& operator=(const MonotoneOracle&) = delete;

  const GridBox& domain() const { return domain_; }
  int dims() const { return domain_.dims(); }

  GridPoint query(const GridPoint& x);

  std::uint64_t queries() const { return queries_; }
  void reset_queries() { queries_ = 0; }

  void set_recording(bool on) { recording_ = on; }
  bool recording() const { return recording_; }
  const std::vector<QueryRecord>& transcript() const { return transcript_; }
  void clear_transcript() { transcript_.clear(); }

 protected:
  virtual GridPoint evaluate(const GridPoint& x) = 0;

 private:
  GridBox domain_;
  std::uint64_t queries_ = 0;
  bool recording_ = false;
  std::vector<QueryRecord> transcript_;
};

using PointMap = std::function<GridPoint(const GridPoint&)>;

class FunctionOracle : public MonotoneOracle {
 public:
  FunctionOracle(GridBox domain, PointMap fn);

 protected:
  GridPoint evaluate(const GridPoint& x) override { return fn_(x); }

 private:
  PointMap fn_;
};

/// Exhaustive value table over the domain, row-major with the last
/// coordinate varying fastest.
class TableOracle : public MonotoneOracle {
 public:
  TableOracle(GridBox domain, std::vector<GridPoint> table);

  /// Tabulates another oracle over its full domain (counts its queries).
  static std::vector<GridPoint> tabulate(MonotoneOracle& source);

  const std::vector<GridPoint>& table() const { return table_; }

 protected:
  GridPoint evaluate(const GridPoint& x) override;

 private:
  std::vector<GridPoint> table_;
};

/// Forwards to an inner oracle with the coordinate order reversed.
class ReversedOracle : public MonotoneOracle {
 public:
  explicit ReversedOracle(MonotoneOracle& inner);

  static GridPoint reverse(const GridPoint& x) { return x.reverse(); }

 protected:
  GridPoint evaluate(const GridPoint& x) override;

 private:
  MonotoneOracle& inner_;
};

/// Returns a violating pair if f is not monotone on the box. Every point is
/// evaluated exactly once; only covering pairs x <= x + e_i are compared,
/// which suffices by transitivity.
std::optional<MonotonicityWitness> check_monotone_exhaustive(MonotoneOracle& oracle,
                                                             const GridBox& box);

/// True when f(x) lies in the box for every x in the box.
bool maps_into(MonotoneOracle& oracle, const GridBox& box);

}  // namespace tarski

#endif  // TARSKI_ORACLE_HPP
