#include "tarski/oracle.hpp"

namespace tarski {

MonotoneOracle::MonotoneOracle(GridBox domain) : domain_(std::move(domain)) {}

GridPoint MonotoneOracle::query(const GridPoint& x) {
  if (!domain_.contains(x)) {
    throw DomainError("query " + to_string(x) + " outside domain " + to_string(domain_));
  }
  GridPoint y = evaluate(x);
  ++queries_;
  if (!domain_.contains(y)) {
    throw MalformedOracleError("oracle answered " + to_string(y) + " at " + to_string(x) +
                               ", outside " + to_string(domain_));
  }
  if (recording_) transcript_.push_back({x, y});
  return y;
}

FunctionOracle::FunctionOracle(GridBox domain, PointMap fn)
    : MonotoneOracle(std::move(domain)), fn_(std::move(fn)) {}

TableOracle::TableOracle(GridBox domain, std::vector<GridPoint> table)
    : MonotoneOracle(std::move(domain)), table_(std::move(table)) {
  if (table_.size() != this->domain().point_count()) {
    throw ShapeError("table has " + std::to_string(table_.size()) + " entries, box has " +
                     std::to_string(this->domain().point_count()));
  }
  for (const auto& v : table_) {
    if (!this->domain().contains(v)) {
      throw MalformedOracleError("table entry " + to_string(v) + " outside " +
                                 to_string(this->domain()));
    }
  }
}

std::vector<GridPoint> TableOracle::tabulate(MonotoneOracle& source) {
  std::vector<GridPoint> table;
  table.reserve(source.domain().point_count());
  source.domain().for_each([&](const GridPoint& x) { table.push_back(source.query(x)); });
  return table;
}

GridPoint TableOracle::evaluate(const GridPoint& x) { return table_[domain().index_of(x)]; }

ReversedOracle::ReversedOracle(MonotoneOracle& inner)
    : MonotoneOracle(GridBox(reverse(inner.domain().low()), reverse(inner.domain().high()))),
      inner_(inner) {}

GridPoint ReversedOracle::evaluate(const GridPoint& x) { return reverse(inner_.query(reverse(x))); }

std::optional<MonotonicityWitness> check_monotone_exhaustive(MonotoneOracle& oracle,
                                                             const GridBox& box) {
  std::vector<GridPoint> values;
  values.reserve(box.point_count());
  box.for_each([&](const GridPoint& x) { values.push_back(oracle.query(x)); });

  std::optional<MonotonicityWitness> found;
  std::uint64_t index = 0;
  box.for_each([&](const GridPoint& x) {
    const std::uint64_t ix = index++;
    if (found) return;
    for (int i = 0; i < box.dims(); ++i) {
      if (x[i] == box.high()[i]) continue;
      GridPoint y = x;
      ++y[i];
      const GridPoint& fx = values[ix];
      const GridPoint& fy = values[box.index_of(y)];
      if (!leq(fx, fy)) {
        found = MonotonicityWitness{x, y, fx, fy};
        return;
      }
    }
  });
  return found;
}

bool maps_into(MonotoneOracle& oracle, const GridBox& box) {
  bool ok = true;
  box.for_each([&](const GridPoint& x) {
    if (ok && !box.contains(oracle.query(x))) ok = false;
  });
  return ok;
}

}  // namespace tarski
