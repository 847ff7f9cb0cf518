#include "tarski/solvers.hpp"

#include "solver_support.hpp"

namespace tarski {

bool FixSet::contains(const GridPoint& p) const {
  for (const auto& q : points) {
    if (q == p) return true;
  }
  return false;
}

namespace {

using detail::Asker;
using detail::WitnessFound;

SolveOutcome finish(MonotoneOracle& oracle, std::uint64_t start,
                    std::variant<GridPoint, MonotonicityWitness> result) {
  return SolveOutcome{std::move(result), oracle.queries() - start};
}

void require_inside(const MonotoneOracle& oracle, const GridBox& box) {
  if (box.dims() != oracle.dims()) throw ShapeError("box and oracle dimensions differ");
  if (!oracle.domain().contains(box)) {
    throw DomainError("box " + to_string(box) + " not inside oracle domain " +
                      to_string(oracle.domain()));
  }
}

}  // namespace

SolveOutcome value_iteration(MonotoneOracle& oracle, const GridBox& box, IterationDirection dir) {
  require_inside(oracle, box);
  const std::uint64_t start = oracle.queries();
  Asker ask(oracle, false);
  const bool up = dir == IterationDirection::FromBottom;
  GridPoint x = up ? box.low() : box.high();
  std::optional<GridPoint> prev;
  try {
    while (true) {
      GridPoint fx = ask(x);
      if (!box.contains(fx)) return finish(oracle, start, ask.escape(box, x, fx, box.dims()));
      if (fx == x) return finish(oracle, start, x);
      if (up && !leq(x, fx)) {
        return finish(oracle, start, MonotonicityWitness{*prev, x, x, fx});
      }
      if (!up && !leq(fx, x)) {
        return finish(oracle, start, MonotonicityWitness{x, *prev, fx, x});
      }
      prev = x;
      x = fx;
    }
  } catch (const WitnessFound& w) {
    return finish(oracle, start, w.witness);
  }
}

SolveOutcome binary_search_1d(MonotoneOracle& oracle, const GridBox& interval) {
  if (interval.dims() != 1) throw ShapeError("binary_search_1d needs a one-dimensional box");
  require_inside(oracle, interval);
  const std::uint64_t start = oracle.queries();
  Asker ask(oracle, false);
  Coord lo = interval.low()[0];
  Coord hi = interval.high()[0];
  try {
    while (true) {
      GridPoint m(1);
      m[0] = lo + (hi - lo) / 2;
      GridPoint fm = ask(m);
      const GridBox current(make_point({lo}), make_point({hi}));
      if (!current.contains(fm)) return finish(oracle, start, ask.escape(current, m, fm, 1));
      if (fm[0] == m[0]) return finish(oracle, start, m);
      if (fm[0] < m[0]) {
        hi = fm[0];
      } else {
        lo = fm[0];
      }
    }
  } catch (const WitnessFound& w) {
    return finish(oracle, start, w.witness);
  }
}

namespace {

struct Partial {
  GridPoint x;
  GridPoint fx;
};

// Fixed point of the map formed by the first k coordinates of f with the
// remaining coordinates held at tail. lo and hi are full-length points whose
// trailing coordinates equal the tail.
std::variant<Partial, MonotonicityWitness> dqy_rec(Asker& ask, int k, GridPoint lo, GridPoint hi) {
  if (k == 0) {
    GridPoint fx = ask(lo);
    return Partial{lo, fx};
  }
  const int i = k - 1;
  while (true) {
    const Coord m = lo[i] + (hi[i] - lo[i]) / 2;
    GridPoint sub_lo = lo;
    GridPoint sub_hi = hi;
    sub_lo[i] = m;
    sub_hi[i] = m;
    auto sub = dqy_rec(ask, k - 1, sub_lo, sub_hi);
    if (std::holds_alternative<MonotonicityWitness>(sub)) return sub;
    Partial p = std::get<Partial>(std::move(sub));
    const GridBox box(lo, hi);
    bool inside = true;
    for (int j = 0; j < k; ++j) {
      if (p.fx[j] < lo[j] || p.fx[j] > hi[j]) inside = false;
    }
    if (!inside) return ask.escape(box, p.x, p.fx, k);
    if (p.fx[i] == m) return p;
    if (p.fx[i] > m) {
      lo.head(k) = p.fx.head(k);
    } else {
      hi.head(k) = p.fx.head(k);
    }
  }
}

}  // namespace

SolveOutcome dqy_solve(MonotoneOracle& oracle, const GridBox& box, const SolverOptions& options) {
  require_inside(oracle, box);
  const std::uint64_t start = oracle.queries();
  Asker ask(oracle, options.paranoid);
  try {
    auto r = dqy_rec(ask, box.dims(), box.low(), box.high());
    if (std::holds_alternative<MonotonicityWitness>(r)) {
      return finish(oracle, start, std::get<MonotonicityWitness>(std::move(r)));
    }
    return finish(oracle, start, std::get<Partial>(std::move(r)).x);
  } catch (const WitnessFound& w) {
    return finish(oracle, start, w.witness);
  }
}

SolveOutcome local_search_pls(MonotoneOracle& oracle, const GridBox& box) {
  require_inside(oracle, box);
  const std::uint64_t start = oracle.queries();
  Asker ask(oracle, false);
  try {
    GridPoint x = box.low();
    GridPoint fx = ask(x);
    if (!box.contains(fx)) return finish(oracle, start, ask.escape(box, x, fx, box.dims()));
    while (fx != x) {
      GridPoint ffx = ask(fx);
      if (!leq(fx, ffx)) return finish(oracle, start, MonotonicityWitness{x, fx, fx, ffx});
      if (!box.contains(ffx)) return finish(oracle, start, ask.escape(box, fx, ffx, box.dims()));
      x = std::move(fx);
      fx = std::move(ffx);
    }
    return finish(oracle, start, x);
  } catch (const WitnessFound& w) {
    return finish(oracle, start, w.witness);
  }
}

FixSet brute_force_fix(MonotoneOracle& oracle, const GridBox& box) {
  require_inside(oracle, box);
  FixSet out;
  bool self_map = true;
  box.for_each([&](const GridPoint& x) {
    GridPoint fx = oracle.query(x);
    if (fx == x) out.points.push_back(x);
    if (!box.contains(fx)) self_map = false;
  });
  if (out.points.empty()) {
    if (self_map && !check_monotone_exhaustive(oracle, box)) {
      throw InternalError("monotone self-map on " + to_string(box) + " has no fixed point");
    }
    return out;
  }
  GridPoint lo = out.points.front();
  GridPoint hi = out.points.front();
  for (const auto& p : out.points) {
    lo = meet(lo, p);
    hi = join(hi, p);
  }
  if (out.contains(lo)) out.lfp = lo;
  if (out.contains(hi)) out.gfp = hi;
  return out;
}

}  // namespace tarski
