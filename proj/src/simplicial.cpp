#include "tarski/simplicial.hpp"

#include "tarski/linalg.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace tarski {

namespace {

std::vector<int> active_coords(const GridBox& box) {
  std::vector<int> out;
  for (int i = 0; i < box.dims(); ++i) {
    if (box.low()[i] < box.high()[i]) out.push_back(i);
  }
  return out;
}

// Oracle values memoized for the duration of one solve.
class Cache {
 public:
  explicit Cache(MonotoneOracle& oracle) : oracle_(oracle) {}

  const GridPoint& operator()(const GridPoint& p) {
    auto key = to_vector(p);
    auto it = values_.find(key);
    if (it == values_.end()) it = values_.emplace(std::move(key), oracle_.query(p)).first;
    return it->second;
  }

 private:
  MonotoneOracle& oracle_;
  std::map<std::vector<Coord>, GridPoint> values_;
};

RationalVector combine(const std::vector<GridPoint>& values, const RationalVector& lambda) {
  RationalVector out = RationalVector::Zero(values.front().size());
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (lambda[j] == 0) continue;
    out += to_rational(values[j]) * lambda[j];
  }
  return out;
}

void check_in_box(const RationalVector& x, const GridBox& box) {
  if (x.size() != box.dims()) throw ShapeError("point and box differ in dimension");
  for (int i = 0; i < box.dims(); ++i) {
    if (x[i] < box.low()[i] || x[i] > box.high()[i]) throw DomainError("point outside the box");
  }
}

std::optional<PlFixedPoint> solve_in_simplex(const Simplex& s, const std::vector<GridPoint>& verts,
                                             const std::vector<GridPoint>& values) {
  const int k = static_cast<int>(verts.size());
  const int d = static_cast<int>(verts.front().size());
  // A coordinate where every vertex is pushed strictly the same way cannot balance.
  for (int i = 0; i < d; ++i) {
    bool pos = false, neg = false;
    for (int j = 0; j < k; ++j) {
      const Coord diff = verts[j][i] - values[j][i];
      pos |= diff >= 0;
      neg |= diff <= 0;
    }
    if (!pos || !neg) return std::nullopt;
  }
  // Supports by size, then lexicographically. A vertex of the solution
  // polytope has linearly independent support columns, so some support with
  // a unique solution is always hit when the polytope is non-empty.
  for (int size = 1; size <= k; ++size) {
    std::vector<bool> pick(k, false);
    std::fill(pick.begin(), pick.begin() + size, true);
    do {
      std::vector<int> cols;
      for (int j = 0; j < k; ++j) {
        if (pick[j]) cols.push_back(j);
      }
      RationalMatrix a(d + 1, size);
      RationalVector rhs = RationalVector::Zero(d + 1);
      rhs[d] = 1;
      for (int c = 0; c < size; ++c) {
        for (int i = 0; i < d; ++i) a(i, c) = Rational(verts[cols[c]][i] - values[cols[c]][i]);
        a(d, c) = 1;
      }
      auto sol = solve_exact<Rational>(a, rhs);
      if (!sol) continue;
      if (std::any_of(sol->begin(), sol->end(), [](const Rational& r) { return r < 0; })) continue;
      RationalVector lambda = RationalVector::Zero(k);
      for (int c = 0; c < size; ++c) lambda[cols[c]] = (*sol)[c];
      RationalVector x = RationalVector::Zero(d);
      for (int j = 0; j < k; ++j) x += to_rational(verts[j]) * lambda[j];
      return PlFixedPoint{x, s, lambda};
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return std::nullopt;
}

PlFixedPoint pl_fixed_point_cached(Cache& f, const GridBox& box) {
  const std::vector<int> active = active_coords(box);
  GridPoint base_high = box.high();
  for (int i : active) base_high[i] -= 1;
  const GridBox bases(box.low(), base_high);

  std::optional<PlFixedPoint> found;
  bases.for_each([&](const GridPoint& base) {
    if (found) return;
    std::vector<int> perm = active;
    do {
      Simplex s{base, perm};
      const auto verts = s.vertices();
      std::vector<GridPoint> values;
      values.reserve(verts.size());
      for (const auto& y : verts) values.push_back(box.clamp(f(y)));
      found = solve_in_simplex(s, verts, values);
      if (found) return;
    } while (std::next_permutation(perm.begin(), perm.end()));
  });
  if (!found) throw MalformedOracleError("clamped extension has no fixed point; oracle values are inconsistent");
  return *found;
}

std::uint64_t count_points(const GridPoint& lo, const GridPoint& hi) { return GridBox(lo, hi).point_count(); }

}  // namespace

std::vector<GridPoint> Simplex::vertices() const {
  std::vector<GridPoint> out;
  out.reserve(perm.size() + 1);
  out.push_back(base);
  for (int i : perm) {
    GridPoint next = out.back();
    next[i] += 1;
    out.push_back(std::move(next));
  }
  return out;
}

RationalVector to_rational(const GridPoint& p) {
  RationalVector out(p.size());
  for (Eigen::Index i = 0; i < p.size(); ++i) out[i] = Rational(p[i]);
  return out;
}

std::optional<GridPoint> to_grid(const RationalVector& x) {
  GridPoint out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (den_of(x[i]) != 1) return std::nullopt;
    out[i] = to_int64(num_of(x[i]));
  }
  return out;
}

std::optional<RationalVector> barycentric_in(const Simplex& s, const RationalVector& x) {
  const Eigen::Index d = s.base.size();
  if (x.size() != d) throw ShapeError("point and simplex differ in dimension");
  RationalVector r(d);
  for (Eigen::Index i = 0; i < d; ++i) r[i] = x[i] - Rational(s.base[i]);
  std::vector<bool> in_perm(d, false);
  for (int i : s.perm) in_perm[i] = true;
  for (Eigen::Index i = 0; i < d; ++i) {
    if (!in_perm[i] && r[i] != 0) return std::nullopt;
  }
  const std::size_t k = s.perm.size();
  RationalVector lambda(k + 1);
  Rational prev = 1;
  for (std::size_t j = 0; j < k; ++j) {
    const Rational& cur = r[s.perm[j]];
    if (cur > prev) return std::nullopt;
    lambda[j] = prev - cur;
    prev = cur;
  }
  if (prev < 0) return std::nullopt;
  lambda[k] = prev;
  return lambda;
}

Located locate_simplex(const RationalVector& x, const GridBox& box) {
  check_in_box(x, box);
  const int d = box.dims();
  GridPoint base(d);
  std::vector<Rational> frac(d);
  for (int i = 0; i < d; ++i) {
    Coord y = to_int64(floor_of(x[i]));
    if (box.low()[i] < box.high()[i] && y == box.high()[i]) y -= 1;
    base[i] = y;
    frac[i] = x[i] - Rational(y);
  }
  std::vector<int> perm = active_coords(box);
  std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) { return frac[a] > frac[b]; });
  Simplex s{base, perm};
  auto lambda = barycentric_in(s, x);
  if (!lambda) throw InternalError("located simplex does not contain the point");
  return Located{std::move(s), std::move(*lambda)};
}

RationalVector pl_eval_in(MonotoneOracle& oracle, const Simplex& s, const RationalVector& x,
                          const GridBox& box, bool clamp) {
  auto lambda = barycentric_in(s, x);
  if (!lambda) throw DomainError("point not in the simplex");
  std::vector<GridPoint> values;
  for (const auto& y : s.vertices()) {
    GridPoint fy = oracle.query(y);
    values.push_back(clamp ? box.clamp(fy) : fy);
  }
  return combine(values, *lambda);
}

RationalVector pl_eval(MonotoneOracle& oracle, const RationalVector& x, const GridBox& box, bool clamp) {
  const Located loc = locate_simplex(x, box);
  return pl_eval_in(oracle, loc.simplex, x, box, clamp);
}

PlFixedPoint pl_fixed_point_exact(MonotoneOracle& oracle, const GridBox& box) {
  Cache f(oracle);
  return pl_fixed_point_cached(f, box);
}

Cell extract_cell(const Simplex& s, const RationalVector& lambda) {
  const auto verts = s.vertices();
  if (static_cast<std::size_t>(lambda.size()) != verts.size()) throw ShapeError("lambda does not match simplex");
  Cell cell;
  for (std::size_t j = 0; j < verts.size(); ++j) {
    if (lambda[j] > 0) cell.support.push_back(verts[j]);
  }
  if (cell.support.empty()) throw InternalError("barycentric coordinates are all zero");
  // Vertices form a chain, so the first and last support vertices are the extremes.
  cell.v = cell.support.front();
  cell.u = cell.support.back();
  return cell;
}

SolveOutcome ppad_route_solve(MonotoneOracle& oracle, const GridBox& box, PpadTrace* trace) {
  if (!oracle.domain().contains(box)) throw DomainError("box not inside the oracle domain");
  const std::uint64_t start = oracle.queries();
  Cache f(oracle);
  auto done = [&](std::variant<GridPoint, MonotonicityWitness> r) {
    if (auto* w = std::get_if<MonotonicityWitness>(&r); w && !w->valid()) {
      throw InternalError("ppad route produced an invalid witness");
    }
    return SolveOutcome{std::move(r), oracle.queries() - start};
  };

  // Each level keeps f(low) >= low and f(high) <= high. For the whole domain
  // this is automatic; for a caller's sub-box it is checked once up front.
  GridPoint lo = box.low();
  GridPoint hi = box.high();
  if (!(box == oracle.domain()) && (!leq(lo, f(lo)) || !leq(f(hi), hi))) {
    throw MalformedInputError("box is not mapped into itself at its corners");
  }

  while (true) {
    const GridBox cur(lo, hi);
    if (trace) trace->boxes.push_back(cur);
    const PlFixedPoint fp = pl_fixed_point_cached(f, cur);
    if (trace) trace->pl_fixed_points.push_back(fp.x);
    const Cell cell = extract_cell(fp.simplex, fp.lambda);

    for (const auto& y : cell.support) {
      const GridPoint& fy = f(y);
      if (!leq(lo, fy)) return done(MonotonicityWitness{lo, y, f(lo), fy});
      if (!leq(fy, hi)) return done(MonotonicityWitness{y, hi, fy, f(hi)});
    }

    if (auto p = to_grid(fp.x)) {
      if (f(*p) != *p) throw InternalError("integral fixed point of the extension is not fixed");
      return done(*p);
    }

    if (!leq(cell.u, f(cell.u)) || !leq(f(cell.v), cell.v)) {
      for (std::size_t b = 0; b < cell.support.size(); ++b) {
        for (std::size_t e = b + 1; e < cell.support.size(); ++e) {
          const GridPoint& yb = cell.support[b];
          const GridPoint& ye = cell.support[e];
          if (!leq(f(yb), f(ye))) return done(MonotonicityWitness{yb, ye, f(yb), f(ye)});
        }
      }
      throw InternalError("cell endpoints move the wrong way but the cell is monotone");
    }

    const std::uint64_t parent = cur.point_count();
    const std::uint64_t lower = count_points(lo, cell.v);
    const std::uint64_t upper = count_points(cell.u, hi);
    if (lower <= upper) {
      hi = cell.v;
    } else {
      lo = cell.u;
    }
    if (2 * std::min(lower, upper) > parent) throw InternalError("recursion box is more than half the parent");
  }
}

}  // namespace tarski
