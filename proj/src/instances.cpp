#include "tarski/instances.hpp"

#include "tarski/random.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>
#include <string>

namespace tarski {

namespace {

Coord isqrt(Coord n) {
  Coord r = 0;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace

void validate(const HerringboneInstance& inst) {
  const Coord n = inst.n;
  if (n < 1) throw std::invalid_argument("herringbone: N must be positive");
  if (inst.path.size() != static_cast<std::size_t>(2 * n - 1)) {
    throw std::invalid_argument("herringbone: path must have 2N-1 points");
  }
  if (inst.path.front() != make_point({1, 1}) || inst.path.back() != make_point({n, n})) {
    throw std::invalid_argument("herringbone: path must run from (1,1) to (N,N)");
  }
  for (std::size_t t = 1; t < inst.path.size(); ++t) {
    const GridPoint& a = inst.path[t - 1];
    const GridPoint& b = inst.path[t];
    if (a.size() != 2 || b.size() != 2) throw std::invalid_argument("herringbone: points must be 2-D");
    const GridPoint step = b - a;
    const bool unit = (step == make_point({1, 0})) || (step == make_point({0, 1}));
    if (!unit) {
      throw std::invalid_argument("herringbone: non-unit step " + to_string(a) + " -> " + to_string(b));
    }
  }
  if (inst.fixed_index >= inst.path.size()) throw std::invalid_argument("herringbone: fixed point off path");
}

HerringboneInstance make_herringbone(Coord n, std::vector<GridPoint> path, const GridPoint& fixed) {
  HerringboneInstance inst;
  inst.n = n;
  inst.path = std::move(path);
  auto it = std::find(inst.path.begin(), inst.path.end(), fixed);
  if (it == inst.path.end()) throw std::invalid_argument("herringbone: fixed point not on path");
  inst.fixed_index = static_cast<std::size_t>(it - inst.path.begin());
  validate(inst);
  return inst;
}

HerringboneInstance sample_herringbone() {
  return make_herringbone(5,
                          {make_point({1, 1}), make_point({1, 2}), make_point({2, 2}), make_point({2, 3}),
                           make_point({2, 4}), make_point({3, 4}), make_point({4, 4}), make_point({5, 4}),
                           make_point({5, 5})},
                          make_point({2, 2}));
}

HerringboneOracle::HerringboneOracle(HerringboneInstance inst)
    : MonotoneOracle(GridBox::cube(inst.n, 2)), inst_(std::move(inst)) {
  validate(inst_);
}

GridPoint HerringboneOracle::evaluate(const GridPoint& x) {
  const auto s = static_cast<std::size_t>(x[0] + x[1] - 2);
  const GridPoint& p = inst_.path[s];
  if (x[0] > p[0]) return make_point({x[0] - 1, x[1] + 1});
  if (x[0] < p[0]) return make_point({x[0] + 1, x[1] - 1});
  if (s < inst_.fixed_index) return inst_.path[s + 1];
  if (s > inst_.fixed_index) return inst_.path[s - 1];
  return x;
}

std::unique_ptr<HerringboneOracle> herringbone_from_path(const HerringboneInstance& inst) {
  return std::make_unique<HerringboneOracle>(inst);
}

HerringboneDistributionParams HerringboneDistributionParams::for_size(Coord n, std::uint64_t seed) {
  HerringboneDistributionParams p;
  p.n = n;
  p.seed = seed;
  p.region_width = isqrt(n);
  p.band_halfwidth = isqrt(p.region_width);
  // floor(sqrt(floor(sqrt n))) equals floor(n^(1/4)).
  p.subregion_width = 2 * p.band_halfwidth;
  return p;
}

RandomHerringbone herringbone_random_with_layout(const HerringboneDistributionParams& params) {
  const Coord n = params.n;
  if (n < 16) throw std::invalid_argument("herringbone_random: N must be at least 16");
  const Coord b = params.band_halfwidth;
  const Coord w = params.region_width;
  const Coord sw = params.subregion_width;
  if (b < 1 || w < 1 || sw < 1 || sw > w) {
    throw std::invalid_argument("herringbone_random: inconsistent widths");
  }
  Rng rng(params.seed);

  // Regions tile the sums x + y in [2, 2N]; the last one takes the remainder.
  HerringboneLayout layout;
  const Coord sums = 2 * n - 1;
  const Coord regions = std::max<Coord>(1, sums / w);
  for (Coord r = 0; r < regions; ++r) {
    const Coord begin = 2 + r * w;
    const Coord end = r + 1 == regions ? 2 * n + 1 : begin + w;
    layout.region_begin.push_back(begin);
    layout.region_end.push_back(end);
    layout.entry_offset.push_back(r == 0 ? 0 : rng.uniform(-b, b));
    const Coord subs = std::max<Coord>(1, (end - begin) / sw);
    const Coord j = rng.uniform(0, subs - 1);
    const Coord sb = begin + j * sw;
    layout.special_begin.push_back(sb);
    layout.special_end.push_back(j + 1 == subs ? end : sb + sw);
  }

  HerringboneInstance inst;
  inst.n = n;
  inst.seed = params.seed;
  GridPoint x = make_point({1, 1});
  inst.path.push_back(x);
  std::size_t region = 0;
  Coord base = 0;
  for (Coord s = 2; s < 2 * n; ++s) {
    while (s >= layout.region_end[region]) ++region;
    if (s == layout.special_begin[region]) {
      base = region + 1 < layout.entry_offset.size() ? layout.entry_offset[region + 1] : 0;
    }
    const Coord o = x[0] - x[1];
    bool east;
    if (x[0] == n) {
      east = false;
    } else if (x[1] == n) {
      east = true;
    } else if (base < b) {
      east = o <= base;
    } else {
      east = o < base;
    }
    if (east) {
      ++x[0];
    } else {
      ++x[1];
    }
    inst.path.push_back(x);
  }
  inst.fixed_index = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(inst.path.size()) - 1));
  validate(inst);
  return {std::move(inst), std::move(layout)};
}

HerringboneInstance herringbone_random(const HerringboneDistributionParams& params) {
  return herringbone_random_with_layout(params).instance;
}

HerringboneInstance herringbone_uniform_path(Coord n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("herringbone: N must be positive");
  Rng rng(seed);
  // Uniform over paths: choose which of the remaining steps go east.
  HerringboneInstance inst;
  inst.n = n;
  inst.seed = seed;
  GridPoint x = make_point({1, 1});
  inst.path.push_back(x);
  Coord east_left = n - 1;
  Coord north_left = n - 1;
  while (east_left + north_left > 0) {
    if (rng.uniform(1, east_left + north_left) <= east_left) {
      ++x[0];
      --east_left;
    } else {
      ++x[1];
      --north_left;
    }
    inst.path.push_back(x);
  }
  inst.fixed_index = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(inst.path.size()) - 1));
  return inst;
}

// ---------------------------------------------------------------------------

bool CnfFormula::satisfied_by(std::uint64_t assignment) const {
  for (const auto& clause : clauses) {
    bool sat = false;
    for (int lit : clause) {
      const int v = lit > 0 ? lit : -lit;
      const bool value = ((assignment >> (v - 1)) & 1u) != 0;
      if ((lit > 0) == value) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

CnfFormula parse_dimacs(std::string_view text) {
  CnfFormula cnf;
  std::istringstream in{std::string(text)};
  std::string line;
  bool header = false;
  int declared_clauses = 0;
  std::vector<int> current;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "c" || first[0] == '%') continue;
    if (first == "p") {
      std::string kind;
      if (!(ls >> kind >> cnf.num_vars >> declared_clauses) || kind != "cnf" || cnf.num_vars < 0) {
        throw std::invalid_argument("dimacs: bad header line '" + line + "'");
      }
      header = true;
      continue;
    }
    if (!header) throw std::invalid_argument("dimacs: clause before header");
    std::istringstream cs(line);
    long lit;
    while (cs >> lit) {
      if (lit == 0) {
        if (current.empty()) throw std::invalid_argument("dimacs: empty clause");
        cnf.clauses.push_back(current);
        current.clear();
        continue;
      }
      if (lit > cnf.num_vars || -lit > cnf.num_vars) {
        throw std::invalid_argument("dimacs: literal " + std::to_string(lit) + " out of range");
      }
      current.push_back(static_cast<int>(lit));
    }
    if (!cs.eof()) throw std::invalid_argument("dimacs: bad token in '" + line + "'");
  }
  if (!header) throw std::invalid_argument("dimacs: missing header");
  if (!current.empty()) cnf.clauses.push_back(current);
  if (static_cast<int>(cnf.clauses.size()) != declared_clauses) {
    throw std::invalid_argument("dimacs: header declares " + std::to_string(declared_clauses) +
                                " clauses, found " + std::to_string(cnf.clauses.size()));
  }
  return cnf;
}

std::unique_ptr<MonotoneOracle> sat_lfp_instance(const CnfFormula& cnf) {
  if (cnf.num_vars < 0 || cnf.num_vars > 62) throw std::invalid_argument("sat_lfp_instance: 0..62 variables");
  for (const auto& clause : cnf.clauses) {
    if (clause.empty()) throw std::invalid_argument("sat_lfp_instance: empty clause");
    for (int lit : clause) {
      if (lit == 0 || lit > cnf.num_vars || -lit > cnf.num_vars) {
        throw std::invalid_argument("sat_lfp_instance: literal out of range");
      }
    }
  }
  const Coord top = Coord{1} << cnf.num_vars;
  return std::make_unique<FunctionOracle>(GridBox::cube(top + 1, 1), [cnf, top](const GridPoint& v) {
    const Coord a = v[0] - 1;
    if (a == top || cnf.satisfied_by(static_cast<std::uint64_t>(a))) return v;
    return make_point({v[0] + 1});
  });
}

// ---------------------------------------------------------------------------

DiscretizedOracle::DiscretizedOracle(ContinuousMap<Rational> f, Coord n, int d, Coord k)
    : MonotoneOracle(GridBox(GridPoint::Constant(d, k), GridPoint::Constant(d, n * k))), f_(std::move(f)), k_(k) {}

RationalVector DiscretizedOracle::to_continuous(const GridPoint& x) const {
  RationalVector r(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) r[i] = Rational(BigInt(x[i]), BigInt(k_));
  return r;
}

GridPoint DiscretizedOracle::evaluate(const GridPoint& x) {
  const RationalVector y = f_(to_continuous(x));
  if (y.size() != x.size()) throw ShapeError("continuous map changed the dimension");
  GridPoint g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) g[i] = to_int64(round_half_up(y[i] * k_));
  return domain().clamp(g);
}

std::unique_ptr<DiscretizedOracle> discretize_continuous(ContinuousMap<Rational> f, Coord n, int d,
                                                         const Rational& eps) {
  if (eps <= 0) throw std::invalid_argument("discretize_continuous: eps must be positive");
  if (n < 1 || d < 1) throw std::invalid_argument("discretize_continuous: bad grid");
  const Coord k = to_int64(ceil_of(Rational(1) / eps));
  return std::make_unique<DiscretizedOracle>(std::move(f), n, d, k);
}

}  // namespace tarski
