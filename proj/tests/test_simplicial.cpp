#include "tarski/simplicial.hpp"

#include "tarski/instances.hpp"
#include "tarski/solvers.hpp"

#include "support/generators.hpp"

#include <gtest/gtest.h>

#include <numeric>

namespace tarski {
namespace {

Rational q(std::int64_t p, std::int64_t d = 1) { return make_rational(p, d); }

RationalVector rv(std::initializer_list<Rational> xs) {
  RationalVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (const auto& x : xs) v[i++] = x;
  return v;
}

TEST(Simplex, VerticesFormAChain) {
  Simplex s{make_point({2, 1, 3}), {2, 0, 1}};
  auto v = s.vertices();
  ASSERT_EQ(v.size(), 4u);
  EXPECT_EQ(v[1], make_point({2, 1, 4}));
  EXPECT_EQ(v[3], make_point({3, 2, 4}));
  for (std::size_t j = 1; j < v.size(); ++j) EXPECT_TRUE(leq(v[j - 1], v[j]));
}

TEST(Locate, WorkedExample) {
  auto loc = locate_simplex(rv({q(3, 2), q(5, 4)}), GridBox::cube(4, 2));
  EXPECT_EQ(loc.simplex.base, make_point({1, 1}));
  EXPECT_EQ(loc.simplex.perm, (std::vector<int>{0, 1}));
  EXPECT_EQ(loc.lambda, rv({q(1, 2), q(1, 4), q(1, 4)}));
}

TEST(Locate, IntegerPointsAndUpperFace) {
  const GridBox box = GridBox::cube(4, 2);
  auto loc = locate_simplex(rv({q(2), q(3)}), box);
  EXPECT_EQ(loc.simplex.base, make_point({2, 3}));
  EXPECT_EQ(loc.lambda, rv({q(1), q(0), q(0)}));
  // On the top face the base is pulled down so the cube stays in the box.
  loc = locate_simplex(rv({q(4), q(4)}), box);
  EXPECT_EQ(loc.simplex.base, make_point({3, 3}));
  EXPECT_EQ(loc.lambda, rv({q(0), q(0), q(1)}));
  EXPECT_THROW(locate_simplex(rv({q(9, 2), q(1)}), box), DomainError);
  EXPECT_THROW(locate_simplex(rv({q(1, 2), q(1)}), box), DomainError);
}

TEST(Locate, RecoversThePoint) {
  Rng rng(11);
  const GridBox box = GridBox::cube(5, 3);
  for (int t = 0; t < 200; ++t) {
    RationalVector x(3);
    for (int i = 0; i < 3; ++i) x[i] = make_rational(rng.uniform(4, 20), 4);
    auto loc = locate_simplex(x, box);
    auto verts = loc.simplex.vertices();
    RationalVector back = RationalVector::Zero(3);
    Rational sum = 0;
    for (std::size_t j = 0; j < verts.size(); ++j) {
      EXPECT_GE(loc.lambda[static_cast<Eigen::Index>(j)], 0);
      back += to_rational(verts[j]) * loc.lambda[static_cast<Eigen::Index>(j)];
      sum += loc.lambda[static_cast<Eigen::Index>(j)];
      EXPECT_TRUE(box.contains(verts[j]));
    }
    EXPECT_EQ(sum, 1);
    EXPECT_EQ(back, x);
  }
}

TEST(PlEval, SampleValue) {
  auto f = herringbone_from_path(sample_herringbone());
  EXPECT_EQ(pl_eval(*f, rv({q(3, 2), q(5, 4)}), f->domain(), true), rv({q(5, 4), q(2)}));
}

TEST(PlEval, AgreesAtIntegersAndWithConstants) {
  Rng rng(3);
  auto f = testing::random_monotone_table(4, 2, rng);
  f->domain().for_each([&](const GridPoint& x) {
    EXPECT_EQ(pl_eval(*f, to_rational(x), f->domain(), true), to_rational(f->query(x)));
  });
  FunctionOracle c(GridBox::cube(4, 2), [](const GridPoint&) { return make_point({3, 2}); });
  EXPECT_EQ(pl_eval(c, rv({q(7, 3), q(5, 2)}), c.domain(), false), rv({q(3), q(2)}));
}

TEST(PlEval, ClampedExtensionMapsIntoSubBox) {
  Rng rng(5);
  auto f = testing::random_monotone_table(5, 2, rng);
  const GridBox sub(make_point({2, 2}), make_point({4, 3}));
  for (int t = 0; t < 200; ++t) {
    auto x = rv({make_rational(rng.uniform(6, 12), 3), make_rational(rng.uniform(4, 6), 2)});
    auto y = pl_eval(*f, x, sub, true);
    for (int i = 0; i < 2; ++i) {
      EXPECT_GE(y[i], sub.low()[i]);
      EXPECT_LE(y[i], sub.high()[i]);
    }
  }
}

// All simplices of the box's subdivision that contain x.
std::vector<Simplex> containing(const RationalVector& x, const GridBox& box) {
  std::vector<Simplex> out;
  GridPoint hi = box.high();
  for (int i = 0; i < box.dims(); ++i) hi[i] -= 1;
  GridBox(box.low(), hi).for_each([&](const GridPoint& base) {
    std::vector<int> perm(static_cast<std::size_t>(box.dims()));
    std::iota(perm.begin(), perm.end(), 0);
    do {
      Simplex s{base, perm};
      if (barycentric_in(s, x)) out.push_back(s);
    } while (std::next_permutation(perm.begin(), perm.end()));
  });
  return out;
}

TEST(PlEval, DiagonalPointSameInBothSimplices) {
  auto f = herringbone_from_path(sample_herringbone());
  const auto x = rv({q(3, 2), q(3, 2)});
  auto cells = containing(x, f->domain());
  ASSERT_EQ(cells.size(), 2u);
  EXPECT_EQ(pl_eval_in(*f, cells[0], x, f->domain(), true), pl_eval_in(*f, cells[1], x, f->domain(), true));
}

TEST(PlEval, FaceConsistencyOnSampledBoundaryPoints) {
  Rng rng(17);
  int checked = 0;
  for (int t = 0; t < 1000; ++t) {
    const int d = rng.coin() ? 2 : 3;
    const Coord n = d == 2 ? 4 : 3;
    auto f = testing::random_monotone_table(n, d, rng);
    // Boundary points: some coordinates integral, some sharing a fractional part.
    RationalVector x(d);
    const Coord den = rng.uniform(2, 5);
    const Coord shared = rng.uniform(1, den - 1);
    for (int i = 0; i < d; ++i) {
      const Coord whole = rng.uniform(1, n - 1);
      switch (rng.uniform(0, 2)) {
        case 0: x[i] = Rational(rng.uniform(1, n)); break;
        case 1: x[i] = make_rational(whole * den + shared, den); break;
        default: x[i] = make_rational(whole * den + rng.uniform(0, den - 1), den); break;
      }
    }
    auto cells = containing(x, f->domain());
    ASSERT_FALSE(cells.empty());
    const auto ref = pl_eval_in(*f, cells[0], x, f->domain(), true);
    for (std::size_t k = 1; k < cells.size(); ++k) {
      EXPECT_EQ(pl_eval_in(*f, cells[k], x, f->domain(), true), ref);
    }
    checked += cells.size() > 1;
  }
  EXPECT_GT(checked, 500);
}

TEST(PlFixedPoint, Examples) {
  auto fig = herringbone_from_path(sample_herringbone());
  EXPECT_EQ(pl_fixed_point_exact(*fig, fig->domain()).x, rv({q(2), q(2)}));

  TableOracle swap(GridBox::cube(2, 1), {make_point({2}), make_point({1})});
  EXPECT_EQ(pl_fixed_point_exact(swap, swap.domain()).x, rv({q(3, 2)}));

  FunctionOracle id(GridBox::cube(3, 2), [](const GridPoint& x) { return x; });
  EXPECT_EQ(pl_fixed_point_exact(id, id.domain()).x, rv({q(1), q(1)}));
}

TEST(PlFixedPoint, SolutionIsFixedByExtension) {
  Rng rng(23);
  for (int t = 0; t < 200; ++t) {
    auto f = testing::random_monotone_table(4, 2, rng);
    const GridBox sub(make_point({1, 2}), make_point({3, 4}));
    auto fp = pl_fixed_point_exact(*f, sub);
    EXPECT_EQ(pl_eval_in(*f, fp.simplex, fp.x, sub, true), fp.x);
  }
}

TEST(PlFixedPoint, EachPointQueriedOnce) {
  Rng rng(29);
  auto f = testing::random_monotone_table(4, 3, rng);
  f->reset_queries();
  pl_fixed_point_exact(*f, f->domain());
  EXPECT_LE(f->queries(), f->domain().point_count());
}

TEST(ExtractCell, Examples) {
  Simplex s{make_point({1, 1}), {0, 1}};
  auto c = extract_cell(s, rv({q(1, 2), q(1, 4), q(1, 4)}));
  EXPECT_EQ(c.support.size(), 3u);
  EXPECT_EQ(c.u, make_point({2, 2}));
  EXPECT_EQ(c.v, make_point({1, 1}));

  c = extract_cell(s, rv({q(0), q(1, 2), q(1, 2)}));
  ASSERT_EQ(c.support.size(), 2u);
  EXPECT_EQ(c.v, make_point({2, 1}));
  EXPECT_EQ(c.u, make_point({2, 2}));

  c = extract_cell(s, rv({q(0), q(1), q(0)}));
  EXPECT_EQ(c.u, c.v);
  EXPECT_EQ(c.u, make_point({2, 1}));
}

TEST(PpadRoute, Examples) {
  auto fig = herringbone_from_path(sample_herringbone());
  auto out = ppad_route_solve(*fig, fig->domain());
  ASSERT_TRUE(out.is_fixed_point());
  EXPECT_EQ(out.point(), make_point({2, 2}));

  FunctionOracle id(GridBox::cube(3, 2), [](const GridPoint& x) { return x; });
  PpadTrace trace;
  out = ppad_route_solve(id, id.domain(), &trace);
  EXPECT_EQ(out.point(), make_point({1, 1}));
  EXPECT_EQ(trace.boxes.size(), 1u);
}

TEST(PpadRoute, SwapIsWitness) {
  TableOracle swap(GridBox::cube(2, 1), {make_point({2}), make_point({1})});
  auto out = ppad_route_solve(swap, swap.domain());
  ASSERT_FALSE(out.is_fixed_point());
  EXPECT_TRUE(out.witness().valid());
}

void check_against_brute_force(MonotoneOracle& f) {
  const FixSet fix = brute_force_fix(f, f.domain());
  PpadTrace trace;
  auto out = ppad_route_solve(f, f.domain(), &trace);
  ASSERT_TRUE(out.is_fixed_point());
  EXPECT_TRUE(fix.contains(out.point()));
  for (std::size_t k = 1; k < trace.boxes.size(); ++k) {
    EXPECT_TRUE(trace.boxes[k - 1].contains(trace.boxes[k]));
    EXPECT_LE(2 * trace.boxes[k].point_count(), trace.boxes[k - 1].point_count());
  }
}

TEST(PpadRoute, AllMonotoneMapsOnThreeByThree) {
  const GridBox box = GridBox::cube(3, 2);
  const auto scalars = testing::all_monotone_scalars(box, 3);
  for (const auto& a : scalars) {
    for (const auto& b : scalars) {
      auto f = testing::oracle_from_scalars(box, {a, b});
      check_against_brute_force(*f);
    }
  }
}

TEST(PpadRoute, RandomMonotoneMaps) {
  Rng rng(31);
  for (int t = 0; t < 500; ++t) {
    auto f = testing::random_monotone_table(4, 2, rng);
    check_against_brute_force(*f);
    auto g = testing::random_monotone_table(3, 3, rng);
    check_against_brute_force(*g);
  }
}

TEST(PpadRoute, NonMonotoneMapsGiveFixedPointOrValidWitness) {
  Rng rng(37);
  const GridBox box = GridBox::cube(4, 2);
  int witnesses = 0;
  for (int t = 0; t < 500; ++t) {
    std::vector<GridPoint> table;
    box.for_each([&](const GridPoint&) { table.push_back(make_point({rng.uniform(1, 4), rng.uniform(1, 4)})); });
    TableOracle f(box, table);
    auto out = ppad_route_solve(f, box);
    if (out.is_fixed_point()) {
      EXPECT_EQ(f.query(out.point()), out.point());
    } else {
      EXPECT_TRUE(out.witness().valid());
      EXPECT_EQ(f.query(out.witness().x), out.witness().fx);
      EXPECT_EQ(f.query(out.witness().y), out.witness().fy);
      ++witnesses;
    }
  }
  EXPECT_GT(witnesses, 0);
}

}  // namespace
}  // namespace tarski
