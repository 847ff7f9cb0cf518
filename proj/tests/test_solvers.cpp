#include "tarski/solvers.hpp"

#include "support/generators.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace tarski {
namespace {

PointMap constant(GridPoint c) {
  return [c](const GridPoint&) { return c; };
}

PointMap identity() {
  return [](const GridPoint& x) { return x; };
}

TEST(ValueIteration, IdentityStopsAtBottom) {
  FunctionOracle f(GridBox::cube(4, 2), identity());
  auto out = value_iteration(f, f.domain());
  ASSERT_TRUE(out.is_fixed_point());
  EXPECT_EQ(out.point(), make_point({1, 1}));
  EXPECT_EQ(out.queries, 1u);
}

TEST(ValueIteration, ForcedChainUsesExactlyN) {
  FunctionOracle f(GridBox::cube(5, 1), [](const GridPoint& x) {
    return make_point({std::min<Coord>(x[0] + 1, 5)});
  });
  auto out = value_iteration(f, f.domain());
  ASSERT_TRUE(out.is_fixed_point());
  EXPECT_EQ(out.point(), make_point({5}));
  EXPECT_EQ(out.queries, 5u);
}

TEST(ValueIteration, BreakInAscentIsWitness) {
  // 1 -> 3 -> 2: ascent breaks at 3, so (1, 3) is a violated pair.
  TableOracle f(GridBox::cube(3, 1), {make_point({3}), make_point({2}), make_point({2})});
  auto out = value_iteration(f, f.domain());
  ASSERT_FALSE(out.is_fixed_point());
  EXPECT_EQ(out.witness().x, make_point({1}));
  EXPECT_EQ(out.witness().y, make_point({3}));
  EXPECT_TRUE(out.witness().valid());
}

TEST(BinarySearch, ConstantAndIdentity) {
  FunctionOracle c(GridBox::cube(8, 1), constant(make_point({3})));
  auto out = binary_search_1d(c, c.domain());
  ASSERT_TRUE(out.is_fixed_point());
  EXPECT_EQ(out.point(), make_point({3}));
  EXPECT_LE(out.queries, 4u);

  FunctionOracle id(GridBox::cube(9, 1), identity());
  auto out2 = binary_search_1d(id, id.domain());
  EXPECT_EQ(out2.point(), make_point({5}));
  EXPECT_EQ(out2.queries, 1u);
}

TEST(BinarySearch, LogBoundOnAllMonotoneMapsOfSmallChains) {
  for (Coord n = 1; n <= 7; ++n) {
    const GridBox box = GridBox::cube(n, 1);
    const auto bound = static_cast<std::uint64_t>(std::floor(std::log2(static_cast<double>(n)))) + 1;
    for (const auto& t : testing::all_monotone_scalars(box, n)) {
      auto f = testing::oracle_from_scalars(box, {t});
      auto out = binary_search_1d(*f, box);
      ASSERT_TRUE(out.is_fixed_point());
      EXPECT_EQ(t[static_cast<std::size_t>(out.point()[0] - 1)], out.point()[0]);
      EXPECT_LE(out.queries, bound);
    }
  }
}

TEST(Dqy, OneDimensionalConstant) {
  FunctionOracle c(GridBox::cube(100, 1), constant(make_point({37})));
  auto out = dqy_solve(c, c.domain());
  EXPECT_EQ(out.point(), make_point({37}));
}

TEST(Dqy, ParanoidFindsWitnessOnSwap) {
  TableOracle swap(GridBox::cube(2, 1), {make_point({2}), make_point({1})});
  auto out = dqy_solve(swap, swap.domain(), {true});
  ASSERT_FALSE(out.is_fixed_point());
  EXPECT_TRUE(out.witness().valid());
}

TEST(Dqy, NonMonotoneWithoutParanoiaIsWitnessOrMalformed) {
  Rng rng(5);
  for (int t = 0; t < 300; ++t) {
    std::vector<GridPoint> table;
    const GridBox box = GridBox::cube(3, 2);
    for (std::uint64_t k = 0; k < box.point_count(); ++k) {
      table.push_back(make_point({rng.uniform(1, 3), rng.uniform(1, 3)}));
    }
    TableOracle f(box, table);
    try {
      auto out = dqy_solve(f, box);
      if (out.is_fixed_point()) {
        EXPECT_EQ(f.query(out.point()), out.point());
      } else {
        EXPECT_TRUE(out.witness().valid());
      }
    } catch (const MalformedInputError&) {
    }
    auto p = dqy_solve(f, box, {true});
    if (p.is_fixed_point()) {
      EXPECT_EQ(f.query(p.point()), p.point());
    } else {
      EXPECT_TRUE(p.witness().valid());
    }
  }
}

TEST(Pls, SwapGivesWitness) {
  TableOracle swap(GridBox::cube(2, 1), {make_point({2}), make_point({1})});
  auto out = local_search_pls(swap, swap.domain());
  ASSERT_FALSE(out.is_fixed_point());
  EXPECT_EQ(out.witness().x, make_point({1}));
  EXPECT_EQ(out.witness().y, make_point({2}));
  EXPECT_EQ(out.witness().fx, make_point({2}));
  EXPECT_EQ(out.witness().fy, make_point({1}));
}

TEST(Pls, FixedBottom) {
  FunctionOracle id(GridBox::cube(6, 3), identity());
  auto out = local_search_pls(id, id.domain());
  EXPECT_EQ(out.point(), make_point({1, 1, 1}));
  EXPECT_EQ(out.queries, 1u);
}

TEST(Pls, PayoffStrictlyIncreases) {
  Rng rng(17);
  for (int t = 0; t < 200; ++t) {
    auto f = testing::random_monotone_table(4, 2, rng);
    f->set_recording(true);
    auto out = local_search_pls(*f, f->domain());
    ASSERT_TRUE(out.is_fixed_point());
    Coord last = -1;
    for (const auto& r : f->transcript()) {
      const Coord s = r.query.sum();
      EXPECT_GE(s, last);
      last = s;
    }
  }
}

TEST(BruteForce, IdentityAndEmpty) {
  FunctionOracle id(GridBox::cube(3, 2), identity());
  auto fs = brute_force_fix(id, id.domain());
  EXPECT_EQ(fs.points.size(), 9u);
  EXPECT_EQ(*fs.lfp, make_point({1, 1}));
  EXPECT_EQ(*fs.gfp, make_point({3, 3}));

  TableOracle swap(GridBox::cube(2, 1), {make_point({2}), make_point({1})});
  EXPECT_TRUE(brute_force_fix(swap, swap.domain()).empty());
}

TEST(Agreement, RandomMonotoneTables) {
  Rng rng(99);
  for (int t = 0; t < 500; ++t) {
    const int d = t % 2 == 0 ? 2 : 3;
    const Coord n = d == 2 ? 4 : 3;
    auto f = testing::random_monotone_table(n, d, rng);
    ASSERT_FALSE(check_monotone_exhaustive(*f, f->domain()).has_value());
    const FixSet fs = brute_force_fix(*f, f->domain());
    ASSERT_TRUE(fs.lfp && fs.gfp);

    auto vi = value_iteration(*f, f->domain(), IterationDirection::FromBottom);
    EXPECT_EQ(vi.point(), *fs.lfp);
    EXPECT_LE(vi.queries, static_cast<std::uint64_t>(d * (n - 1) + 1));
    auto vt = value_iteration(*f, f->domain(), IterationDirection::FromTop);
    EXPECT_EQ(vt.point(), *fs.gfp);
    EXPECT_LE(vt.queries, static_cast<std::uint64_t>(d * (n - 1) + 1));
    EXPECT_TRUE(fs.contains(dqy_solve(*f, f->domain()).point()));
    EXPECT_TRUE(fs.contains(dqy_solve(*f, f->domain(), {true}).point()));
    EXPECT_TRUE(fs.contains(local_search_pls(*f, f->domain()).point()));
  }
}

TEST(Dqy, QueryBoundOnImplicitFamilies) {
  Rng rng(2024);
  for (int d = 1; d <= 3; ++d) {
    for (int e : {4, 8, 12}) {
      const Coord n = Coord{1} << e;
      const double bound = std::pow(e + 2, d);
      for (int t = 0; t < 10; ++t) {
        FunctionOracle f(GridBox::cube(n, d), t % 2 ? testing::random_affine_clamp(n, d, rng)
                                                    : testing::random_step_join(n, d, rng));
        auto out = dqy_solve(f, f.domain());
        ASSERT_TRUE(out.is_fixed_point());
        EXPECT_EQ(f.query(out.point()), out.point());
        EXPECT_LE(static_cast<double>(out.queries), bound);
      }
    }
  }
}

TEST(Solvers, SubBoxMustBeInsideDomain) {
  FunctionOracle id(GridBox::cube(3, 2), identity());
  EXPECT_THROW(dqy_solve(id, GridBox::cube(4, 2)), DomainError);
  EXPECT_THROW(dqy_solve(id, GridBox::cube(3, 1)), ShapeError);
}

TEST(Solvers, SubBoxNotSelfMappedIsMalformed) {
  FunctionOracle c(GridBox::cube(5, 1), constant(make_point({5})));
  const GridBox sub(make_point({1}), make_point({3}));
  EXPECT_THROW(local_search_pls(c, sub), MalformedInputError);
  EXPECT_THROW(value_iteration(c, sub), MalformedInputError);
}

}  // namespace
}  // namespace tarski
