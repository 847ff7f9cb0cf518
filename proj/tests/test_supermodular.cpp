#include "tarski/supermodular.hpp"

#include "tarski/instances.hpp"
#include "tarski/solvers.hpp"

#include "support/generators.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace tarski {
namespace {

Rational q(std::int64_t p, std::int64_t d = 1) { return make_rational(p, d); }

// Two players on {0,1,2}, u_i = s_i * s_j - s_i^2.
SupermodularGame effort_game() {
  const std::vector<Rational> cost{q(0), q(1), q(4)};
  return diamond_search({q(1), q(1)}, {cost, cost});
}

std::vector<GridPoint> all_equilibria(const SupermodularGame& g) {
  std::vector<GridPoint> out;
  g.profile_box().for_each([&](const GridPoint& p) {
    if (is_pure_equilibrium(g, p)) out.push_back(p);
  });
  return out;
}

GridPoint concat(const GridPoint& a, const GridPoint& b) {
  GridPoint p(a.size() + b.size());
  p << a, b;
  return p;
}

TEST(BestResponse, UniquePeak) {
  SupermodularGame g({GridBox::cube(9, 1), GridBox::cube(9, 1)},
                     {[](const GridPoint& p) { return -Rational((p[0] - 4) * (p[0] - 4)); },
                      [](const GridPoint&) { return Rational(0); }});
  for (Coord other = 1; other <= 9; ++other) {
    EXPECT_EQ(best_response(g, 0, make_point({1, other}), BestResponseKind::Sup), make_point({4}));
  }
}

TEST(BestResponse, EffortExample) {
  auto g = effort_game();
  EXPECT_EQ(best_response(g, 0, make_point({0, 2}), BestResponseKind::Sup), make_point({1}));
  // Against 1 both 0 and 1 are optimal.
  EXPECT_EQ(best_response(g, 0, make_point({0, 1}), BestResponseKind::Sup), make_point({1}));
  EXPECT_EQ(best_response(g, 0, make_point({0, 1}), BestResponseKind::Inf), make_point({0}));
}

TEST(BestResponse, FlatUtilityGivesCorners) {
  SupermodularGame g({GridBox::cube(3, 2)}, {[](const GridPoint&) { return Rational(0); }});
  EXPECT_EQ(best_response(g, 0, make_point({1, 1}), BestResponseKind::Sup), make_point({3, 3}));
  EXPECT_EQ(best_response(g, 0, make_point({1, 1}), BestResponseKind::Inf), make_point({1, 1}));
}

TEST(BestResponse, JoinOutsideArgmaxIsReported) {
  // Optimal at (1,2) and (2,1) only, so the join (2,2) is not optimal.
  SupermodularGame g({GridBox::cube(2, 2)}, {[](const GridPoint& p) { return Rational(p[0] + p[1] == 3 ? 1 : 0); }});
  try {
    best_response(g, 0, make_point({1, 1}), BestResponseKind::Sup);
    FAIL() << "expected a violation";
  } catch (const GameError& e) {
    ASSERT_TRUE(e.violation);
    EXPECT_TRUE(std::holds_alternative<violation::SupNotInArgmax>(*e.violation));
    EXPECT_TRUE(reproduces(g, *e.violation));
  }
}

TEST(BetaOracle, ReductionAndExamples) {
  Rng rng(2);
  auto f = testing::random_monotone_table(3, 2, rng);
  auto g = game_from_monotone(*f);
  auto beta = beta_oracle(g, BestResponseKind::Sup);
  g.profile_box().for_each([&](const GridPoint& p) {
    const GridPoint x = p.head(2), y = p.tail(2);
    EXPECT_EQ(beta->query(p), concat(y, f->query(x)));
  });

  auto e = effort_game();
  EXPECT_EQ(beta_oracle(e, BestResponseKind::Sup)->query(make_point({2, 2})), make_point({1, 1}));

  SupermodularGame solo({GridBox::cube(4, 1)}, {[](const GridPoint& p) { return -Rational((p[0] - 3) * (p[0] - 3)); }});
  auto b = beta_oracle(solo, BestResponseKind::Sup);
  for (Coord x = 1; x <= 4; ++x) EXPECT_EQ(b->query(make_point({x})), make_point({3}));
}

TEST(BetaOracle, MonotoneOnSmallGames) {
  Rng rng(4);
  // Reduction games hold references to their maps.
  std::vector<std::unique_ptr<TableOracle>> maps;
  std::vector<SupermodularGame> games{effort_game()};
  for (int t = 0; t < 20; ++t) {
    std::vector<std::vector<Rational>> cost(2);
    for (auto& c : cost) {
      for (int s = 0; s <= 8; ++s) c.push_back(Rational(rng.uniform(-5, 5)));
    }
    games.push_back(diamond_search({make_rational(rng.uniform(1, 3), rng.uniform(1, 3)), q(1)}, cost));
  }
  for (int t = 0; t < 20; ++t) {
    maps.push_back(testing::random_monotone_table(3, 1, rng));
    games.push_back(game_from_monotone(*maps.back()));
  }
  for (const auto& g : games) {
    ASSERT_LE(g.profile_box().point_count(), 81u);
    EXPECT_FALSE(check_monotone_exhaustive(*beta_oracle(g, BestResponseKind::Sup), g.profile_box()));
    EXPECT_FALSE(check_monotone_exhaustive(*beta_oracle(g, BestResponseKind::Inf), g.profile_box()));
  }
}

TEST(Equilibrium, EffortExample) {
  auto g = effort_game();
  EXPECT_EQ(solve_equilibrium(g, BestResponseKind::Inf, false).profile, make_point({0, 0}));
  EXPECT_EQ(solve_equilibrium(g, BestResponseKind::Inf, true).profile, make_point({0, 0}));
  auto eq = all_equilibria(g);
  EXPECT_EQ(eq, (std::vector<GridPoint>{make_point({0, 0}), make_point({1, 1})}));
  for (bool shortcut : {false, true}) {
    auto r = solve_equilibrium(g, BestResponseKind::Sup, shortcut);
    EXPECT_TRUE(is_pure_equilibrium(g, r.profile));
  }
}

TEST(Equilibrium, SampleReduction) {
  auto f = herringbone_from_path(sample_herringbone());
  auto g = game_from_monotone(*f);
  for (bool shortcut : {false, true}) {
    EXPECT_EQ(solve_equilibrium(g, BestResponseKind::Sup, shortcut).profile, make_point({2, 2, 2, 2}));
  }
  EXPECT_EQ(all_equilibria(g), std::vector<GridPoint>{make_point({2, 2, 2, 2})});
}

TEST(Equilibrium, SinglePlayerIsArgmaxJoin) {
  SupermodularGame g({GridBox::cube(3, 2)},
                     {[](const GridPoint& p) { return Rational(std::min<Coord>(p[0], 2) + std::min<Coord>(p[1], 1)); }});
  EXPECT_EQ(solve_equilibrium(g, BestResponseKind::Sup, true).profile, make_point({3, 3}));
  EXPECT_EQ(solve_equilibrium(g, BestResponseKind::Inf, false).profile, make_point({2, 1}));
}

TEST(Equilibrium, ShortcutUsesLogarithmicCalls) {
  Rng rng(8);
  for (int e : {4, 6, 8, 10, 12}) {
    const Coord n = Coord{1} << e;
    const std::size_t bound = static_cast<std::size_t>(e) + 2;
    FunctionOracle f(GridBox::cube(n, 1), testing::random_affine_clamp(n, 1, rng));
    auto g = game_from_monotone(f);
    auto r = solve_equilibrium(g, BestResponseKind::Sup, true);
    EXPECT_LE(r.oracle_calls, bound) << "N=" << n;
    EXPECT_EQ(r.substitutions, r.oracle_calls);
    EXPECT_EQ(f.query(r.profile.head(1)), r.profile.head(1));
  }
}

TEST(Equilibrium, ShortcutSkipsLargestPlayer) {
  // Player 1 has two coordinates and is skipped; only player 0's single
  // coordinate is searched.
  Rng rng(9);
  auto f = testing::random_monotone_table(8, 1, rng);
  SupermodularGame g({GridBox::cube(8, 1), GridBox::cube(8, 2)},
                     {[](const GridPoint& p) { return -Rational((p[0] - p[1]) * (p[0] - p[1])); },
                      [&](const GridPoint& p) {
                        const Coord t = f->query(make_point({p[0]}))[0];
                        return -Rational((t - p[1]) * (t - p[1]) + (t - p[2]) * (t - p[2]));
                      }});
  auto r = solve_equilibrium(g, BestResponseKind::Sup, true);
  EXPECT_TRUE(is_pure_equilibrium(g, r.profile));
  EXPECT_LE(r.oracle_calls, 5u);
}

TEST(Properties, EffortGameHasNoViolation) {
  Rng rng(10);
  for (int t = 0; t < 10; ++t) {
    std::vector<std::vector<Rational>> cost(3);
    for (auto& c : cost) {
      for (int s = 0; s <= 3; ++s) c.push_back(make_rational(rng.uniform(-9, 9), rng.uniform(1, 4)));
    }
    auto g = diamond_search({q(1), q(2), q(1, 3)}, cost);
    EXPECT_FALSE(check_c2_c3(g, 1u << 20));
  }
}

TEST(Properties, ReductionHasNoViolationAndModularOwnTerms) {
  Rng rng(12);
  for (int t = 0; t < 10; ++t) {
    auto f = testing::random_monotone_table(3, 2, rng);
    auto g = game_from_monotone(*f);
    EXPECT_FALSE(check_c2_c3(g, 1u << 20));
    // Own-strategy supermodularity holds with equality.
    g.profile_box().for_each([&](const GridPoint& x) {
      for (int i = 0; i < 2; ++i) {
        g.strategy_box(i).for_each([&](const GridPoint& s) {
          const GridPoint y = g.with_strategy(x, i, s);
          EXPECT_EQ(g.utility(i, x) + g.utility(i, y), g.utility(i, join(x, y)) + g.utility(i, meet(x, y)));
        });
      }
    });
  }
}

TEST(Properties, NegativeProductIsNotSupermodular) {
  SupermodularGame g({GridBox::cube(2, 2)}, {[](const GridPoint& p) { return -Rational(p[0] * p[1]); }});
  auto v = check_c2_c3(g, 1000);
  ASSERT_TRUE(v);
  ASSERT_TRUE(std::holds_alternative<violation::Supermodularity>(*v));
  const auto& s = std::get<violation::Supermodularity>(*v);
  EXPECT_EQ(s.x, make_point({1, 2}));
  EXPECT_EQ(s.y, make_point({2, 1}));
  EXPECT_TRUE(reproduces(g, *v));
}

TEST(Properties, DecreasingDifferencesFoundBySampling) {
  const Coord n = 40;
  SupermodularGame g({GridBox::cube(n, 1), GridBox::cube(n, 1)},
                     {[](const GridPoint& p) { return -Rational(p[0] * p[1]); },
                      [](const GridPoint&) { return Rational(0); }});
  auto v = check_c2_c3(g, 500);
  ASSERT_TRUE(v);
  EXPECT_TRUE(std::holds_alternative<violation::IncreasingDifferences>(*v));
  EXPECT_TRUE(reproduces(g, *v));
}

void expect_bijection(MonotoneOracle& f) {
  auto g = game_from_monotone(f);
  std::vector<GridPoint> expected;
  for (const auto& x : brute_force_fix(f, f.domain()).points) expected.push_back(concat(x, x));
  EXPECT_EQ(all_equilibria(g), expected);
}

TEST(Reduction, BijectionOnAllMapsOfTwoByTwo) {
  const GridBox box = GridBox::cube(2, 2);
  const auto scalars = testing::all_monotone_scalars(box, 2);
  for (const auto& a : scalars) {
    for (const auto& b : scalars) expect_bijection(*testing::oracle_from_scalars(box, {a, b}));
  }
}

TEST(Reduction, BijectionOnSampledMapsOfThreeByThree) {
  Rng rng(14);
  for (int t = 0; t < 100; ++t) expect_bijection(*testing::random_monotone_table(3, 2, rng));
}

TEST(Reduction, IdentityOnTwoPoints) {
  FunctionOracle id(GridBox::cube(2, 1), [](const GridPoint& x) { return x; });
  auto g = game_from_monotone(id);
  EXPECT_EQ(all_equilibria(g), (std::vector<GridPoint>{make_point({1, 1}), make_point({2, 2})}));
}

void expect_multi_bijection(MonotoneOracle& f, const std::vector<int>& dims) {
  auto red = game_from_monotone_multi(f, dims);
  EXPECT_FALSE(check_c2_c3(red.game, 1u << 16));
  std::vector<GridPoint> got;
  for (const auto& p : all_equilibria(red.game)) {
    EXPECT_EQ(red.profile_of(red.fixed_point_of(p)), p);
    got.push_back(red.fixed_point_of(p));
  }
  std::sort(got.begin(), got.end(), [](const GridPoint& a, const GridPoint& b) { return to_vector(a) < to_vector(b); });
  EXPECT_EQ(got, brute_force_fix(f, f.domain()).points);
}

TEST(MultiReduction, TwoOneDimensionalPlayers) {
  FunctionOracle id(GridBox::cube(2, 1), [](const GridPoint& x) { return x; });
  expect_multi_bijection(id, {1, 1});
  TableOracle swap_free(GridBox::cube(2, 1), {make_point({2}), make_point({2})});
  expect_multi_bijection(swap_free, {1, 1});
}

TEST(MultiReduction, ThreePlayersIdentity) {
  FunctionOracle id(GridBox::cube(2, 2), [](const GridPoint& x) { return x; });
  auto red = game_from_monotone_multi(id, {1, 1, 2});
  EXPECT_EQ(red.game.profile_box().point_count(), 16u);
  for (const auto& p : all_equilibria(red.game)) {
    for (int c = 0; c < 4; ++c) EXPECT_EQ(p[red.order[static_cast<std::size_t>(c)]], p[red.order[static_cast<std::size_t>(c % 2)]]);
  }
  expect_multi_bijection(id, {1, 1, 2});
}

TEST(MultiReduction, RandomMapsAndShapes) {
  Rng rng(16);
  const std::vector<std::vector<int>> shapes{{1, 1, 2}, {2, 1, 1}, {2, 2}, {1, 3, 3}, {3, 1, 3}, {1, 1, 1, 1}};
  for (int t = 0; t < 8; ++t) {
    auto f = testing::random_monotone_table(2, 2, rng);
    for (const auto& dims : shapes) expect_multi_bijection(*f, dims);
  }
}

TEST(MultiReduction, RejectsTooFewCoordinates) {
  FunctionOracle id(GridBox::cube(2, 2), [](const GridPoint& x) { return x; });
  EXPECT_THROW(game_from_monotone_multi(id, {1, 1}), std::invalid_argument);
  EXPECT_THROW(game_from_monotone_multi(id, {1, 4}), std::invalid_argument);
}

}  // namespace
}  // namespace tarski
