#include "tarski/supermodular.hpp"

#include "tarski/random.hpp"
#include "tarski/solvers.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace tarski {

SupermodularGame::SupermodularGame(std::vector<GridBox> strategy_boxes, std::vector<Utility> utilities)
    : boxes_(std::move(strategy_boxes)), utilities_(std::move(utilities)) {
  if (boxes_.empty()) throw std::invalid_argument("a game needs at least one player");
  if (boxes_.size() != utilities_.size()) throw std::invalid_argument("one utility per player required");
  int total = 0;
  for (const auto& b : boxes_) {
    if (b.dims() == 0) throw std::invalid_argument("strategy boxes must have dimension >= 1");
    offsets_.push_back(total);
    total += b.dims();
  }
  GridPoint lo(total), hi(total);
  for (std::size_t i = 0; i < boxes_.size(); ++i) {
    lo.segment(offsets_[i], boxes_[i].dims()) = boxes_[i].low();
    hi.segment(offsets_[i], boxes_[i].dims()) = boxes_[i].high();
  }
  profile_box_ = GridBox(lo, hi);
}

Rational SupermodularGame::utility(int i, const GridPoint& profile) const {
  if (!profile_box_.contains(profile)) throw DomainError("profile " + to_string(profile) + " outside the game");
  return utilities_.at(static_cast<std::size_t>(i))(profile);
}

GridPoint SupermodularGame::strategy(const GridPoint& profile, int i) const {
  return profile.segment(offset(i), player_dims(i));
}

GridPoint SupermodularGame::with_strategy(GridPoint profile, int i, const GridPoint& s) const {
  profile.segment(offset(i), player_dims(i)) = s;
  return profile;
}

std::vector<GridPoint> argmax_set(const SupermodularGame& game, int i, const GridPoint& profile) {
  std::vector<GridPoint> best;
  Rational best_value;
  game.strategy_box(i).for_each([&](const GridPoint& s) {
    const Rational v = game.utility(i, game.with_strategy(profile, i, s));
    if (best.empty() || v > best_value) {
      best.clear();
      best_value = v;
    }
    if (v == best_value) best.push_back(s);
  });
  return best;
}

GridPoint best_response(const SupermodularGame& game, int i, const GridPoint& profile, BestResponseKind kind) {
  const auto best = argmax_set(game, i, profile);
  GridPoint r = best.front();
  for (const auto& s : best) r = kind == BestResponseKind::Sup ? join(r, s) : meet(r, s);
  if (std::find(best.begin(), best.end(), r) == best.end()) {
    violation::SupNotInArgmax v{i, game.with_strategy(profile, i, r)};
    throw GameError(describe(v), v);
  }
  return r;
}

std::unique_ptr<MonotoneOracle> beta_oracle(const SupermodularGame& game, BestResponseKind kind) {
  return std::make_unique<FunctionOracle>(game.profile_box(), [game, kind](const GridPoint& p) {
    GridPoint out(p.size());
    for (int i = 0; i < game.players(); ++i) {
      out.segment(game.offset(i), game.player_dims(i)) = best_response(game, i, p, kind);
    }
    return out;
  });
}

bool is_pure_equilibrium(const SupermodularGame& game, const GridPoint& profile) {
  for (int i = 0; i < game.players(); ++i) {
    const Rational here = game.utility(i, profile);
    bool ok = true;
    game.strategy_box(i).for_each([&](const GridPoint& s) {
      if (ok && game.utility(i, game.with_strategy(profile, i, s)) > here) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

namespace {

struct Partial {
  GridPoint x;
  GridPoint fx;
};

// Divide and conquer in permuted coordinates where the first `block`
// coordinates belong to the skipped player; `leaf` resolves them.
template <typename Leaf>
Partial shortcut_rec(int k, int block, GridPoint lo, GridPoint hi, Leaf& leaf) {
  if (k == block) return leaf(lo);
  const int i = k - 1;
  while (true) {
    const Coord m = lo[i] + (hi[i] - lo[i]) / 2;
    GridPoint sub_lo = lo;
    GridPoint sub_hi = hi;
    sub_lo[i] = m;
    sub_hi[i] = m;
    Partial p = shortcut_rec(k - 1, block, sub_lo, sub_hi, leaf);
    for (int j = 0; j < k; ++j) {
      if (p.fx[j] < lo[j] || p.fx[j] > hi[j]) throw GameError("best-response map is not monotone");
    }
    if (p.fx[i] == m) return p;
    if (p.fx[i] > m) {
      lo.head(k) = p.fx.head(k);
    } else {
      hi.head(k) = p.fx.head(k);
    }
  }
}

}  // namespace

EquilibriumResult solve_equilibrium(const SupermodularGame& game, BestResponseKind kind, bool shortcut) {
  auto beta = beta_oracle(game, kind);
  EquilibriumResult out;
  if (!shortcut) {
    auto r = dqy_solve(*beta, game.profile_box());
    if (!r.is_fixed_point()) throw GameError("best-response map is not monotone");
    out.profile = r.point();
    out.oracle_calls = r.queries;
  } else {
    int skip = 0;
    for (int i = 1; i < game.players(); ++i) {
      if (game.player_dims(i) > game.player_dims(skip)) skip = i;
    }
    // perm[q] = profile coordinate at permuted position q.
    std::vector<int> perm;
    for (int c = 0; c < game.player_dims(skip); ++c) perm.push_back(game.offset(skip) + c);
    for (int c = 0; c < game.dims(); ++c) {
      if (c < game.offset(skip) || c >= game.offset(skip) + game.player_dims(skip)) perm.push_back(c);
    }
    const int d = game.dims();
    auto to_profile = [&](const GridPoint& q) {
      GridPoint p(d);
      for (int j = 0; j < d; ++j) p[perm[static_cast<std::size_t>(j)]] = q[j];
      return p;
    };
    auto from_profile = [&](const GridPoint& p) {
      GridPoint q(d);
      for (int j = 0; j < d; ++j) q[j] = p[perm[static_cast<std::size_t>(j)]];
      return q;
    };
    const int block = game.player_dims(skip);
    auto leaf = [&](const GridPoint& q) {
      GridPoint p = to_profile(q);
      const GridPoint b = best_response(game, skip, p, kind);
      ++out.substitutions;
      p = game.with_strategy(p, skip, b);
      const GridPoint fp = beta->query(p);
      if (game.strategy(fp, skip) != b) throw GameError("best response of the skipped player is not stable");
      return Partial{from_profile(p), from_profile(fp)};
    };
    const std::uint64_t start = beta->queries();
    Partial p = shortcut_rec(d, block, from_profile(game.profile_box().low()),
                             from_profile(game.profile_box().high()), leaf);
    out.profile = to_profile(p.x);
    out.oracle_calls = beta->queries() - start;
  }
  if (!is_pure_equilibrium(game, out.profile)) {
    throw GameError("fixed point " + to_string(out.profile) + " is not a pure equilibrium");
  }
  return out;
}

// ---------------------------------------------------------------------------
// C2 / C3

std::string describe(const PropertyViolation& v) {
  std::ostringstream os;
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, violation::Supermodularity>) {
          os << "player " << x.player << " utility not supermodular at " << to_string(x.x) << ", "
             << to_string(x.y);
        } else if constexpr (std::is_same_v<T, violation::IncreasingDifferences>) {
          os << "player " << x.player << " utility lacks increasing differences between " << to_string(x.low_low)
             << " and " << to_string(x.high_high);
        } else {
          os << "player " << x.player << " extreme best response " << to_string(x.profile)
             << " is not a best response";
        }
      },
      v);
  return os.str();
}

bool reproduces(const SupermodularGame& game, const PropertyViolation& v) {
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, violation::Supermodularity>) {
          const int i = x.player;
          return game.utility(i, x.x) + game.utility(i, x.y) > game.utility(i, join(x.x, x.y)) +
                                                                     game.utility(i, meet(x.x, x.y));
        } else if constexpr (std::is_same_v<T, violation::IncreasingDifferences>) {
          const int i = x.player;
          return game.utility(i, x.high_high) - game.utility(i, x.low_high) <
                 game.utility(i, x.high_low) - game.utility(i, x.low_low);
        } else {
          const auto best = argmax_set(game, x.player, x.profile);
          const GridPoint s = game.strategy(x.profile, x.player);
          return std::find(best.begin(), best.end(), s) == best.end();
        }
      },
      v);
}

namespace {

std::optional<PropertyViolation> test_c2(const SupermodularGame& g, int i, const GridPoint& x, const GridPoint& y) {
  if (leq(x, y) || leq(y, x)) return std::nullopt;
  if (g.utility(i, x) + g.utility(i, y) > g.utility(i, join(x, y)) + g.utility(i, meet(x, y))) {
    return violation::Supermodularity{x, y, i};
  }
  return std::nullopt;
}

std::optional<PropertyViolation> test_c3(const SupermodularGame& g, int i, const GridPoint& s, const GridPoint& s2,
                                         const GridPoint& t, const GridPoint& t2) {
  violation::IncreasingDifferences v{g.with_strategy(t, i, s), g.with_strategy(t, i, s2), g.with_strategy(t2, i, s),
                                     g.with_strategy(t2, i, s2), i};
  if (reproduces(g, v)) return v;
  return std::nullopt;
}

GridPoint random_point(const GridBox& box, Rng& rng) {
  GridPoint p(box.dims());
  for (int i = 0; i < box.dims(); ++i) p[i] = rng.uniform(box.low()[i], box.high()[i]);
  return p;
}

}  // namespace

std::optional<PropertyViolation> check_c2_c3(const SupermodularGame& game, std::uint64_t sample_budget,
                                             std::uint64_t seed) {
  Rng rng(seed);
  for (int i = 0; i < game.players(); ++i) {
    const GridBox& own = game.strategy_box(i);
    // Profiles of the others, with player i's block pinned at its bottom.
    const GridBox others(game.profile_box().low(),
                         game.with_strategy(game.profile_box().high(), i, own.low()));
    std::vector<GridPoint> mine, theirs;
    const double a = static_cast<double>(own.point_count());
    const double b = static_cast<double>(others.point_count());
    const bool exhaustive = a * a * b * b <= static_cast<double>(sample_budget);
    if (exhaustive) {
      own.for_each([&](const GridPoint& s) { mine.push_back(s); });
      others.for_each([&](const GridPoint& t) { theirs.push_back(t); });
      for (const auto& t : theirs) {
        for (std::size_t p = 0; p < mine.size(); ++p) {
          for (std::size_t q = p + 1; q < mine.size(); ++q) {
            if (auto v = test_c2(game, i, game.with_strategy(t, i, mine[p]), game.with_strategy(t, i, mine[q]))) {
              return v;
            }
          }
        }
      }
      for (const auto& s : mine) {
        for (const auto& s2 : mine) {
          if (!leq(s, s2) || s == s2) continue;
          for (const auto& t : theirs) {
            for (const auto& t2 : theirs) {
              if (!leq(t, t2) || t == t2) continue;
              if (auto v = test_c3(game, i, s, s2, t, t2)) return v;
            }
          }
        }
      }
    } else {
      for (std::uint64_t n = 0; n < sample_budget; ++n) {
        const GridPoint t = random_point(others, rng);
        const GridPoint x = random_point(own, rng);
        const GridPoint y = random_point(own, rng);
        if (auto v = test_c2(game, i, game.with_strategy(t, i, x), game.with_strategy(t, i, y))) return v;
        const GridPoint u = random_point(others, rng);
        if (auto v = test_c3(game, i, meet(x, y), join(x, y), meet(t, u), join(t, u))) return v;
      }
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Reductions from monotone maps

namespace {

Rational squared_distance(const GridPoint& a, const GridPoint& b) {
  Coord s = 0;
  for (Eigen::Index j = 0; j < a.size(); ++j) s += (a[j] - b[j]) * (a[j] - b[j]);
  return Rational(s);
}

}  // namespace

SupermodularGame game_from_monotone(MonotoneOracle& f) {
  const GridBox& box = f.domain();
  const int d = box.dims();
  Utility u1 = [d](const GridPoint& p) { return -squared_distance(p.head(d), p.tail(d)); };
  Utility u2 = [d, &f](const GridPoint& p) { return -squared_distance(f.query(p.head(d)), p.tail(d)); };
  return SupermodularGame({box, box}, {u1, u2});
}

GridPoint MultiReduction::fixed_point_of(const GridPoint& profile) const {
  GridPoint x(d);
  for (int l = 0; l < d; ++l) x[l] = profile[order[static_cast<std::size_t>(l)]];
  return x;
}

GridPoint MultiReduction::profile_of(const GridPoint& x) const {
  GridPoint p(static_cast<Eigen::Index>(order.size()));
  for (std::size_t j = 0; j < order.size(); ++j) p[order[j]] = x[static_cast<Eigen::Index>(j) % d];
  return p;
}

MultiReduction game_from_monotone_multi(MonotoneOracle& f, const std::vector<int>& dims) {
  const GridBox& box = f.domain();
  const int d = box.dims();
  for (int i = 1; i < d; ++i) {
    if (box.low()[i] != box.low()[0] || box.high()[i] != box.high()[0]) {
      throw std::invalid_argument("multi-player reduction needs a cube domain");
    }
  }
  if (dims.size() < 2) throw std::invalid_argument("multi-player reduction needs at least two players");
  int total = 0;
  int largest = 0;
  for (int di : dims) {
    if (di < 1) throw std::invalid_argument("player dimensions must be positive");
    total += di;
    largest = std::max(largest, di);
  }
  if (total < 2 * d || total - largest < d) {
    throw std::invalid_argument("player dimensions must satisfy sum >= 2d and sum - max >= d");
  }
  const int k = static_cast<int>(dims.size());

  std::vector<int> offset(dims.size());
  for (int i = 1; i < k; ++i) offset[static_cast<std::size_t>(i)] = offset[static_cast<std::size_t>(i - 1)] + dims[static_cast<std::size_t>(i - 1)];
  std::vector<int> players(dims.size());
  std::iota(players.begin(), players.end(), 0);
  std::stable_sort(players.begin(), players.end(),
                   [&](int a, int b) { return dims[static_cast<std::size_t>(a)] < dims[static_cast<std::size_t>(b)]; });

  // Sorted positions: order[j] is the profile coordinate, owner[j] its player,
  // start[r] the first position of the r-th sorted player.
  std::vector<int> order, owner, start;
  for (int p : players) {
    start.push_back(static_cast<int>(order.size()));
    for (int c = 0; c < dims[static_cast<std::size_t>(p)]; ++c) {
      order.push_back(offset[static_cast<std::size_t>(p)] + c);
      owner.push_back(p);
    }
  }
  std::vector<int> rank(dims.size());
  for (int r = 0; r < k; ++r) rank[static_cast<std::size_t>(players[static_cast<std::size_t>(r)])] = r;

  // For j < d: the positions read, by label, to form the argument of f.
  // For j >= d: the single position copied.
  std::vector<std::vector<int>> reads(static_cast<std::size_t>(total));
  for (int j = 0; j < total; ++j) {
    auto& rd = reads[static_cast<std::size_t>(j)];
    const int p = owner[static_cast<std::size_t>(j)];
    if (j < d) {
      const int r = rank[static_cast<std::size_t>(p)];
      const int t = start[static_cast<std::size_t>(r)];
      rd.assign(static_cast<std::size_t>(d), -1);
      if (dims[static_cast<std::size_t>(p)] <= d) {
        for (int l = 0; l < d; ++l) rd[static_cast<std::size_t>(l)] = l < t ? l : l + d;
      } else {
        for (int q = total - d; q < total; ++q) rd[static_cast<std::size_t>(q % d)] = q;
      }
    } else {
      int src = j % d;
      if (owner[static_cast<std::size_t>(src)] == p) {
        // Lowest position of the last player carrying the same label.
        src = start[static_cast<std::size_t>(k - 1)];
        while (src % d != j % d) ++src;
      }
      rd.push_back(src);
    }
    for (int q : rd) {
      if (owner[static_cast<std::size_t>(q)] == p) throw InternalError("reduction reads a player's own coordinate");
    }
  }

  std::vector<GridBox> boxes;
  std::vector<Utility> utilities;
  for (int i = 0; i < k; ++i) {
    const int di = dims[static_cast<std::size_t>(i)];
    boxes.emplace_back(GridPoint::Constant(di, box.low()[0]), GridPoint::Constant(di, box.high()[0]));
    std::vector<int> mine;
    for (int j = 0; j < total; ++j) {
      if (owner[static_cast<std::size_t>(j)] == i) mine.push_back(j);
    }
    utilities.push_back([mine, reads, order, d, &f](const GridPoint& x) {
      std::map<std::vector<Coord>, GridPoint> cache;
      Coord s = 0;
      for (int j : mine) {
        const auto& rd = reads[static_cast<std::size_t>(j)];
        Coord target;
        if (j < d) {
          std::vector<Coord> arg;
          for (int q : rd) arg.push_back(x[order[static_cast<std::size_t>(q)]]);
          auto it = cache.find(arg);
          if (it == cache.end()) it = cache.emplace(arg, f.query(make_point(arg))).first;
          target = it->second[j];
        } else {
          target = x[order[static_cast<std::size_t>(rd.front())]];
        }
        const Coord diff = x[order[static_cast<std::size_t>(j)]] - target;
        s += diff * diff;
      }
      return Rational(-s);
    });
  }
  return MultiReduction{SupermodularGame(std::move(boxes), std::move(utilities)), order, d};
}

SupermodularGame diamond_search(const std::vector<Rational>& alpha, const std::vector<std::vector<Rational>>& cost) {
  if (alpha.size() != cost.size() || alpha.empty()) throw std::invalid_argument("one alpha and cost table per player");
  std::vector<GridBox> boxes;
  std::vector<Utility> utilities;
  const int k = static_cast<int>(alpha.size());
  for (int i = 0; i < k; ++i) {
    const auto& c = cost[static_cast<std::size_t>(i)];
    if (c.empty()) throw std::invalid_argument("cost table must cover effort 0");
    if (alpha[static_cast<std::size_t>(i)] <= 0) throw std::invalid_argument("alpha must be positive");
    boxes.emplace_back(make_point({0}), make_point({static_cast<Coord>(c.size()) - 1}));
    utilities.push_back([i, k, a = alpha[static_cast<std::size_t>(i)], c](const GridPoint& s) {
      Coord others = 0;
      for (int j = 0; j < k; ++j) {
        if (j != i) others += s[j];
      }
      return a * Rational(s[i]) * Rational(others) - c[static_cast<std::size_t>(s[i])];
    });
  }
  return SupermodularGame(std::move(boxes), std::move(utilities));
}

}  // namespace tarski
