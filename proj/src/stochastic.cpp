#include "tarski/stochastic.hpp"

#include "tarski/linalg.hpp"
#include "tarski/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace tarski {

// ---------------------------------------------------------------------------
// Matrix games

MatrixGameSolution matrix_game_value(const RationalMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0) throw std::invalid_argument("matrix game needs at least one action each");
  // Shift every payoff to be at least 1; the column player's program
  // max 1^T y s.t. A' y <= 1, y >= 0 then has optimum 1 / Val(A').
  Rational lo = a(0, 0);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) lo = std::min(lo, a(i, j));
  }
  const Rational shift = Rational(1) - lo;
  RationalMatrix shifted = a;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) shifted(i, j) += shift;
  }
  const RationalVector ones_rows = RationalVector::Constant(a.rows(), Rational(1));
  const RationalVector ones_cols = RationalVector::Constant(a.cols(), Rational(1));
  const LpSolution lp = simplex_max(shifted, ones_rows, ones_cols);
  const Rational t = lp.objective;
  MatrixGameSolution out;
  out.value = Rational(1) / t - shift;
  out.col_strategy = lp.primal / t;
  out.row_strategy = lp.dual / t;
  return out;
}

Rational best_rational_approx(const Rational& x, const BigInt& max_den) {
  if (max_den < 1) throw std::invalid_argument("denominator bound must be positive");
  if (den_of(x) <= max_den) return x;
  // Convergents h_{k-2} = p0/q0, h_{k-1} = p1/q1.
  BigInt p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  Rational r = x;
  while (true) {
    const BigInt a = floor_of(r);
    const BigInt p2 = a * p1 + p0;
    const BigInt q2 = a * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    r = Rational(1) / (r - Rational(a));
  }
  const BigInt t = (max_den - q0) / q1;
  const Rational conv(p1, q1);
  const Rational semi(p0 + t * p1, q0 + t * q1);
  const Rational dc = abs(x - conv);
  const Rational ds = abs(x - semi);
  if (dc < ds) return conv;
  if (ds < dc) return semi;
  return den_of(conv) <= den_of(semi) ? conv : semi;
}

// ---------------------------------------------------------------------------
// Simple stochastic games

namespace {

bool is_sink(SsgKind k) { return k == SsgKind::ZeroSink || k == SsgKind::OneSink; }

Rational sink_value(SsgKind k) { return k == SsgKind::OneSink ? Rational(1) : Rational(0); }

// Right-hand side of a non-sink vertex's equation. Positively homogeneous,
// so it also works in grid units where the 1-sink holds M.
Rational ssg_row(const SsgVertex& v, const RationalVector& x) {
  switch (v.kind) {
    case SsgKind::Random: {
      Rational s = 0;
      for (const auto& e : v.edges) s += e.p * x[e.to];
      return s;
    }
    case SsgKind::Max: {
      Rational s = x[v.edges.front().to];
      for (const auto& e : v.edges) s = std::max(s, x[e.to]);
      return s;
    }
    case SsgKind::Min: {
      Rational s = x[v.edges.front().to];
      for (const auto& e : v.edges) s = std::min(s, x[e.to]);
      return s;
    }
    default:
      throw InternalError("sink row evaluated");
  }
}

BigInt ceil_sqrt(const BigInt& v) {
  BigInt r = boost::multiprecision::sqrt(v);
  if (r * r < v) r += 1;
  return r;
}

}  // namespace

std::vector<int> SsgInstance::inner() const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i) {
    if (!is_sink(vertices[static_cast<std::size_t>(i)].kind)) out.push_back(i);
  }
  return out;
}

void SsgInstance::validate() const {
  if (vertices.empty()) throw MalformedInputError("SSG has no vertices");
  if (start < 0 || start >= size()) throw MalformedInputError("SSG start vertex out of range");
  for (int i = 0; i < size(); ++i) {
    const auto& v = vertices[static_cast<std::size_t>(i)];
    const std::string where = "SSG vertex " + std::to_string(i) + ": ";
    if (is_sink(v.kind)) {
      if (!v.edges.empty()) throw MalformedInputError(where + "sinks have no edges");
      continue;
    }
    if (v.edges.empty()) throw MalformedInputError(where + "needs at least one edge");
    for (const auto& e : v.edges) {
      if (e.to < 0 || e.to >= size()) throw MalformedInputError(where + "edge target out of range");
    }
    if (v.kind == SsgKind::Random) {
      Rational sum = 0;
      for (const auto& e : v.edges) {
        if (e.p <= 0 || e.p > 1) throw MalformedInputError(where + "probabilities must lie in (0, 1]");
        sum += e.p;
      }
      if (sum != 1) throw MalformedInputError(where + "probabilities sum to " + to_string(sum));
    }
  }
}

RationalVector ssg_value_map(const SsgInstance& inst, const RationalVector& x) {
  if (x.size() != inst.size()) throw ShapeError("value vector has wrong length");
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x[i] < 0 || x[i] > 1) throw DomainError("SSG values must lie in [0, 1]");
  }
  // Sink coordinates are read as their constants, whatever x holds there.
  RationalVector y = x;
  for (int i = 0; i < inst.size(); ++i) {
    const auto& v = inst.vertices[static_cast<std::size_t>(i)];
    if (is_sink(v.kind)) y[i] = sink_value(v.kind);
  }
  RationalVector out(x.size());
  for (int i = 0; i < inst.size(); ++i) {
    const auto& v = inst.vertices[static_cast<std::size_t>(i)];
    out[i] = is_sink(v.kind) ? y[i] : ssg_row(v, y);
  }
  return out;
}

RationalVector ssg_brute_force(const SsgInstance& inst, std::uint64_t budget) {
  inst.validate();
  const int n = inst.size();
  std::vector<int> chooser;
  double pairs = 1;
  for (int i = 0; i < n; ++i) {
    const auto& v = inst.vertices[static_cast<std::size_t>(i)];
    if (v.kind == SsgKind::Max || v.kind == SsgKind::Min) {
      chooser.push_back(i);
      pairs *= static_cast<double>(v.edges.size());
    }
  }
  if (pairs > static_cast<double>(budget)) throw std::runtime_error("SSG strategy space exceeds the enumeration budget");

  // Values for one positional profile: choice[i] is the edge index at vertex i.
  auto solve_profile = [&](const std::vector<std::size_t>& choice) {
    std::vector<std::vector<std::pair<int, Rational>>> succ(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      const auto& v = inst.vertices[static_cast<std::size_t>(i)];
      if (v.kind == SsgKind::Random) {
        for (const auto& e : v.edges) succ[static_cast<std::size_t>(i)].emplace_back(e.to, e.p);
      } else if (!is_sink(v.kind)) {
        succ[static_cast<std::size_t>(i)].emplace_back(v.edges[choice[static_cast<std::size_t>(i)]].to, Rational(1));
      }
    }
    // Backward reachability of the 1-sink.
    std::vector<bool> reach(static_cast<std::size_t>(n), false);
    for (int i = 0; i < n; ++i) reach[static_cast<std::size_t>(i)] = inst.vertices[static_cast<std::size_t>(i)].kind == SsgKind::OneSink;
    for (bool changed = true; changed;) {
      changed = false;
      for (int i = 0; i < n; ++i) {
        if (reach[static_cast<std::size_t>(i)]) continue;
        for (const auto& [j, p] : succ[static_cast<std::size_t>(i)]) {
          if (reach[static_cast<std::size_t>(j)]) {
            reach[static_cast<std::size_t>(i)] = changed = true;
            break;
          }
        }
      }
    }
    std::vector<int> live;
    std::vector<int> pos(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < n; ++i) {
      if (reach[static_cast<std::size_t>(i)] && !is_sink(inst.vertices[static_cast<std::size_t>(i)].kind)) {
        pos[static_cast<std::size_t>(i)] = static_cast<int>(live.size());
        live.push_back(i);
      }
    }
    RationalVector x = RationalVector::Zero(n);
    for (int i = 0; i < n; ++i) {
      if (inst.vertices[static_cast<std::size_t>(i)].kind == SsgKind::OneSink) x[i] = 1;
    }
    if (live.empty()) return x;
    const auto m = static_cast<Eigen::Index>(live.size());
    RationalMatrix a = RationalMatrix::Identity(m, m);
    RationalVector b = RationalVector::Zero(m);
    for (Eigen::Index r = 0; r < m; ++r) {
      for (const auto& [j, p] : succ[static_cast<std::size_t>(live[static_cast<std::size_t>(r)])]) {
        if (pos[static_cast<std::size_t>(j)] >= 0) {
          a(r, pos[static_cast<std::size_t>(j)]) -= p;
        } else if (inst.vertices[static_cast<std::size_t>(j)].kind == SsgKind::OneSink) {
          b[r] += p;
        }
      }
    }
    auto sol = solve_exact<Rational>(a, b);
    if (!sol) throw InternalError("absorbing system for an SSG profile is singular");
    for (Eigen::Index r = 0; r < m; ++r) x[live[static_cast<std::size_t>(r)]] = (*sol)[r];
    return x;
  };

  std::vector<int> max_v, min_v;
  for (int i : chooser) {
    (inst.vertices[static_cast<std::size_t>(i)].kind == SsgKind::Max ? max_v : min_v).push_back(i);
  }
  // Odometer over the choices of a vertex set.
  auto next = [&](const std::vector<int>& set, std::vector<std::size_t>& choice) {
    for (int i : set) {
      auto& c = choice[static_cast<std::size_t>(i)];
      if (++c < inst.vertices[static_cast<std::size_t>(i)].edges.size()) return true;
      c = 0;
    }
    return false;
  };
  std::vector<std::size_t> choice(static_cast<std::size_t>(n), 0);
  std::optional<RationalVector> best;
  do {
    std::optional<RationalVector> worst;
    do {
      RationalVector x = solve_profile(choice);
      if (!worst) {
        worst = x;
      } else {
        for (int i = 0; i < n; ++i) (*worst)[i] = std::min((*worst)[i], x[i]);
      }
    } while (next(min_v, choice));
    if (!best) {
      best = worst;
    } else {
      for (int i = 0; i < n; ++i) (*best)[i] = std::max((*best)[i], (*worst)[i]);
    }
  } while (next(max_v, choice));
  return *best;
}

void PrecisionPlan::validate() const {
  if (beta <= 0 || beta >= 1) throw std::invalid_argument("discount must lie strictly between 0 and 1");
  if (grid_side < 2) throw std::invalid_argument("grid side must be at least 2");
  if (denominator_bound < 1) throw std::invalid_argument("denominator bound must be positive");
}

PrecisionPlan ssg_default_plan(const SsgInstance& inst, const PlanOverrides& overrides) {
  inst.validate();
  const auto inner = inst.inner();
  const int n = static_cast<int>(inner.size());
  std::vector<int> pos(static_cast<std::size_t>(inst.size()), -1);
  for (int r = 0; r < n; ++r) pos[static_cast<std::size_t>(inner[static_cast<std::size_t>(r)])] = r;

  BigInt det_bound = 1;
  Rational p_min = 1;
  for (int i : inner) {
    const auto& v = inst.vertices[static_cast<std::size_t>(i)];
    if (v.kind == SsgKind::Random) {
      BigInt lcm = 1;
      for (const auto& e : v.edges) {
        lcm = boost::multiprecision::lcm(lcm, den_of(e.p));
        p_min = std::min(p_min, e.p);
      }
      std::vector<Rational> row(static_cast<std::size_t>(n), Rational(0));
      row[static_cast<std::size_t>(pos[static_cast<std::size_t>(i)])] = 1;
      for (const auto& e : v.edges) {
        if (pos[static_cast<std::size_t>(e.to)] >= 0) row[static_cast<std::size_t>(pos[static_cast<std::size_t>(e.to)])] -= e.p;
      }
      BigInt norm2 = 0;
      for (const auto& c : row) {
        const BigInt k = num_of(c * Rational(lcm));
        norm2 += k * k;
      }
      det_bound *= std::max<BigInt>(1, ceil_sqrt(norm2));
    } else {
      bool other = false;
      for (const auto& e : v.edges) other |= pos[static_cast<std::size_t>(e.to)] >= 0 && e.to != i;
      if (other) det_bound *= 2;
    }
  }
  PrecisionPlan plan;
  plan.denominator_bound = overrides.denominator_bound.value_or(det_bound);
  if (plan.denominator_bound < 1) throw std::invalid_argument("denominator bound must be positive");
  plan.eps = overrides.eps.value_or(Rational(1) / Rational(4 * plan.denominator_bound * plan.denominator_bound));
  if (plan.eps <= 0) throw std::invalid_argument("eps must be positive");
  if (overrides.beta) {
    plan.beta = *overrides.beta;
    if (plan.beta <= 0 || plan.beta >= 1) throw std::invalid_argument("beta must lie in (0, 1)");
  } else {
    Rational target = plan.eps / std::max(1, n);
    for (int k = 0; k < n; ++k) target *= p_min;
    Rational beta(1, 2);
    while (beta > target) beta /= 2;
    plan.beta = beta;
  }
  const Rational need = Rational(2) / (plan.eps * plan.beta);
  Coord m = 2;
  while (Rational(m) < need) {
    if (m > (Coord{1} << 61)) throw std::runtime_error("SSG needs a grid finer than 2^62");
    m *= 2;
  }
  plan.grid_side = m;
  return plan;
}

std::unique_ptr<MonotoneOracle> ssg_grid_oracle(const SsgInstance& inst, const PrecisionPlan& plan) {
  inst.validate();
  plan.validate();
  const auto inner = inst.inner();
  if (inner.empty()) throw std::invalid_argument("SSG has no non-sink vertices");
  const int n = static_cast<int>(inner.size());
  const Coord m = plan.grid_side;
  const Rational keep = Rational(1) - plan.beta;
  return std::make_unique<FunctionOracle>(GridBox::cube(m + 1, n), [inst, inner, m, keep, n](const GridPoint& g) {
    RationalVector x(inst.size());
    for (int i = 0; i < inst.size(); ++i) {
      x[i] = inst.vertices[static_cast<std::size_t>(i)].kind == SsgKind::OneSink ? Rational(m) : Rational(0);
    }
    for (int r = 0; r < n; ++r) x[inner[static_cast<std::size_t>(r)]] = Rational(g[r] - 1);
    GridPoint out(n);
    for (int r = 0; r < n; ++r) {
      const Rational y = keep * ssg_row(inst.vertices[static_cast<std::size_t>(inner[static_cast<std::size_t>(r)])], x);
      out[r] = to_int64(floor_of(y)) + 1;
    }
    return out;
  });
}

namespace {

SolveOutcome run_solver(MonotoneOracle& oracle, MonotoneSolver solver) {
  switch (solver) {
    case MonotoneSolver::ValueIteration:
      return value_iteration(oracle, oracle.domain());
    case MonotoneSolver::Pls:
      return local_search_pls(oracle, oracle.domain());
    case MonotoneSolver::Dqy:
    default:
      return dqy_solve(oracle, oracle.domain());
  }
}

}  // namespace

SsgTarskiResult ssg_solve_tarski(const SsgInstance& inst, const PrecisionPlan& plan, MonotoneSolver solver) {
  auto h = ssg_grid_oracle(inst, plan);
  const SolveOutcome r = run_solver(*h, solver);
  if (!r.is_fixed_point()) throw InternalError("discretized SSG map reported a monotonicity violation");
  const auto inner = inst.inner();
  SsgTarskiResult out;
  out.queries = r.queries;
  out.approx = RationalVector(inst.size());
  for (int i = 0; i < inst.size(); ++i) out.approx[i] = sink_value(inst.vertices[static_cast<std::size_t>(i)].kind);
  for (std::size_t k = 0; k < inner.size(); ++k) {
    out.approx[inner[k]] = Rational(r.point()[static_cast<Eigen::Index>(k)] - 1) / Rational(plan.grid_side);
  }
  // Sinks are constants rather than discounted unknowns, so only inner
  // vertices enter the residual.
  const RationalVector fx = ssg_value_map(inst, out.approx) * (Rational(1) - plan.beta);
  out.residual = 0;
  for (int i : inner) out.residual = std::max(out.residual, Rational(abs(fx[i] - out.approx[i])));
  out.rounded = RationalVector(inst.size());
  for (int i = 0; i < inst.size(); ++i) out.rounded[i] = best_rational_approx(out.approx[i], plan.denominator_bound);
  return out;
}

// ---------------------------------------------------------------------------
// Shapley games

Rational ShapleyInstance::min_halt() const {
  std::optional<Rational> q;
  for (const auto& s : states) {
    for (const auto& row : s.transition) {
      for (const auto& p : row) {
        const Rational h = Rational(1) - p.sum();
        if (!q || h < *q) q = h;
      }
    }
  }
  if (!q) throw MalformedInputError("Shapley game has no states");
  return *q;
}

Rational ShapleyInstance::max_reward() const {
  Rational m = 0;
  for (const auto& s : states) {
    for (Eigen::Index j = 0; j < s.reward.rows(); ++j) {
      for (Eigen::Index k = 0; k < s.reward.cols(); ++k) m = std::max(m, Rational(abs(s.reward(j, k))));
    }
  }
  return m;
}

void ShapleyInstance::validate() const {
  if (states.empty()) throw MalformedInputError("Shapley game has no states");
  if (start < 0 || start >= size()) throw MalformedInputError("Shapley start state out of range");
  for (int i = 0; i < size(); ++i) {
    const auto& s = states[static_cast<std::size_t>(i)];
    const std::string where = "Shapley state " + std::to_string(i) + ": ";
    if (s.reward.rows() == 0 || s.reward.cols() == 0) throw MalformedInputError(where + "empty reward matrix");
    if (static_cast<Eigen::Index>(s.transition.size()) != s.reward.rows()) {
      throw MalformedInputError(where + "transition rows do not match rewards");
    }
    for (const auto& row : s.transition) {
      if (static_cast<Eigen::Index>(row.size()) != s.reward.cols()) {
        throw MalformedInputError(where + "transition columns do not match rewards");
      }
      for (const auto& p : row) {
        if (p.size() != size()) throw MalformedInputError(where + "transition vector has wrong length");
        for (Eigen::Index r = 0; r < p.size(); ++r) {
          if (p[r] < 0) throw MalformedInputError(where + "negative transition probability");
        }
        if (p.sum() >= 1) throw MalformedInputError(where + "transition probabilities must sum below 1");
      }
    }
  }
}

namespace {

RationalVector shapley_step(const ShapleyInstance& inst, const RationalVector& x) {
  RationalVector out(inst.size());
  for (int i = 0; i < inst.size(); ++i) {
    const auto& s = inst.states[static_cast<std::size_t>(i)];
    RationalMatrix b = s.reward;
    for (Eigen::Index j = 0; j < b.rows(); ++j) {
      for (Eigen::Index k = 0; k < b.cols(); ++k) b(j, k) += s.transition[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)].dot(x);
    }
    out[i] = matrix_game_value(b).value;
  }
  return out;
}

}  // namespace

RationalVector shapley_value_map(const ShapleyInstance& inst, const RationalVector& x) {
  if (x.size() != inst.size()) throw ShapeError("value vector has wrong length");
  const Rational bound = inst.max_reward() / inst.min_halt();
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x[i] < -bound || x[i] > bound) throw DomainError("Shapley values must lie in [-M/q, M/q]");
  }
  return shapley_step(inst, x);
}

std::unique_ptr<MonotoneOracle> shapley_grid_oracle(const ShapleyInstance& inst, const Rational& eps) {
  inst.validate();
  if (eps <= 0) throw std::invalid_argument("eps must be positive");
  const Rational q = inst.min_halt();
  const Rational h = eps * q / 2;
  const Coord k = std::max<Coord>(1, to_int64(ceil_of(inst.max_reward() / (q * h))));
  const int n = inst.size();
  return std::make_unique<FunctionOracle>(GridBox::cube(2 * k + 1, n), [inst, h, k, n](const GridPoint& g) {
    RationalVector x(n);
    for (int i = 0; i < n; ++i) x[i] = Rational(g[i] - k - 1) * h;
    const RationalVector fx = shapley_step(inst, x);
    GridPoint out(n);
    for (int i = 0; i < n; ++i) {
      const Coord v = to_int64(floor_of(fx[i] / h));
      if (v < -k || v > k) throw InternalError("Shapley grid map left its grid");
      out[i] = v + k + 1;
    }
    return out;
  });
}

ShapleyResult shapley_solve(const ShapleyInstance& inst, const Rational& eps, ShapleyRoute route,
                            MonotoneSolver solver) {
  inst.validate();
  if (eps <= 0) throw std::invalid_argument("eps must be positive");
  const Rational q = inst.min_halt();
  const int n = inst.size();
  ShapleyResult out;
  if (route == ShapleyRoute::ContractionIteration) {
    const Rational h = eps * q * q / 8;
    const Rational bound = inst.max_reward() / q;
    RationalVector x = RationalVector::Zero(n);
    for (std::uint64_t it = 0;; ++it) {
      const RationalVector fx = shapley_step(inst, x);
      const Rational res = linf_norm(fx - x);
      if (res < eps * q) {
        out.value = x;
        out.residual = res;
        out.steps = it + 1;
        return out;
      }
      if (it > 1000000) throw std::runtime_error("contraction iteration did not converge");
      for (int i = 0; i < n; ++i) {
        x[i] = std::clamp(Rational(round_half_up(fx[i] / h)) * h, Rational(-bound), bound);
      }
    }
  }
  auto grid = shapley_grid_oracle(inst, eps);
  const SolveOutcome r = run_solver(*grid, solver);
  if (!r.is_fixed_point()) throw InternalError("discretized Shapley map reported a monotonicity violation");
  const Rational h = eps * q / 2;
  const Coord k = (grid->domain().high()[0] - 1) / 2;
  out.value = RationalVector(n);
  for (int i = 0; i < n; ++i) out.value[i] = Rational(r.point()[i] - k - 1) * h;
  out.residual = linf_norm(shapley_step(inst, out.value) - out.value);
  out.steps = r.queries;
  return out;
}

}  // namespace tarski
