#include "commands.hpp"

#include "tarski/adversary.hpp"
#include "tarski/instances.hpp"
#include "tarski/io.hpp"
#include "tarski/simplicial.hpp"
#include "tarski/solvers.hpp"
#include "tarski/stochastic.hpp"
#include "tarski/supermodular.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

namespace tarski::lab {

using io::json;

namespace {

MonotonicityWitness reversed(const MonotonicityWitness& w) {
  return {ReversedOracle::reverse(w.x), ReversedOracle::reverse(w.y), ReversedOracle::reverse(w.fx),
          ReversedOracle::reverse(w.fy)};
}

SolveOutcome brute_outcome(MonotoneOracle& oracle, const GridBox& box) {
  const std::uint64_t start = oracle.queries();
  const FixSet fix = brute_force_fix(oracle, box);
  SolveOutcome out;
  if (fix.lfp) {
    out.result = *fix.lfp;
  } else if (!fix.empty()) {
    out.result = fix.points.front();
  } else if (auto w = check_monotone_exhaustive(oracle, box)) {
    out.result = *w;
  } else {
    throw MalformedInputError("no fixed point, yet no monotonicity violation: box is not self-mapped");
  }
  out.queries = oracle.queries() - start;
  return out;
}

void verify(MonotoneOracle& oracle, const SolveOutcome& out) {
  if (out.is_fixed_point()) {
    if (oracle.query(out.point()) != out.point())
      throw InternalError("solver returned " + to_string(out.point()) + ", which is not fixed");
  } else if (!out.witness().valid()) {
    throw InternalError("solver returned an invalid monotonicity witness");
  }
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

/// Writes to the file when one was given, else to the stream.
void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    io::write_text_file(path, text);
  }
}

int outcome_code(const SolveOutcome& out) { return out.is_fixed_point() ? kOk : kWitness; }

MonotoneSolver monotone_solver(const std::string& name) {
  if (name == "dqy") return MonotoneSolver::Dqy;
  if (name == "vi") return MonotoneSolver::ValueIteration;
  if (name == "pls") return MonotoneSolver::Pls;
  throw std::invalid_argument("solver '" + name + "' is not available here (use dqy, vi, or pls)");
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

json decimal(const RationalVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_double(v[i]));
  return out;
}

json exact(const RationalVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(io::to_json(v[i]));
  return out;
}

// ---------------------------------------------------------------------------
// Subcommand configurations

struct SolveArgs {
  std::string instance;
  std::string solver = "dqy";
  std::string json_out;
  bool paranoid = false;
};

struct BenchArgs {
  std::vector<std::string> solvers{"dqy"};
  std::vector<Coord> sizes{256};
  int trials = 10;
  std::uint64_t seed = 0;
  std::string csv_out;
  std::string json_out;
  bool timing = false;
};

struct DuelArgs {
  std::string solver = "dqy";
  Coord n = 64;
  bool history = false;
  std::string json_out;
};

struct GenArgs {
  std::string family;
  Coord n = 16;
  std::uint64_t seed = 0;
  std::string json_out;
};

struct SsgArgs {
  std::string instance;
  std::string solver = "dqy";
  std::string route = "tarski";
  std::string eps;
  std::string beta;
  std::string denominator_bound;
  std::string json_out;
};

struct ShapleyArgs {
  std::string instance;
  std::string solver = "dqy";
  std::string route = "contraction";
  std::string eps = "1e-6";
  std::string json_out;
};

struct CheckArgs {
  std::string instance;
  std::uint64_t budget = 1000000;
  std::uint64_t seed = 1;
  std::string json_out;
};

int cmd_solve(const SolveArgs& a, std::ostream& out) {
  auto inst = io::map_from_json(io::read_json_file(a.instance));
  const SolveOutcome res = run_solver(a.solver, *inst.oracle, inst.oracle->domain(), a.paranoid);
  json j = io::to_json(res);
  j["solver"] = a.solver;
  j["instance"] = a.instance;
  j["instance_type"] = inst.type;
  emit(dump(j), a.json_out, out);
  return outcome_code(res);
}

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  BenchConfig cfg;
  cfg.solvers = a.solvers;
  cfg.sizes = a.sizes;
  cfg.trials = a.trials;
  cfg.seed = a.seed;
  cfg.timing = a.timing;
  const auto records = run_bench(cfg);
  if (!a.json_out.empty()) {
    json rows = json::array();
    for (const auto& r : records) {
      rows.push_back({{"instance_id", r.instance_id},
                      {"solver", r.solver},
                      {"N", r.n},
                      {"d", r.d},
                      {"queries", r.queries},
                      {"wallclock_ms", r.wallclock_ms},
                      {"outcome_kind", r.outcome_kind},
                      {"seed", r.seed}});
    }
    io::write_text_file(a.json_out, dump({{"schema_version", kBenchSchemaVersion}, {"records", rows}}));
  } else {
    emit(bench_csv(records), a.csv_out, out);
  }
  return kOk;
}

int cmd_duel(const DuelArgs& a, std::ostream& out) {
  const DuelReport report = duel(a.solver, a.n);
  emit(dump(io::to_json(report, a.history)), a.json_out, out);
  return report.consistent() ? kOk : kError;
}

int cmd_gen(const GenArgs& a, std::ostream& out) {
  HerringboneInstance inst;
  if (a.family == "herringbone") {
    inst = herringbone_random(HerringboneDistributionParams::for_size(a.n, a.seed));
  } else if (a.family == "uniform-herringbone") {
    inst = herringbone_uniform_path(a.n, a.seed);
  } else if (a.family == "sample") {
    inst = sample_herringbone();
  } else {
    throw std::invalid_argument("unknown family '" + a.family + "'");
  }
  emit(dump(io::to_json(inst)), a.json_out, out);
  return kOk;
}

int cmd_ssg(const SsgArgs& a, std::ostream& out) {
  const SsgInstance inst = io::ssg_from_json(io::read_json_file(a.instance));
  json j{{"instance", a.instance}, {"route", a.route}, {"start", inst.start}};
  if (a.route == "brute") {
    const RationalVector v = ssg_brute_force(inst);
    j["values"] = exact(v);
    j["value"] = io::to_json(v[inst.start]);
  } else if (a.route == "tarski") {
    PlanOverrides over;
    if (!a.eps.empty()) over.eps = parse_rational(a.eps);
    if (!a.beta.empty()) over.beta = parse_rational(a.beta);
    if (!a.denominator_bound.empty()) over.denominator_bound = BigInt(a.denominator_bound);
    const PrecisionPlan plan = ssg_default_plan(inst, over);
    const auto res = ssg_solve_tarski(inst, plan, monotone_solver(a.solver));
    const BigInt& d = plan.denominator_bound;
    j["solver"] = a.solver;
    j["plan"] = {{"eps", io::to_json(plan.eps)},
                 {"beta", io::to_json(plan.beta)},
                 {"grid_side", plan.grid_side},
                 {"denominator_bound", d.str()}};
    // Rounding recovers the exact value only when eps <= 1 / (4 D^2).
    j["rounding_certified"] = plan.eps * Rational(4 * d * d) <= 1;
    j["approx"] = decimal(res.approx);
    j["values"] = exact(res.rounded);
    j["value"] = io::to_json(res.rounded[inst.start]);
    j["residual"] = to_double(res.residual);
    j["queries"] = res.queries;
  } else {
    throw std::invalid_argument("unknown route '" + a.route + "' (use tarski or brute)");
  }
  emit(dump(j), a.json_out, out);
  return kOk;
}

int cmd_shapley(const ShapleyArgs& a, std::ostream& out) {
  const ShapleyInstance inst = io::shapley_from_json(io::read_json_file(a.instance));
  const Rational eps = parse_rational(a.eps);
  ShapleyRoute route;
  if (a.route == "contraction") {
    route = ShapleyRoute::ContractionIteration;
  } else if (a.route == "tarski") {
    route = ShapleyRoute::TarskiGrid;
  } else {
    throw std::invalid_argument("unknown route '" + a.route + "' (use contraction or tarski)");
  }
  const auto res = shapley_solve(inst, eps, route, monotone_solver(a.solver));
  json j{{"instance", a.instance},
         {"route", a.route},
         {"eps", io::to_json(eps)},
         {"values", exact(res.value)},
         {"values_decimal", decimal(res.value)},
         {"value", to_double(res.value[inst.start])},
         {"residual", to_double(res.residual)},
         {"steps", res.steps}};
  if (route == ShapleyRoute::TarskiGrid) j["solver"] = a.solver;
  emit(dump(j), a.json_out, out);
  return kOk;
}

int cmd_check(const CheckArgs& a, std::ostream& out) {
  const json src = io::read_json_file(a.instance);
  json j{{"instance", a.instance}};
  int code = kOk;
  if (src.value("type", "") == "game") {
    auto g = io::game_from_json(src);
    const auto v = check_c2_c3(*g.game, a.budget, a.seed);
    j["check"] = "supermodular";
    j["ok"] = !v.has_value();
    if (v) {
      j["violation"] = io::to_json(*v);
      code = kWitness;
    }
  } else {
    auto inst = io::map_from_json(src);
    const auto w = check_monotone_exhaustive(*inst.oracle, inst.oracle->domain());
    j["check"] = "monotone";
    j["ok"] = !w.has_value();
    j["queries"] = inst.oracle->queries();
    if (w) {
      j["witness"] = io::to_json(*w);
      code = kWitness;
    }
  }
  emit(dump(j), a.json_out, out);
  return code;
}

}  // namespace

const std::vector<std::string>& solver_names() {
  static const std::vector<std::string> names{"dqy", "vi", "pls", "binsearch", "ppad", "brute"};
  return names;
}

SolveOutcome run_solver(const std::string& name, MonotoneOracle& oracle, const GridBox& box, bool paranoid) {
  SolveOutcome out;
  if (name == "dqy") {
    out = dqy_solve(oracle, box, SolverOptions{paranoid});
  } else if (name == "vi") {
    out = value_iteration(oracle, box);
  } else if (name == "pls") {
    out = local_search_pls(oracle, box);
  } else if (name == "binsearch") {
    if (box.dims() == 1) {
      out = binary_search_1d(oracle, box);
    } else {
      // Nested binary search with the first coordinate outermost.
      ReversedOracle rev(oracle);
      const GridBox rbox(ReversedOracle::reverse(box.low()), ReversedOracle::reverse(box.high()));
      out = dqy_solve(rev, rbox, SolverOptions{paranoid});
      if (out.is_fixed_point()) {
        out.result = ReversedOracle::reverse(out.point());
      } else {
        out.result = reversed(out.witness());
      }
    }
  } else if (name == "ppad") {
    out = ppad_route_solve(oracle, box);
  } else if (name == "brute") {
    out = brute_outcome(oracle, box);
  } else {
    throw std::invalid_argument("unknown solver '" + name + "'");
  }
  if (paranoid) verify(oracle, out);
  return out;
}

std::uint64_t trial_seed(std::uint64_t seed, Coord n, int trial) {
  return splitmix(splitmix(splitmix(seed) ^ static_cast<std::uint64_t>(n)) ^ static_cast<std::uint64_t>(trial));
}

int default_threads() {
  if (const char* env = std::getenv("TARSKI_LAB_THREADS")) {
    try {
      const int v = std::stoi(env);
      if (v >= 1) return v;
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<BenchRecord> run_bench(const BenchConfig& config) {
  for (const auto& s : config.solvers)
    if (std::find(solver_names().begin(), solver_names().end(), s) == solver_names().end())
      throw std::invalid_argument("unknown solver '" + s + "'");
  for (Coord n : config.sizes)
    if (n < 1) throw std::invalid_argument("bench sizes must be positive");
  if (config.trials < 0) throw std::invalid_argument("trial count must be non-negative");

  std::vector<BenchRecord> rows;
  for (const auto& s : config.solvers) {
    for (Coord n : config.sizes) {
      for (int t = 0; t < config.trials; ++t) {
        BenchRecord r;
        r.solver = s;
        r.n = n;
        r.seed = trial_seed(config.seed, n, t);
        r.instance_id = "herringbone-" + std::to_string(n) + "-" + std::to_string(t);
        rows.push_back(std::move(r));
      }
    }
  }

  std::atomic<std::size_t> next{0};
  std::vector<std::string> errors(rows.size());
  auto worker = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      BenchRecord& r = rows[i];
      try {
        // The random family needs N >= 16; smaller grids use uniform paths.
        HerringboneInstance inst = r.n >= 16
                                       ? herringbone_random(HerringboneDistributionParams::for_size(r.n, r.seed))
                                       : herringbone_uniform_path(r.n, r.seed);
        HerringboneOracle oracle(std::move(inst));
        const auto t0 = std::chrono::steady_clock::now();
        const SolveOutcome out = run_solver(r.solver, oracle, oracle.domain(), false);
        const auto t1 = std::chrono::steady_clock::now();
        r.queries = out.queries;
        r.outcome_kind = out.is_fixed_point() ? "fixed_point" : "witness";
        if (config.timing) r.wallclock_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  const int threads = std::max(1, std::min<int>(config.threads > 0 ? config.threads : default_threads(),
                                                 static_cast<int>(rows.size())));
  std::vector<std::thread> pool;
  for (int k = 1; k < threads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (!errors[i].empty()) throw std::runtime_error(rows[i].instance_id + " (" + rows[i].solver + "): " + errors[i]);
  return rows;
}

std::string bench_csv(const std::vector<BenchRecord>& records) {
  std::ostringstream os;
  os << "# tarski_lab bench schema " << kBenchSchemaVersion << "\n";
  os << "instance_id,solver,N,d,queries,wallclock_ms,outcome_kind,seed\n";
  os << std::fixed << std::setprecision(3);
  for (const auto& r : records) {
    os << r.instance_id << ',' << r.solver << ',' << r.n << ',' << r.d << ',' << r.queries << ','
       << r.wallclock_ms << ',' << r.outcome_kind << ',' << r.seed << '\n';
  }
  return os.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Monotone fixed point laboratory", "tarski_lab"};
  app.require_subcommand(1, 1);

  const auto solver_check = CLI::IsMember(solver_names());

  SolveArgs solve;
  auto* sc = app.add_subcommand("solve", "Find a fixed point or a monotonicity witness");
  sc->add_option("--instance", solve.instance, "Map instance (JSON)")->required();
  sc->add_option("--solver", solve.solver, "dqy, vi, pls, binsearch, ppad, or brute")->check(solver_check);
  sc->add_option("--json", solve.json_out, "Write the result here instead of stdout");
  sc->add_flag("--paranoid", solve.paranoid, "Cross-check queries and verify the result");

  BenchArgs bench;
  auto* bc = app.add_subcommand("bench", "Query counts on random herringbones, as CSV");
  bc->add_option("--solvers", bench.solvers, "Solver list")->delimiter(',')->check(solver_check);
  bc->add_option("--n", bench.sizes, "Grid sizes")->delimiter(',')->check(CLI::PositiveNumber);
  bc->add_option("--trials", bench.trials, "Instances per size")->check(CLI::NonNegativeNumber);
  bc->add_option("--seed", bench.seed, "Base seed");
  auto* csv_opt = bc->add_option("--csv", bench.csv_out, "Write CSV here instead of stdout");
  auto* json_opt = bc->add_option("--json", bench.json_out, "Write the records as JSON instead");
  csv_opt->excludes(json_opt);
  bc->add_flag("--timing", bench.timing, "Fill the wallclock_ms column (output is then not reproducible)");

  DuelArgs duel_args;
  auto* dc = app.add_subcommand("duel", "Run a solver against the online adversary and audit it");
  dc->add_option("--solver", duel_args.solver, "dqy, vi, pls, or binsearch")->check(CLI::IsMember(duel_solvers()));
  dc->add_option("--n", duel_args.n, "Grid size")->check(CLI::Range(Coord{2}, Coord{1} << 20));
  dc->add_flag("--history", duel_args.history, "Include every answer");
  dc->add_option("--json", duel_args.json_out, "Write the report here instead of stdout");

  GenArgs gen;
  auto* gc = app.add_subcommand("gen", "Write a herringbone instance");
  gc->add_option("family", gen.family, "herringbone, uniform-herringbone, or sample")
      ->required()
      ->check(CLI::IsMember({"herringbone", "uniform-herringbone", "sample"}));
  gc->add_option("--n", gen.n, "Grid size")->check(CLI::PositiveNumber);
  gc->add_option("--seed", gen.seed, "Seed");
  gc->add_option("--json", gen.json_out, "Write the instance here instead of stdout");

  SsgArgs ssg;
  auto* ssc = app.add_subcommand("ssg", "Value of a simple stochastic game");
  ssc->add_option("--instance", ssg.instance, "SSG instance (JSON)")->required();
  ssc->add_option("--solver", ssg.solver, "Monotone solver on the grid: dqy, vi, or pls")
      ->check(CLI::IsMember({"dqy", "vi", "pls"}));
  ssc->add_option("--route", ssg.route, "tarski or brute")->check(CLI::IsMember({"tarski", "brute"}));
  ssc->add_option("--eps", ssg.eps, "Grid accuracy (default 1/(4 D^2))");
  ssc->add_option("--beta", ssg.beta, "Discount (default derived from eps)");
  ssc->add_option("--denominator-bound", ssg.denominator_bound, "Rounding bound D (default derived)");
  ssc->add_option("--json", ssg.json_out, "Write the result here instead of stdout");

  ShapleyArgs shapley;
  auto* shc = app.add_subcommand("shapley", "Values of a discounted simultaneous-move game");
  shc->add_option("--instance", shapley.instance, "Shapley instance (JSON)")->required();
  shc->add_option("--solver", shapley.solver, "Monotone solver for the tarski route: dqy, vi, or pls")
      ->check(CLI::IsMember({"dqy", "vi", "pls"}));
  shc->add_option("--route", shapley.route, "contraction or tarski")
      ->check(CLI::IsMember({"contraction", "tarski"}));
  shc->add_option("--eps", shapley.eps, "Accuracy in max norm");
  shc->add_option("--json", shapley.json_out, "Write the result here instead of stdout");

  CheckArgs check;
  auto* kc = app.add_subcommand("check", "Check monotonicity of a map or supermodularity of a game");
  kc->add_option("--instance", check.instance, "Map or game instance (JSON)")->required();
  kc->add_option("--budget", check.budget, "Tuples to test per player before sampling");
  kc->add_option("--seed", check.seed, "Sampling seed");
  kc->add_option("--json", check.json_out, "Write the report here instead of stdout");

  std::vector<std::string> reversed_args(args.rbegin(), args.rend());
  try {
    app.parse(reversed_args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kError;
  }

  try {
    if (*sc) return cmd_solve(solve, out);
    if (*bc) return cmd_bench(bench, out);
    if (*dc) return cmd_duel(duel_args, out);
    if (*gc) return cmd_gen(gen, out);
    if (*ssc) return cmd_ssg(ssg, out);
    if (*shc) return cmd_shapley(shapley, out);
    if (*kc) return cmd_check(check, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}

}  // namespace tarski::lab
