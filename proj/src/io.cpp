#include "tarski/io.hpp"

#include <fstream>
#include <sstream>

namespace tarski::io {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string type_of(const json& j) {
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string())
    throw FormatError("instance has no \"type\" string");
  return j.at("type").get<std::string>();
}

RationalVector rational_vector(const json& j) {
  if (!j.is_array()) throw FormatError("expected an array of rationals");
  RationalVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = rational_from_json(j[i]);
  return v;
}

json vector_json(const RationalVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v[i]));
  return out;
}

RationalMatrix rational_matrix(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty())
    throw FormatError("expected a non-empty matrix");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  RationalMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) throw FormatError("ragged matrix");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = rational_from_json(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

json matrix_json(const RationalMatrix& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

const char* kind_name(SsgKind k) {
  switch (k) {
    case SsgKind::Random: return "random";
    case SsgKind::Max: return "max";
    case SsgKind::Min: return "min";
    case SsgKind::ZeroSink: return "zero_sink";
    case SsgKind::OneSink: return "one_sink";
  }
  return "?";
}

SsgKind kind_from(const std::string& s) {
  if (s == "random") return SsgKind::Random;
  if (s == "max") return SsgKind::Max;
  if (s == "min") return SsgKind::Min;
  if (s == "zero_sink") return SsgKind::ZeroSink;
  if (s == "one_sink") return SsgKind::OneSink;
  throw FormatError("unknown SSG vertex kind '" + s + "'");
}

}  // namespace

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write '" + path + "'");
  out << text;
  if (!out) throw FormatError("write to '" + path + "' failed");
}

json to_json(const GridPoint& p) { return json(to_vector(p)); }

GridPoint point_from_json(const json& j) {
  if (!j.is_array()) throw FormatError("expected a point array");
  std::vector<Coord> c;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw FormatError("point coordinates must be integers");
    c.push_back(v.get<Coord>());
  }
  return make_point(c);
}

json to_json(const GridBox& b) { return {{"low", to_json(b.low())}, {"high", to_json(b.high())}}; }

GridBox box_from_json(const json& j) {
  if (j.is_object() && j.contains("sides")) return GridBox::from_sides(j.at("sides").get<std::vector<Coord>>());
  return GridBox(point_from_json(field(j, "low")), point_from_json(field(j, "high")));
}

json to_json(const Rational& r) { return tarski::to_string(r); }

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::exception&) {
      throw FormatError("bad rational '" + j.get<std::string>() + "'");
    }
  }
  throw FormatError("rationals must be integers or strings such as \"1/3\"");
}

// ---------------------------------------------------------------------------

json to_json(const HerringboneInstance& inst) {
  json path = json::array();
  for (const auto& p : inst.path) path.push_back(to_json(p));
  json out{{"type", "herringbone"}, {"n", inst.n}, {"path", path}, {"fixed", to_json(inst.fixed_point())}};
  if (inst.seed) out["seed"] = *inst.seed;
  return out;
}

HerringboneInstance herringbone_from_json(const json& j) {
  std::vector<GridPoint> path;
  for (const auto& p : field(j, "path")) path.push_back(point_from_json(p));
  try {
    auto inst = make_herringbone(field(j, "n").get<Coord>(), std::move(path), point_from_json(field(j, "fixed")));
    if (j.contains("seed")) inst.seed = j.at("seed").get<std::uint64_t>();
    return inst;
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("invalid herringbone: ") + e.what());
  }
}

json table_to_json(const GridBox& box, const std::vector<GridPoint>& values) {
  json vals = json::array();
  for (const auto& v : values) vals.push_back(to_json(v));
  return {{"type", "table"}, {"box", to_json(box)}, {"values", vals}};
}

json to_json(const CnfFormula& cnf) {
  return {{"type", "cnf"}, {"num_vars", cnf.num_vars}, {"clauses", cnf.clauses}};
}

CnfFormula cnf_from_json(const json& j) {
  CnfFormula cnf;
  cnf.num_vars = field(j, "num_vars").get<int>();
  cnf.clauses = field(j, "clauses").get<std::vector<std::vector<int>>>();
  if (cnf.num_vars < 0 || cnf.num_vars > 30) throw FormatError("num_vars must lie in [0, 30]");
  for (const auto& c : cnf.clauses)
    for (int lit : c)
      if (lit == 0 || std::abs(lit) > cnf.num_vars) throw FormatError("literal out of range");
  return cnf;
}

MapInstance map_from_json(const json& j) {
  MapInstance out;
  out.type = type_of(j);
  try {
    if (out.type == "table") {
      const GridBox box = box_from_json(field(j, "box"));
      std::vector<GridPoint> values;
      for (const auto& v : field(j, "values")) values.push_back(point_from_json(v));
      out.oracle = std::make_unique<TableOracle>(box, std::move(values));
    } else if (out.type == "herringbone") {
      out.oracle = herringbone_from_path(herringbone_from_json(j));
    } else if (out.type == "cnf") {
      out.oracle = sat_lfp_instance(cnf_from_json(j));
    } else {
      throw FormatError("'" + out.type + "' is not a map instance type");
    }
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed ") + out.type + " instance: " + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("malformed ") + out.type + " instance: " + e.what());
  }
  return out;
}

// ---------------------------------------------------------------------------

json to_json(const SsgInstance& inst) {
  json verts = json::array();
  for (const auto& v : inst.vertices) {
    json edges = json::array();
    for (const auto& e : v.edges) {
      json je{{"to", e.to}};
      if (v.kind == SsgKind::Random) je["p"] = to_json(e.p);
      edges.push_back(std::move(je));
    }
    verts.push_back({{"kind", kind_name(v.kind)}, {"edges", edges}});
  }
  return {{"type", "ssg"}, {"start", inst.start}, {"vertices", verts}};
}

SsgInstance ssg_from_json(const json& j) {
  if (type_of(j) != "ssg") throw FormatError("expected an ssg instance");
  SsgInstance inst;
  try {
    inst.start = j.value("start", 0);
    for (const auto& jv : field(j, "vertices")) {
      SsgVertex v;
      v.kind = kind_from(field(jv, "kind").get<std::string>());
      if (jv.contains("edges")) {
        for (const auto& je : jv.at("edges")) {
          SsgEdge e;
          e.to = field(je, "to").get<int>();
          e.p = je.contains("p") ? rational_from_json(je.at("p")) : Rational(0);
          v.edges.push_back(std::move(e));
        }
      }
      inst.vertices.push_back(std::move(v));
    }
    inst.validate();
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed ssg instance: ") + e.what());
  } catch (const MalformedInputError& e) {
    throw FormatError(std::string("invalid ssg instance: ") + e.what());
  }
  return inst;
}

json to_json(const ShapleyInstance& inst) {
  json states = json::array();
  for (const auto& s : inst.states) {
    json trans = json::array();
    for (const auto& row : s.transition) {
      json jr = json::array();
      for (const auto& p : row) jr.push_back(vector_json(p));
      trans.push_back(std::move(jr));
    }
    states.push_back({{"reward", matrix_json(s.reward)}, {"transition", trans}});
  }
  return {{"type", "shapley"}, {"start", inst.start}, {"states", states}};
}

ShapleyInstance shapley_from_json(const json& j) {
  if (type_of(j) != "shapley") throw FormatError("expected a shapley instance");
  ShapleyInstance inst;
  try {
    inst.start = j.value("start", 0);
    for (const auto& js : field(j, "states")) {
      ShapleyState s;
      s.reward = rational_matrix(field(js, "reward"));
      for (const auto& jr : field(js, "transition")) {
        std::vector<RationalVector> row;
        for (const auto& jp : jr) row.push_back(rational_vector(jp));
        s.transition.push_back(std::move(row));
      }
      inst.states.push_back(std::move(s));
    }
    inst.validate();
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed shapley instance: ") + e.what());
  } catch (const MalformedInputError& e) {
    throw FormatError(std::string("invalid shapley instance: ") + e.what());
  }
  return inst;
}

// ---------------------------------------------------------------------------

GameInstance game_from_json(const json& j) {
  if (type_of(j) != "game") throw FormatError("expected a game instance");
  GameInstance out;
  try {
    const std::string builtin = j.value("builtin", "");
    if (builtin == "diamond_search") {
      std::vector<Rational> alpha;
      for (const auto& a : field(j, "alpha")) alpha.push_back(rational_from_json(a));
      std::vector<std::vector<Rational>> cost;
      for (const auto& row : field(j, "cost")) {
        std::vector<Rational> c;
        for (const auto& v : row) c.push_back(rational_from_json(v));
        cost.push_back(std::move(c));
      }
      out.game = std::make_unique<SupermodularGame>(diamond_search(alpha, cost));
    } else if (builtin == "from_map") {
      out.source = map_from_json(field(j, "map")).oracle;
      out.game = std::make_unique<SupermodularGame>(game_from_monotone(*out.source));
    } else if (builtin.empty()) {
      std::vector<GridBox> boxes;
      for (const auto& b : field(j, "players")) boxes.push_back(box_from_json(b));
      const auto& utils = field(j, "utilities");
      if (utils.size() != boxes.size()) throw FormatError("need one utility table per player");
      std::vector<Utility> fns;
      std::uint64_t profiles = 1;
      for (const auto& b : boxes) profiles *= b.point_count();
      for (const auto& table : utils) {
        if (table.size() != profiles) throw FormatError("utility table size does not match the profile count");
        auto values = std::make_shared<std::vector<Rational>>();
        for (const auto& v : table) values->push_back(rational_from_json(v));
        // Tables are indexed player-major: player 0's strategy is the
        // slowest digit, matching the row-major order of the profile box.
        fns.push_back([values, boxes](const GridPoint& p) {
          std::uint64_t idx = 0;
          int at = 0;
          for (const auto& b : boxes) {
            GridPoint s = p.segment(at, b.dims());
            idx = idx * b.point_count() + b.index_of(s);
            at += b.dims();
          }
          return (*values)[idx];
        });
      }
      out.game = std::make_unique<SupermodularGame>(std::move(boxes), std::move(fns));
    } else {
      throw FormatError("unknown builtin game '" + builtin + "'");
    }
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed game instance: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("invalid game instance: ") + e.what());
  }
  return out;
}

// ---------------------------------------------------------------------------

json to_json(const MonotonicityWitness& w) {
  return {{"x", to_json(w.x)}, {"y", to_json(w.y)}, {"fx", to_json(w.fx)}, {"fy", to_json(w.fy)}};
}

json to_json(const SolveOutcome& out) {
  json j;
  if (out.is_fixed_point()) {
    j["kind"] = "fixed_point";
    j["point"] = to_json(out.point());
  } else {
    j["kind"] = "witness";
    j["witness"] = to_json(out.witness());
  }
  j["queries"] = out.queries;
  return j;
}

json to_json(const PropertyViolation& v) {
  json j = std::visit(
      [](const auto& x) -> json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, violation::Supermodularity>) {
          return {{"kind", "supermodularity"}, {"player", x.player}, {"x", to_json(x.x)}, {"y", to_json(x.y)}};
        } else if constexpr (std::is_same_v<T, violation::IncreasingDifferences>) {
          return {{"kind", "increasing_differences"},
                  {"player", x.player},
                  {"low_low", to_json(x.low_low)},
                  {"high_low", to_json(x.high_low)},
                  {"low_high", to_json(x.low_high)},
                  {"high_high", to_json(x.high_high)}};
        } else {
          return {{"kind", "sup_not_in_argmax"}, {"player", x.player}, {"profile", to_json(x.profile)}};
        }
      },
      v);
  j["description"] = describe(v);
  return j;
}

json to_json(const DuelReport& report, bool with_history) {
  json j{{"solver", report.solver},
         {"n", report.n},
         {"queries", report.queries},
         {"extracted", to_json(report.extracted)},
         {"replay_mismatches", report.replay_mismatches},
         {"claim_matches", report.claim_matches},
         {"potential_failures", report.potential_failures},
         {"consistency", report.consistent() ? "ok" : "inconsistent"}};
  j["claimed"] = report.claimed ? to_json(*report.claimed) : json(nullptr);
  if (with_history) {
    json h = json::array();
    for (const auto& r : report.history) {
      h.push_back({{"query", to_json(r.query)},
                   {"direction", to_string(r.answer.direction)},
                   {"class", to_string(r.answer.classification)},
                   {"answer", to_json(r.answer.value)},
                   {"count_before", r.count_before.str()},
                   {"count_after", r.count_after.str()}});
    }
    j["history"] = std::move(h);
  }
  return j;
}

}  // namespace tarski::io
