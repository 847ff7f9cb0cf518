#ifndef TARSKI_IO_HPP
#define TARSKI_IO_HPP

#include "tarski/adversary.hpp"
#include "tarski/instances.hpp"
#include "tarski/lattice.hpp"
#include "tarski/oracle.hpp"
#include "tarski/rational.hpp"
#include "tarski/stochastic.hpp"
#include "tarski/supermodular.hpp"

#include <nlohmann/json.hpp>

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tarski::io {

using nlohmann::json;

/// A file could not be read or does not describe a valid instance.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

json to_json(const GridPoint& p);
GridPoint point_from_json(const json& j);

/// {"low": [...], "high": [...]}; a bare "sides" array means [1, side_i].
json to_json(const GridBox& b);
GridBox box_from_json(const json& j);

/// Rationals are written as "p/q" strings. Integers and decimal strings are
/// accepted on input; floating-point JSON numbers are rejected.
json to_json(const Rational& r);
Rational rational_from_json(const json& j);

// ---------------------------------------------------------------------------
// Monotone map instances. The "type" field selects the format:
//   table        {"box": ..., "values": [[...], ...]} row-major, last coordinate fastest
//   herringbone  {"n": N, "path": [[x, y], ...], "fixed": [x, y], "seed": S?}
//   cnf          {"num_vars": V, "clauses": [[1, -2], ...]}

struct MapInstance {
  std::string type;
  std::unique_ptr<MonotoneOracle> oracle;
};

MapInstance map_from_json(const json& j);

json to_json(const HerringboneInstance& inst);
HerringboneInstance herringbone_from_json(const json& j);
json table_to_json(const GridBox& box, const std::vector<GridPoint>& values);
json to_json(const CnfFormula& cnf);
CnfFormula cnf_from_json(const json& j);

// ---------------------------------------------------------------------------
// Stochastic games

/// {"type": "ssg", "start": s, "vertices": [{"kind": "max", "edges": [{"to": 1, "p": "1/2"}]}]}
/// with kinds random, max, min, zero_sink, one_sink; "p" only on random vertices.
json to_json(const SsgInstance& inst);
SsgInstance ssg_from_json(const json& j);

/// {"type": "shapley", "start": s, "states": [{"reward": [[...]], "transition": [[[...]]]}]}
/// where transition[j][k] lists the move probability to every state.
json to_json(const ShapleyInstance& inst);
ShapleyInstance shapley_from_json(const json& j);

// ---------------------------------------------------------------------------
// Games

/// {"type": "game", "players": [box, ...], "utilities": [[u over profiles], ...]},
/// or {"type": "game", "builtin": "diamond_search", "alpha": [...], "cost": [[...]]},
/// or {"type": "game", "builtin": "from_map", "map": <map instance>}.
struct GameInstance {
  std::unique_ptr<MonotoneOracle> source;  ///< kept alive for from_map games
  std::unique_ptr<SupermodularGame> game;
};

GameInstance game_from_json(const json& j);

// ---------------------------------------------------------------------------
// Results

json to_json(const SolveOutcome& out);
json to_json(const MonotonicityWitness& w);
json to_json(const PropertyViolation& v);
json to_json(const DuelReport& report, bool with_history);

}  // namespace tarski::io

#endif  // TARSKI_IO_HPP
