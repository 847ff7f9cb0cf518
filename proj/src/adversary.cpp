#include "tarski/adversary.hpp"

#include "tarski/solvers.hpp"

#include <algorithm>
#include <stdexcept>

namespace tarski {

std::string to_string(AdversaryDirection d) {
  switch (d) {
    case AdversaryDirection::NW: return "NW";
    case AdversaryDirection::SE: return "SE";
    case AdversaryDirection::N: return "N";
    case AdversaryDirection::S: return "S";
    case AdversaryDirection::E: return "E";
    case AdversaryDirection::W: return "W";
    case AdversaryDirection::FixedHere: return "fixed";
  }
  return "?";
}

std::string to_string(QueryClass c) {
  switch (c) {
    case QueryClass::Forced: return "forced";
    case QueryClass::Repeated: return "repeated";
    case QueryClass::NonDecisive: return "non_decisive";
    case QueryClass::Short: return "short";
    case QueryClass::Decisive: return "decisive";
  }
  return "?";
}

GridPoint direction_step(AdversaryDirection d) {
  switch (d) {
    case AdversaryDirection::NW: return make_point({-1, 1});
    case AdversaryDirection::SE: return make_point({1, -1});
    case AdversaryDirection::N: return make_point({0, 1});
    case AdversaryDirection::S: return make_point({0, -1});
    case AdversaryDirection::E: return make_point({1, 0});
    case AdversaryDirection::W: return make_point({-1, 0});
    case AdversaryDirection::FixedHere: return make_point({0, 0});
  }
  return make_point({0, 0});
}

// ---------------------------------------------------------------------------

Staircases::Staircases(Coord n)
    : n_(n),
      ul_low_(static_cast<std::size_t>(n + 2), n + 1),
      lr_high_(static_cast<std::size_t>(n + 2), 0) {}

bool Staircases::forbidden(const GridPoint& p) const {
  if (p[0] < 1 || p[0] > n_ || p[1] < 1 || p[1] > n_) return true;
  return in_upper_left(p) || in_lower_right(p);
}

void Staircases::add_upper_left_block(const GridPoint& q) {
  for (Coord x = 1; x <= q[0]; ++x) {
    auto& v = ul_low_[static_cast<std::size_t>(x)];
    v = std::min(v, q[1]);
  }
}

void Staircases::add_lower_right_block(const GridPoint& q) {
  for (Coord x = q[0]; x <= n_; ++x) {
    auto& v = lr_high_[static_cast<std::size_t>(x)];
    v = std::max(v, q[1]);
  }
}

BigInt path_count(const GridBox& domain, const Staircases& walls) {
  const Coord x0 = domain.low()[0];
  const Coord y0 = domain.low()[1];
  const auto h = static_cast<std::size_t>(domain.side(1));
  std::vector<BigInt> col(h, BigInt(0));
  GridPoint p(2);
  for (Coord x = x0; x <= domain.high()[0]; ++x) {
    p[0] = x;
    for (std::size_t j = 0; j < h; ++j) {
      p[1] = y0 + static_cast<Coord>(j);
      if (walls.forbidden(p)) {
        col[j] = 0;
        continue;
      }
      if (x == x0 && j == 0) {
        col[j] = 1;
      } else if (j > 0) {
        col[j] += col[j - 1];
      }
    }
  }
  return col[h - 1];
}

// ---------------------------------------------------------------------------

struct AdversaryState::Located {
  enum Kind { Off, Committed, Inside } kind;
  AdversaryDirection forced = AdversaryDirection::NW;  // for Off
  std::size_t index = 0;  // chain index (Committed) or segment index (Inside)
};

namespace {

Coord sum_of(const GridPoint& p) { return p[0] + p[1]; }

}  // namespace

AdversaryState::AdversaryState(Coord n) : n_(n), walls_(n) {
  if (n < 1) throw std::invalid_argument("adversary: N must be positive");
  w_ = 0;
  while ((w_ + 1) * (w_ + 1) <= n) ++w_;
  active_lo_ = make_point({1, 1});
  active_hi_ = make_point({n, n});
  chain_ = {active_lo_};
  if (n > 1) chain_.push_back(active_hi_);
}

std::size_t AdversaryState::chain_index_by_sum(Coord s) const {
  // Largest index with sum <= s.
  auto it = std::upper_bound(chain_.begin(), chain_.end(), s,
                             [](Coord v, const GridPoint& c) { return v < sum_of(c); });
  return static_cast<std::size_t>(it - chain_.begin()) - 1;
}

AdversaryState::Located AdversaryState::locate(const GridPoint& q) const {
  const std::size_t i = chain_index_by_sum(sum_of(q));
  const GridPoint& c = chain_[i];
  Located loc;
  if (sum_of(c) == sum_of(q)) {
    if (c == q) {
      loc.kind = Located::Committed;
      loc.index = i;
    } else {
      loc.kind = Located::Off;
      loc.forced = q[0] < c[0] ? AdversaryDirection::SE : AdversaryDirection::NW;
    }
    return loc;
  }
  const GridBox box(c, chain_[i + 1]);
  if (!box.contains(q)) {
    loc.kind = Located::Off;
    loc.forced = (q[0] < c[0] || q[1] > chain_[i + 1][1]) ? AdversaryDirection::SE : AdversaryDirection::NW;
    return loc;
  }
  if (walls_.in_upper_left(q)) {
    loc.kind = Located::Off;
    loc.forced = AdversaryDirection::SE;
    return loc;
  }
  if (walls_.in_lower_right(q)) {
    loc.kind = Located::Off;
    loc.forced = AdversaryDirection::NW;
    return loc;
  }
  loc.kind = Located::Inside;
  loc.index = i;
  return loc;
}

void AdversaryState::commit(const GridPoint& p) {
  const std::size_t i = chain_index_by_sum(sum_of(p));
  if (sum_of(chain_[i]) == sum_of(p)) {
    if (chain_[i] != p) throw InternalError("adversary: conflicting commitment at " + to_string(p));
    return;
  }
  chain_.insert(chain_.begin() + static_cast<std::ptrdiff_t>(i + 1), p);
}

bool AdversaryState::free_in(const GridBox& box, const GridPoint& p) const {
  return box.contains(p) && !walls_.forbidden(p);
}

BigInt AdversaryState::count_in(const GridBox& box) const { return path_count(box, walls_); }

// Chooses the principal step out of q toward the end of target_box (forward)
// or toward its start (backward), by the larger remaining path count; ties
// go to E (forward) or W (backward).
AdversaryDirection AdversaryState::pick(const GridPoint& q, const GridBox& target_box, bool forward,
                                        BigInt& count) {
  const AdversaryDirection first = forward ? AdversaryDirection::E : AdversaryDirection::W;
  const AdversaryDirection second = forward ? AdversaryDirection::N : AdversaryDirection::S;
  BigInt best = -1;
  AdversaryDirection chosen = first;
  for (AdversaryDirection d : {first, second}) {
    const GridPoint p = q + direction_step(d);
    BigInt c = 0;
    if (free_in(target_box, p)) {
      c = forward ? count_in(GridBox(p, target_box.high())) : count_in(GridBox(target_box.low(), p));
    }
    if (c > best) {
      best = c;
      chosen = d;
    }
  }
  if (best <= 0) throw InternalError("adversary: no feasible continuation at " + to_string(q));
  count = best;
  return chosen;
}

AdversaryAnswer AdversaryState::decisive(const GridPoint& q, const Located& where, BigInt& after) {
  const bool single = active_lo_ == active_hi_;
  std::size_t seg;
  if (where.kind == Located::Committed) {
    if (single && q == active_lo_) {
      finished_ = true;
      after = 1;
      return {AdversaryDirection::FixedHere, QueryClass::Decisive, q};
    }
    // A committed point answers within the segment on the fixed point's side.
    seg = sum_of(q) < sum_of(active_hi_) ? where.index : where.index - 1;
    if (!single && q == active_hi_) seg = where.index - 1;
  } else {
    seg = where.index;
  }
  const GridBox box(chain_[seg], chain_[seg + 1]);
  const bool is_active = !single && box.low() == active_lo_ && box.high() == active_hi_;

  if (!is_active) {
    const bool forward = sum_of(box.high()) <= sum_of(active_lo_);
    BigInt unused;
    const AdversaryDirection d = pick(q, box, forward, unused);
    const GridPoint next = q + direction_step(d);
    commit(q);
    commit(next);
    return {d, QueryClass::Decisive, next};
  }

  const BigInt lower = count_in(GridBox(active_lo_, q));
  const BigInt upper = count_in(GridBox(q, active_hi_));
  if (lower >= upper) {
    if (q == active_lo_) {
      commit(q);
      active_hi_ = q;
      finished_ = true;
      after = 1;
      return {AdversaryDirection::FixedHere, QueryClass::Decisive, q};
    }
    const AdversaryDirection d = pick(q, GridBox(active_lo_, q), false, after);
    const GridPoint next = q + direction_step(d);
    commit(q);
    commit(next);
    active_hi_ = next;
    return {d, QueryClass::Decisive, next};
  }
  if (q == active_hi_) {
    commit(q);
    active_lo_ = q;
    finished_ = true;
    after = 1;
    return {AdversaryDirection::FixedHere, QueryClass::Decisive, q};
  }
  const AdversaryDirection d = pick(q, GridBox(q, active_hi_), true, after);
  const GridPoint next = q + direction_step(d);
  commit(q);
  commit(next);
  active_lo_ = next;
  return {d, QueryClass::Decisive, next};
}

AdversaryAnswer AdversaryState::answer(const GridPoint& q) {
  if (q.size() != 2 || q[0] < 1 || q[0] > n_ || q[1] < 1 || q[1] > n_) {
    throw DomainError("adversary: query " + to_string(q) + " outside the grid");
  }
  const bool single = active_lo_ == active_hi_;
  const BigInt before = single ? BigInt(1) : count_in(current_domain());
  AnswerRecord rec;
  rec.query = q;
  rec.count_before = before;
  rec.count_after = before;

  const auto key = std::make_pair(q[0], q[1]);
  if (auto it = cache_.find(key); it != cache_.end()) {
    rec.answer = {it->second.direction, QueryClass::Repeated, it->second.value};
    history_.push_back(rec);
    return rec.answer;
  }

  const Located where = locate(q);
  AdversaryAnswer ans{AdversaryDirection::NW, QueryClass::Forced, q};
  if (where.kind == Located::Off) {
    ans = {where.forced, QueryClass::Forced, q + direction_step(where.forced)};
  } else {
    bool is_decisive = where.kind == Located::Committed;
    const GridBox box = is_decisive ? GridBox(q, q) : GridBox(chain_[where.index], chain_[where.index + 1]);
    rec.in_active = is_decisive ? (q == active_lo_ || q == active_hi_)
                                : (!single && box.low() == active_lo_ && box.high() == active_hi_);

    BigInt count_nw = 0;
    BigInt count_se = 0;
    if (!is_decisive) {
      const GridPoint nw = q + direction_step(AdversaryDirection::NW);
      const GridPoint se = q + direction_step(AdversaryDirection::SE);
      if (free_in(box, nw)) {
        Staircases trial = walls_;
        trial.add_lower_right_block(q);
        count_nw = path_count(box, trial);
      }
      if (free_in(box, se)) {
        Staircases trial = walls_;
        trial.add_upper_left_block(q);
        count_se = path_count(box, trial);
      }
      is_decisive = count_nw == 0 && count_se == 0;
    }

    if (is_decisive) {
      BigInt after = before;
      ans = decisive(q, where, after);
      if (rec.in_active) rec.count_after = after;
    } else {
      auto reach = [&](AdversaryDirection d) {
        Coord k = 1;
        while (free_in(box, q + k * direction_step(d))) ++k;
        return k;
      };
      const Coord d_nw = reach(AdversaryDirection::NW);
      const Coord d_se = reach(AdversaryDirection::SE);
      const bool is_short = 2 * std::min(d_nw, d_se) <= w_;
      bool choose_nw = is_short ? d_nw >= d_se : count_nw >= count_se;
      if (choose_nw && count_nw == 0) choose_nw = false;
      if (!choose_nw && count_se == 0) choose_nw = true;
      if (choose_nw) {
        walls_.add_lower_right_block(q);
      } else {
        walls_.add_upper_left_block(q);
      }
      const AdversaryDirection d = choose_nw ? AdversaryDirection::NW : AdversaryDirection::SE;
      ans = {d, is_short ? QueryClass::Short : QueryClass::NonDecisive, q + direction_step(d)};
      if (rec.in_active) rec.count_after = choose_nw ? count_nw : count_se;
    }
  }
  cache_.emplace(key, ans);
  rec.answer = ans;
  history_.push_back(rec);
  return ans;
}

AdversaryOracle::AdversaryOracle(Coord n) : MonotoneOracle(GridBox::cube(n, 2)), state_(n) {}

// ---------------------------------------------------------------------------

HerringboneInstance extract_consistent_instance(const AdversaryState& state) {
  const auto& chain = state.committed();
  const auto& walls = state.walls();
  HerringboneInstance inst;
  inst.n = state.n();
  inst.path.push_back(chain.front());
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    const GridBox box(chain[i], chain[i + 1]);
    // reach[p]: a feasible path leads from p to the segment end.
    const auto w = static_cast<std::size_t>(box.side(0));
    const auto h = static_cast<std::size_t>(box.side(1));
    std::vector<char> reach(w * h, 0);
    auto at = [&](Coord x, Coord y) -> char& {
      return reach[static_cast<std::size_t>(x - box.low()[0]) * h + static_cast<std::size_t>(y - box.low()[1])];
    };
    for (Coord x = box.high()[0]; x >= box.low()[0]; --x) {
      for (Coord y = box.high()[1]; y >= box.low()[1]; --y) {
        if (walls.forbidden(make_point({x, y}))) continue;
        if (x == box.high()[0] && y == box.high()[1]) {
          at(x, y) = 1;
        } else {
          at(x, y) = (x < box.high()[0] && at(x + 1, y)) || (y < box.high()[1] && at(x, y + 1));
        }
      }
    }
    if (!at(box.low()[0], box.low()[1])) {
      throw InternalError("adversary: no feasible path between " + to_string(box.low()) + " and " +
                          to_string(box.high()));
    }
    GridPoint p = box.low();
    while (p != box.high()) {
      if (p[0] < box.high()[0] && at(p[0] + 1, p[1])) {
        ++p[0];
      } else {
        ++p[1];
      }
      inst.path.push_back(p);
    }
  }
  // The fixed point sits in the current domain; any unqueried point of it
  // that the path crosses will do.
  const GridBox dom = state.current_domain();
  const auto lo = static_cast<std::size_t>(sum_of(dom.low()) - 2);
  const auto hi = static_cast<std::size_t>(sum_of(dom.high()) - 2);
  inst.fixed_index = state.finished() ? lo : lo + (hi - lo) / 2;
  validate(inst);
  return inst;
}

bool potential_holds(const AnswerRecord& r, Coord n, Coord w) {
  const BigInt& before = r.count_before;
  const BigInt& after = r.count_after;
  if (!r.in_active) return before == after;
  switch (r.answer.classification) {
    case QueryClass::Forced:
    case QueryClass::Repeated:
      return before == after;
    case QueryClass::Decisive:
      return 4 * after * after >= before;
    case QueryClass::NonDecisive:
      return 4 * after >= before;
    case QueryClass::Short: {
      BigInt bound = after;
      for (Coord i = 0; i < w; ++i) bound *= n;
      return bound >= before;
    }
  }
  return false;
}

const std::vector<std::string>& duel_solvers() {
  static const std::vector<std::string> names{"dqy", "vi", "pls", "binsearch"};
  return names;
}

DuelReport duel(std::string_view solver, Coord n) {
  AdversaryOracle oracle(n);
  oracle.set_recording(true);
  SolveOutcome out;
  if (solver == "dqy") {
    out = dqy_solve(oracle, oracle.domain());
  } else if (solver == "vi") {
    out = value_iteration(oracle, oracle.domain());
  } else if (solver == "pls") {
    out = local_search_pls(oracle, oracle.domain());
  } else if (solver == "binsearch") {
    ReversedOracle reversed(oracle);
    out = dqy_solve(reversed, reversed.domain());
    if (out.is_fixed_point()) out.result = ReversedOracle::reverse(out.point());
  } else {
    throw std::invalid_argument("duel: unknown solver '" + std::string(solver) + "'");
  }

  DuelReport report;
  report.solver = std::string(solver);
  report.n = n;
  report.queries = oracle.queries();
  report.history = oracle.state().history();
  report.extracted = extract_consistent_instance(oracle.state());
  if (out.is_fixed_point()) report.claimed = out.point();

  auto replay = herringbone_from_path(report.extracted);
  for (const auto& r : oracle.transcript()) {
    if (replay->query(r.query) != r.answer) ++report.replay_mismatches;
  }
  report.claim_matches = report.claimed && *report.claimed == report.extracted.fixed_point();
  for (const auto& r : report.history) {
    if (!potential_holds(r, n, oracle.state().width())) ++report.potential_failures;
  }
  return report;
}

}  // namespace tarski
