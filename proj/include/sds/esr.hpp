#pragma once

// Egalitarian simultaneous reservation (ESR), simulated event by event in exact
// arithmetic.
//
// Every distinct equivalence class E is a tower whose ceiling l(E) is a lower bound
// on p(E). Agents climb at unit speed, starting on the tower of their top class. An
// agent at the ceiling of an unfrozen tower pushes it up at unit speed; several
// pushers do not push faster. A pushed tower freezes once its bound cannot rise
// further while {p >= 0, sum p = 1, p(E) >= l(E) for all E} stays feasible. Pushers of
// a frozen tower drop to height 0 on the tower of their next class. Agents climbing a
// frozen tower bounce off when they reach its ceiling. The run ends when every agent
// has bounced off its last class, and a point of the final bound system is returned.

#include <sds/lp.hpp>
#include <sds/prefs.hpp>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sds {

struct Tower {
  AltSet members;
  Rational ceiling = 0;
  bool frozen = false;
};

struct ClimberState {
  AgentId agent;
  std::size_t tower_index = 0;  // position in the agent's class sequence
  Rational height = 0;
  bool pushing = false;
  bool finished = false;
};

enum class EsrEventKind { CeilingHit, Freeze, TowerSwitch, Terminate };

inline std::string to_string(EsrEventKind k) {
  switch (k) {
    case EsrEventKind::CeilingHit: return "ceiling-hit";
    case EsrEventKind::Freeze: return "freeze";
    case EsrEventKind::TowerSwitch: return "tower-switch";
    case EsrEventKind::Terminate: return "terminate";
  }
  return "?";
}

struct EsrEvent {
  Rational time;
  EsrEventKind kind;
  std::optional<AgentId> agent;
  std::optional<AltSet> tower;       // tower hit, frozen, or left
  std::optional<AltSet> next_tower;  // TowerSwitch only; empty when the agent is done
  Rational value = 0;                // ceiling at the event
};

struct EsrTrace {
  std::vector<EsrEvent> events;
};

struct EsrResult {
  Lottery lottery;
  EsrTrace trace;
  std::vector<Tower> towers;  // final (all frozen)
};

namespace detail {

// Variables: p_0..p_{m-1}, then delta when `rising` is non-null.
inline lp::LinearProgram bound_system(std::size_t m, const std::vector<Tower>& towers,
                                      const std::vector<bool>* rising) {
  lp::LinearProgram prog;
  for (std::size_t a = 0; a < m; ++a) prog.add_variable("p" + std::to_string(a));
  std::optional<std::size_t> delta;
  if (rising) delta = prog.add_variable("delta");

  lp::LinearExpr total;
  for (std::size_t a = 0; a < m; ++a) total.emplace_back(a, Rational(1));
  prog.add_constraint(std::move(total), lp::Relation::Equal, Rational(1));
  for (std::size_t k = 0; k < towers.size(); ++k) {
    lp::LinearExpr lhs;
    towers[k].members.for_each([&](std::size_t a) { lhs.emplace_back(a, Rational(1)); });
    if (delta && (*rising)[k]) lhs.emplace_back(*delta, Rational(-1));
    prog.add_constraint(std::move(lhs), lp::Relation::GreaterEqual, towers[k].ceiling);
  }
  if (delta) prog.set_objective({{*delta, Rational(1)}});
  return prog;
}

// Largest common rise of the towers flagged in `rising`.
inline Rational max_rise(std::size_t m, const std::vector<Tower>& towers, const std::vector<bool>& rising) {
  auto out = lp::solve(bound_system(m, towers, &rising));
  if (out.status != lp::LpStatus::Optimal) throw std::logic_error("ESR bound system lost feasibility");
  return out.value;
}

}  // namespace detail

inline EsrResult esr(const Profile& profile) {
  const auto& alts = profile.alternatives();
  const std::size_t m = alts.size();

  std::vector<Tower> towers;
  std::map<AltSet, std::size_t> tower_of;
  std::vector<std::vector<std::size_t>> sequence;  // per agent: tower index per class
  std::vector<ClimberState> climbers;
  for (const auto& [agent, order] : profile.orders()) {
    std::vector<std::size_t> seq;
    for (AltSet c : order.classes()) {
      auto [it, inserted] = tower_of.emplace(c, towers.size());
      if (inserted) towers.push_back({c, 0, false});
      seq.push_back(it->second);
    }
    sequence.push_back(std::move(seq));
    climbers.push_back({agent});
  }

  EsrTrace trace;
  Rational now = 0;
  auto tower_at = [&](std::size_t i) -> Tower& { return towers[sequence[i][climbers[i].tower_index]]; };

  const std::size_t max_steps = 64 * (towers.size() + 1) * (climbers.size() + 1);
  for (std::size_t step = 0;; ++step) {
    if (step > max_steps) throw std::logic_error("ESR simulation did not terminate");

    // Resolve everything that happens instantaneously at `now`.
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t i = 0; i < climbers.size(); ++i) {
        auto& c = climbers[i];
        if (c.finished) continue;
        Tower& t = tower_at(i);
        if (c.height != t.ceiling) continue;
        if (t.frozen) {
          if (!c.pushing) trace.events.push_back({now, EsrEventKind::CeilingHit, c.agent, t.members, {}, t.ceiling});
          AltSet left = t.members;
          c.pushing = false;
          c.height = 0;
          if (++c.tower_index == sequence[i].size()) {
            c.finished = true;
            trace.events.push_back({now, EsrEventKind::TowerSwitch, c.agent, left, AltSet{}, 0});
          } else {
            trace.events.push_back({now, EsrEventKind::TowerSwitch, c.agent, left, tower_at(i).members, 0});
          }
          changed = true;
        } else if (!c.pushing) {
          c.pushing = true;
          trace.events.push_back({now, EsrEventKind::CeilingHit, c.agent, t.members, {}, t.ceiling});
        }
      }
    }

    bool all_done = true;
    std::vector<bool> rising(towers.size(), false);
    bool any_rising = false;
    for (std::size_t i = 0; i < climbers.size(); ++i) {
      if (climbers[i].finished) continue;
      all_done = false;
      if (climbers[i].pushing) {
        rising[sequence[i][climbers[i].tower_index]] = true;
        any_rising = true;
      }
    }
    if (all_done) break;

    std::optional<Rational> rise;
    if (any_rising) rise = detail::max_rise(m, towers, rising);
    std::optional<Rational> reach;
    for (std::size_t i = 0; i < climbers.size(); ++i) {
      const auto& c = climbers[i];
      std::size_t k = sequence[i][c.tower_index];
      if (c.finished || c.pushing || rising[k]) continue;  // can never catch a rising ceiling
      Rational gap = towers[k].ceiling - c.height;
      if (!reach || gap < *reach) reach = gap;
    }
    if (!rise && !reach) throw std::logic_error("ESR simulation stalled");

    Rational dt = rise ? *rise : *reach;
    if (reach && *reach < dt) dt = *reach;
    for (std::size_t k = 0; k < towers.size(); ++k)
      if (rising[k]) towers[k].ceiling += dt;
    for (auto& c : climbers)
      if (!c.finished) c.height += dt;
    now += dt;

    if (rise && dt == *rise) {
      // A rising tower freezes iff its own bound cannot rise any further.
      std::vector<std::size_t> to_freeze;
      for (std::size_t k = 0; k < towers.size(); ++k) {
        if (!rising[k]) continue;
        std::vector<bool> only(towers.size(), false);
        only[k] = true;
        if (detail::max_rise(m, towers, only) == 0) to_freeze.push_back(k);
      }
      if (to_freeze.empty()) throw std::logic_error("ESR reached a tight stage without a tight tower");
      for (std::size_t k : to_freeze) {
        towers[k].frozen = true;
        trace.events.push_back({now, EsrEventKind::Freeze, std::nullopt, towers[k].members, {}, towers[k].ceiling});
      }
    }
    if (!lp::feasible(detail::bound_system(m, towers, nullptr)))
      throw std::logic_error("ESR lower bounds became infeasible");
  }
  trace.events.push_back({now, EsrEventKind::Terminate, std::nullopt, std::nullopt, std::nullopt, 0});

  // Selection among lotteries meeting the final bounds: minimize p(a) for each
  // alternative in id order, fixing each value before moving on.
  lp::LinearProgram prog = detail::bound_system(m, towers, nullptr);
  std::vector<Rational> chosen(m, Rational(0));
  for (std::size_t a = 0; a < m; ++a) {
    prog.set_objective({{a, Rational(-1)}});
    auto out = lp::solve(prog);
    if (out.status != lp::LpStatus::Optimal) throw std::logic_error("ESR final bound system infeasible");
    chosen[a] = -out.value;
    prog.add_constraint({{a, Rational(1)}}, lp::Relation::Equal, chosen[a]);
  }
  Lottery lottery(alts, std::move(chosen));
  for (const auto& t : towers)
    if (lottery.mass(t.members) < t.ceiling) throw std::logic_error("ESR lottery violates a final bound");
  return {std::move(lottery), std::move(trace), std::move(towers)};
}

inline std::string render_esr_trace(const Alternatives& alts, const EsrTrace& trace) {
  std::string out;
  for (const auto& e : trace.events) {
    out += "t=" + to_string(e.time) + " " + to_string(e.kind);
    if (e.agent) out += " agent " + to_string(*e.agent);
    if (e.tower) out += " " + alts.render(*e.tower);
    if (e.kind == EsrEventKind::TowerSwitch)
      out += " -> " + (e.next_tower && !e.next_tower->empty() ? alts.render(*e.next_tower) : std::string("done"));
    if (e.kind == EsrEventKind::Freeze || e.kind == EsrEventKind::CeilingHit) out += " at " + to_string(e.value);
    out += '\n';
  }
  return out;
}

}  // namespace sds
