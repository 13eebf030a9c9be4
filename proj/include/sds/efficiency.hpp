#pragma once

// Efficiency verification: Pareto optimal alternatives, ex post efficiency and
// SD-efficiency (via an exact LP).

#include <sds/extensions.hpp>
#include <sds/lp.hpp>
#include <sds/prefs.hpp>

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace sds {

struct ParetoWitness {
  std::size_t dominated;
  std::size_t dominator;
};

struct EfficiencyVerdict {
  bool efficient = true;
  std::optional<ParetoWitness> pareto_witness;  // ex post check
  std::optional<Lottery> sd_witness;            // SD check
};

// b dominates a: everyone weakly prefers b, someone strictly.
inline bool pareto_dominates(const Profile& profile, std::size_t b, std::size_t a) {
  bool strict = false;
  for (const auto& [agent, order] : profile.orders()) {
    auto cb = order.class_index(b), ca = order.class_index(a);
    if (cb > ca) return false;
    if (cb < ca) strict = true;
  }
  return strict;
}

inline std::optional<std::size_t> pareto_dominator(const Profile& profile, std::size_t a) {
  for (std::size_t b = 0; b < profile.num_alternatives(); ++b)
    if (b != a && pareto_dominates(profile, b, a)) return b;
  return std::nullopt;
}

inline AltSet pareto_optimal(const Profile& profile) {
  AltSet out;
  for (std::size_t a = 0; a < profile.num_alternatives(); ++a)
    if (!pareto_dominator(profile, a)) out.insert(a);
  return out;
}

inline EfficiencyVerdict ex_post_efficient(const Profile& profile, const Lottery& p) {
  if (!(p.alternatives() == profile.alternatives())) throw DomainError("lottery over different alternatives");
  EfficiencyVerdict verdict;
  for (std::size_t a : p.support().indices()) {
    if (auto b = pareto_dominator(profile, a)) {
      verdict.efficient = false;
      verdict.pareto_witness = ParetoWitness{a, *b};
      return verdict;
    }
  }
  return verdict;
}

// Maximize the total slack of q over p across all agents' cumulative class masses;
// p is SD-efficient iff the optimum is 0, otherwise the optimizer q dominates p.
inline EfficiencyVerdict sd_efficient(const Profile& profile, const Lottery& p) {
  if (!(p.alternatives() == profile.alternatives())) throw DomainError("lottery over different alternatives");
  const std::size_t m = profile.num_alternatives();

  lp::LinearProgram prog;
  for (std::size_t a = 0; a < m; ++a) prog.add_variable("q" + std::to_string(a));
  lp::LinearExpr total;
  for (std::size_t a = 0; a < m; ++a) total.emplace_back(a, Rational(1));
  prog.add_constraint(std::move(total), lp::Relation::Equal, Rational(1));

  lp::LinearExpr objective;
  for (const auto& [agent, order] : profile.orders()) {
    AltSet prefix;
    for (std::size_t l = 0; l + 1 < order.num_classes(); ++l) {
      prefix = prefix | order.classes()[l];
      std::size_t slack = prog.add_variable("s" + to_string(agent) + "_" + std::to_string(l));
      lp::LinearExpr lhs;
      prefix.for_each([&](std::size_t a) { lhs.emplace_back(a, Rational(1)); });
      lhs.emplace_back(slack, Rational(-1));
      prog.add_constraint(std::move(lhs), lp::Relation::Equal, p.mass(prefix));
      objective.emplace_back(slack, Rational(1));
    }
  }
  prog.set_objective(std::move(objective));

  auto out = lp::solve(prog);
  if (out.status != lp::LpStatus::Optimal) throw std::logic_error("SD-efficiency LP must have an optimum");
  EfficiencyVerdict verdict;
  if (out.value == 0) return verdict;

  Lottery q(p.alternatives(), std::vector<Rational>(out.assignment.begin(), out.assignment.begin() + static_cast<std::ptrdiff_t>(m)));
  bool strict = false;
  for (const auto& [agent, order] : profile.orders()) {
    auto c = sd_compare(order, q, p);
    if (!weakly_prefers(c)) throw std::logic_error("SD-efficiency witness is not weakly preferred by every agent");
    strict = strict || c == Comparison::StrictlyPrefers;
  }
  if (!strict) throw std::logic_error("SD-efficiency witness is not strictly preferred by any agent");
  verdict.efficient = false;
  verdict.sd_witness = std::move(q);
  return verdict;
}

}  // namespace sds
