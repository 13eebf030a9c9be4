#pragma once

// Participation and strategyproofness audits of one (rule, profile, agent) triple.

#include <sds/extensions.hpp>
#include <sds/sds.hpp>
#include <sds/weak_orders.hpp>

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace sds {

enum class ParticipationLevel { Participation, Strong, VeryStrong };

struct ParticipationNotion {
  ParticipationLevel level = ParticipationLevel::Participation;
  Extension extension = Extension::SD;

  friend bool operator==(const ParticipationNotion&, const ParticipationNotion&) = default;
};

inline std::string to_string(ParticipationLevel l) {
  switch (l) {
    case ParticipationLevel::Participation: return "participation";
    case ParticipationLevel::Strong: return "strong";
    case ParticipationLevel::VeryStrong: return "very-strong";
  }
  return "?";
}

inline std::string to_string(const ParticipationNotion& n) {
  return to_string(n.level) + "/" + to_string(n.extension);
}

struct Explanation {
  std::string code;
  std::string text;

  friend bool operator==(const Explanation&, const Explanation&) = default;
};

struct AuditVerdict {
  ParticipationNotion notion;
  bool holds = false;
  Lottery with_lottery;     // f(profile)
  Lottery without_lottery;  // f(profile without the agent)
  Comparison comparison;    // with vs. without, from the agent's point of view
  bool improvement_exists = false;
  std::optional<Lottery> improvement_witness;
  Explanation explanation;
};

// Verdict logic, shared by every audit path:
//   participation: abstaining is not strictly better;
//   strong:        participating is weakly better;
//   very strong:   strong, and strictly better whenever any strict improvement on the
//                  abstention outcome exists.
inline bool participation_holds(ParticipationLevel level, Comparison with_vs_without, bool improvement_exists) {
  bool strong = weakly_prefers(with_vs_without);
  switch (level) {
    case ParticipationLevel::Participation: return with_vs_without != Comparison::StrictlyDispreferred;
    case ParticipationLevel::Strong: return strong;
    case ParticipationLevel::VeryStrong:
      return strong && (!improvement_exists || with_vs_without == Comparison::StrictlyPrefers);
  }
  return false;
}

namespace detail {

inline Explanation explain(ParticipationLevel level, Comparison c, bool improvement, bool holds) {
  const std::string cmp = to_string(c);
  if (holds) {
    if (level == ParticipationLevel::VeryStrong && !improvement)
      return {"no-improvement-possible", "abstention outcome already puts all mass on the top class; participating is " + cmp};
    return {"holds", "participating vs abstaining: " + cmp};
  }
  if (c == Comparison::StrictlyDispreferred)
    return {"abstention-strictly-better", "the abstention outcome is strictly preferred"};
  if (c == Comparison::Incomparable)
    return {"incomparable", "participation and abstention outcomes are incomparable"};
  return {"no-strict-gain", "an improvement over the abstention outcome exists but participating is only " + cmp};
}

}  // namespace detail

// Both outcomes for one (rule, profile, agent) triple; verdicts for any notion are
// derived from it without re-running the rule.
struct ParticipationOutcomes {
  AgentId agent;
  Lottery with_lottery;
  Lottery without_lottery;

  AuditVerdict verdict(const Profile& profile, ParticipationNotion notion) const {
    const WeakOrder& order = profile.order(agent);
    Comparison c = compare(notion.extension, order, with_lottery, without_lottery);
    Improvement imp = exists_strict_improvement(order, without_lottery, notion.extension);
    bool holds = participation_holds(notion.level, c, imp.exists);
    return {notion,  holds, with_lottery, without_lottery, c, imp.exists, imp.witness,
            detail::explain(notion.level, c, imp.exists, holds)};
  }
};

inline ParticipationOutcomes participation_outcomes(const SdsId& rule, const Profile& profile, AgentId agent,
                                                    const Limits& limits = {}) {
  if (profile.num_agents() < 2) throw InvalidArgument("participation audit needs at least two agents");
  Profile without = profile.remove_agent(agent);
  return {agent, apply_rule(rule, profile, limits), apply_rule(without_agent(rule, agent), without, limits)};
}

inline AuditVerdict audit_participation(const SdsId& rule, const Profile& profile, AgentId agent,
                                        ParticipationNotion notion, const Limits& limits = {}) {
  return participation_outcomes(rule, profile, agent, limits).verdict(profile, notion);
}

inline constexpr std::array<ParticipationNotion, 6> kAllNotions = {{
    {ParticipationLevel::Participation, Extension::SD},
    {ParticipationLevel::Strong, Extension::SD},
    {ParticipationLevel::VeryStrong, Extension::SD},
    {ParticipationLevel::Participation, Extension::DL},
    {ParticipationLevel::Strong, Extension::DL},
    {ParticipationLevel::VeryStrong, Extension::DL},
}};

// Verdicts for every notion, in kAllNotions order.
inline std::array<bool, 6> participation_table(const ParticipationOutcomes& outcomes, const Profile& profile) {
  std::array<bool, 6> out{};
  for (std::size_t k = 0; k < kAllNotions.size(); ++k) out[k] = outcomes.verdict(profile, kAllNotions[k]).holds;
  return out;
}

// Implications that must hold between the six verdicts of one triple; returns the
// ones that fail.
inline std::vector<std::string> lattice_violations(const std::array<bool, 6>& t) {
  const bool p_sd = t[0], s_sd = t[1], vs_sd = t[2], p_dl = t[3], s_dl = t[4], vs_dl = t[5];
  std::vector<std::string> out;
  auto need = [&](bool cond, const char* name) {
    if (!cond) out.emplace_back(name);
  };
  need(!vs_sd || vs_dl, "very-strong/sd => very-strong/dl");
  need(!s_sd || s_dl, "strong/sd => strong/dl");
  need(!vs_sd || s_sd, "very-strong/sd => strong/sd");
  need(!vs_dl || s_dl, "very-strong/dl => strong/dl");
  need(!s_sd || p_sd, "strong/sd => participation/sd");
  need(!s_dl || p_dl, "strong/dl => participation/dl");
  need(!p_dl || p_sd, "participation/dl => participation/sd");
  need(s_dl == p_dl, "strong/dl <=> participation/dl");
  need(!(s_sd && vs_dl) || vs_sd, "strong/sd and very-strong/dl => very-strong/sd");
  return out;
}

// ---------------------------------------------------------------------------
// Strategyproofness

struct Manipulation {
  WeakOrder misreport;
  Lottery outcome;
};

struct StrategyproofnessVerdict {
  Extension extension = Extension::SD;
  bool manipulable = false;    // some misreport is strictly better under the true order
  bool strategyproof = true;   // truth weakly better than every misreport
  Lottery truthful;
  std::optional<Manipulation> manipulation;      // first strictly better misreport
  std::optional<Manipulation> non_dominated_by;  // first misreport truth is not weakly better than
  std::size_t misreports_checked = 0;

  bool holds() const { return !manipulable; }
};

inline StrategyproofnessVerdict audit_strategyproofness(const SdsId& rule, const Profile& profile, AgentId agent,
                                                        Extension ext, const Limits& limits = {}) {
  const WeakOrder& truth = profile.order(agent);
  const std::size_t m = profile.num_alternatives();
  if (m > limits.max_enum_alternatives)
    throw BudgetExceeded("strategyproofness audit over " + std::to_string(m) + " alternatives exceeds budget of " +
                         std::to_string(limits.max_enum_alternatives));

  StrategyproofnessVerdict v{ext, false, true, apply_rule(rule, profile, limits), {}, {}, 0};
  for (const auto& report : enumerate_weak_orders(AltSet::first_n(m))) {
    if (report == truth) continue;
    ++v.misreports_checked;
    Lottery outcome = apply_rule(rule, profile.with_order(agent, report), limits);
    Comparison c = compare(ext, truth, v.truthful, outcome);
    if (c == Comparison::StrictlyDispreferred && !v.manipulation) {
      v.manipulable = true;
      v.manipulation = Manipulation{report, outcome};
    }
    if (!weakly_prefers(c) && !v.non_dominated_by) {
      v.strategyproof = false;
      v.non_dominated_by = Manipulation{report, outcome};
    }
  }
  return v;
}

}  // namespace sds
