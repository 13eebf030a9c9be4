#pragma once

// Exhaustive search over small profile spaces: confirms universally quantified
// properties at desk scale and collects counterexamples.

#include <sds/audit.hpp>
#include <sds/efficiency.hpp>
#include <sds/weak_orders.hpp>

#include <algorithm>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace sds {

enum class PropertyKind { Participation, ExPostEfficiency, SdEfficiency, Strategyproofness };

struct SearchProperty {
  PropertyKind kind = PropertyKind::Participation;
  ParticipationNotion notion;         // Participation
  Extension extension = Extension::SD;  // Strategyproofness

  static SearchProperty participation(ParticipationNotion n) { return {PropertyKind::Participation, n, n.extension}; }
  static SearchProperty ex_post() { return {PropertyKind::ExPostEfficiency, {}, Extension::SD}; }
  static SearchProperty sd_efficiency() { return {PropertyKind::SdEfficiency, {}, Extension::SD}; }
  static SearchProperty strategyproofness(Extension e) { return {PropertyKind::Strategyproofness, {}, e}; }
};

inline std::string to_string(const SearchProperty& p) {
  switch (p.kind) {
    case PropertyKind::Participation: return to_string(p.notion);
    case PropertyKind::ExPostEfficiency: return "ex-post-efficiency";
    case PropertyKind::SdEfficiency: return "sd-efficiency";
    case PropertyKind::Strategyproofness: return "strategyproofness/" + to_string(p.extension);
  }
  return "?";
}

struct Range {
  std::size_t min = 1;
  std::size_t max = 1;
};

// Process instance g iff g % count == index - 1 (index is 1-based).
struct Shard {
  std::size_t index = 1;
  std::size_t count = 1;
};

struct SearchSpec {
  SdsId rule;
  SearchProperty property;
  Range agents{2, 3};
  Range alternatives{2, 3};
  bool canonicalize = true;       // profiles as multisets; ignored for non-anonymous rules
  std::size_t budget = 0;         // max instances, 0 = unlimited
  std::size_t max_violations = 0; // stop after this many, 0 = unlimited
  Shard shard;
  bool all_permutations = true;   // serial dictatorship: every permutation when n <= 3
  Limits limits;
};

using SearchVerdict = std::variant<AuditVerdict, EfficiencyVerdict, StrategyproofnessVerdict>;

struct Violation {
  Profile profile;
  SdsId rule;
  std::optional<AgentId> agent;
  SearchVerdict verdict;
  std::optional<Lottery> outcome;  // efficiency properties: the audited rule output
};

struct SearchReport {
  std::size_t instances_checked = 0;
  std::size_t instances_failed = 0;  // rule budget exceeded; recorded, not fatal
  std::vector<Violation> violations;
  bool exhausted = false;
};

namespace detail {

inline std::vector<std::vector<AgentId>> permutations_of(std::size_t n, bool all) {
  std::vector<AgentId> perm;
  for (std::size_t i = 1; i <= n; ++i) perm.push_back(AgentId{static_cast<int>(i)});
  std::vector<std::vector<AgentId>> out;
  if (!all || n > 3) return {perm};
  do out.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// Advances `idx` to the next tuple (or nondecreasing tuple) over [0, base); false at end.
inline bool next_profile(std::vector<std::size_t>& idx, std::size_t base, bool multiset) {
  for (std::size_t pos = idx.size(); pos-- > 0;) {
    if (idx[pos] + 1 < base) {
      ++idx[pos];
      for (std::size_t k = pos + 1; k < idx.size(); ++k) idx[k] = multiset ? idx[pos] : 0;
      return true;
    }
  }
  return false;
}

// Returns the violations found on one profile under one rule instance.
inline std::vector<Violation> check_instance(const SearchSpec& spec, const SdsId& rule, const Profile& profile) {
  std::vector<Violation> out;
  const auto& prop = spec.property;
  switch (prop.kind) {
    case PropertyKind::Participation:
      if (profile.num_agents() < 2) break;
      for (AgentId agent : profile.agents()) {
        auto v = audit_participation(rule, profile, agent, prop.notion, spec.limits);
        if (!v.holds) out.push_back({profile, rule, agent, std::move(v), std::nullopt});
      }
      break;
    case PropertyKind::Strategyproofness:
      for (AgentId agent : profile.agents()) {
        auto v = audit_strategyproofness(rule, profile, agent, prop.extension, spec.limits);
        if (v.manipulable) out.push_back({profile, rule, agent, std::move(v), std::nullopt});
      }
      break;
    case PropertyKind::ExPostEfficiency:
    case PropertyKind::SdEfficiency: {
      Lottery p = apply_rule(rule, profile, spec.limits);
      auto v = prop.kind == PropertyKind::ExPostEfficiency ? ex_post_efficient(profile, p) : sd_efficient(profile, p);
      if (!v.efficient) out.push_back({profile, rule, std::nullopt, std::move(v), std::move(p)});
      break;
    }
  }
  return out;
}

}  // namespace detail

inline Profile profile_from_indices(const std::vector<WeakOrder>& orders, const std::vector<std::size_t>& idx,
                                    const Alternatives& alts) {
  std::map<AgentId, WeakOrder> m;
  for (std::size_t i = 0; i < idx.size(); ++i) m.emplace(AgentId{static_cast<int>(i + 1)}, orders[idx[i]]);
  return Profile(alts, std::move(m));
}

inline SearchReport search(const SearchSpec& spec) {
  if (spec.agents.min < 1 || spec.agents.min > spec.agents.max) throw InvalidArgument("invalid agent range");
  if (spec.alternatives.min < 1 || spec.alternatives.min > spec.alternatives.max)
    throw InvalidArgument("invalid alternative range");
  if (spec.shard.count == 0 || spec.shard.index < 1 || spec.shard.index > spec.shard.count)
    throw InvalidArgument("invalid shard");

  const bool multiset = spec.canonicalize && spec.rule.anonymous();
  SearchReport report;
  std::size_t global = 0;
  bool stopped = false;

  for (std::size_t m = spec.alternatives.min; m <= spec.alternatives.max && !stopped; ++m) {
    const auto orders = enumerate_weak_orders(m, spec.limits);
    const Alternatives alts = Alternatives::first(m);
    for (std::size_t n = spec.agents.min; n <= spec.agents.max && !stopped; ++n) {
      std::vector<SdsId> rules;
      if (spec.rule.kind == RuleKind::SerialDictatorship) {
        for (auto& perm : detail::permutations_of(n, spec.all_permutations))
          rules.push_back(SdsId::serial_dictatorship(std::move(perm)));
      } else {
        rules.push_back(spec.rule);
      }

      std::vector<std::size_t> idx(n, 0);
      do {
        Profile profile = profile_from_indices(orders, idx, alts);
        for (const auto& rule : rules) {
          const std::size_t g = global++;
          if (g % spec.shard.count != spec.shard.index - 1) continue;
          if (spec.budget != 0 && report.instances_checked + report.instances_failed >= spec.budget) {
            stopped = true;
            break;
          }
          try {
            auto found = detail::check_instance(spec, rule, profile);
            ++report.instances_checked;
            for (auto& v : found) report.violations.push_back(std::move(v));
          } catch (const BudgetExceeded&) {
            ++report.instances_failed;
          }
          if (spec.max_violations != 0 && report.violations.size() >= spec.max_violations) {
            stopped = true;
            break;
          }
        }
      } while (!stopped && detail::next_profile(idx, orders.size(), multiset));
    }
  }
  report.exhausted = !stopped;

  auto key = [](const Violation& v) {
    return std::make_tuple(v.profile.num_alternatives(), v.profile.num_agents(), render_profile(v.profile),
                           to_string(v.rule), v.agent ? v.agent->value : 0);
  };
  std::stable_sort(report.violations.begin(), report.violations.end(),
                   [&](const Violation& a, const Violation& b) { return key(a) < key(b); });
  return report;
}

}  // namespace sds
