#pragma once

// Rule identifiers and a single entry point that evaluates any supported scheme.

#include <sds/esr.hpp>
#include <sds/mr.hpp>
#include <sds/rules.hpp>

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sds {

enum class RuleKind { Constant, SerialDictatorship, RSD, PP, BO, MR, ESR };

struct SdsId {
  RuleKind kind = RuleKind::Constant;
  std::vector<AgentId> permutation;  // SerialDictatorship only

  static SdsId of(RuleKind kind) { return {kind, {}}; }
  static SdsId serial_dictatorship(std::vector<AgentId> permutation) {
    return {RuleKind::SerialDictatorship, std::move(permutation)};
  }

  bool anonymous() const { return kind != RuleKind::SerialDictatorship; }

  friend bool operator==(const SdsId&, const SdsId&) = default;
};

inline std::string to_string(RuleKind k) {
  switch (k) {
    case RuleKind::Constant: return "constant";
    case RuleKind::SerialDictatorship: return "sd";
    case RuleKind::RSD: return "rsd";
    case RuleKind::PP: return "pp";
    case RuleKind::BO: return "bo";
    case RuleKind::MR: return "mr";
    case RuleKind::ESR: return "esr";
  }
  return "?";
}

inline std::optional<RuleKind> parse_rule_kind(std::string_view name) {
  for (auto k : {RuleKind::Constant, RuleKind::SerialDictatorship, RuleKind::RSD, RuleKind::PP, RuleKind::BO,
                 RuleKind::MR, RuleKind::ESR})
    if (to_string(k) == name) return k;
  return std::nullopt;
}

inline std::string to_string(const SdsId& id) {
  std::string out = to_string(id.kind);
  if (id.kind == RuleKind::SerialDictatorship) {
    out += "(";
    for (std::size_t i = 0; i < id.permutation.size(); ++i) out += (i ? "," : "") + to_string(id.permutation[i]);
    out += ")";
  }
  return out;
}

inline Lottery apply_rule(const SdsId& rule, const Profile& profile, const Limits& limits = {}) {
  switch (rule.kind) {
    case RuleKind::Constant: return constant_rule(profile);
    case RuleKind::SerialDictatorship: return serial_dictatorship(profile, rule.permutation).lottery;
    case RuleKind::RSD: return rsd(profile, limits);
    case RuleKind::PP: return proportional_plurality(profile);
    case RuleKind::BO: return borda_uniform(profile);
    case RuleKind::MR: return mr(profile).lottery;
    case RuleKind::ESR: return esr(profile).lottery;
  }
  throw InvalidArgument("unknown rule");
}

// The same rule applied to the electorate without `agent` (serial dictatorship keeps
// the relative order of the remaining agents).
inline SdsId without_agent(const SdsId& rule, AgentId agent) {
  SdsId out = rule;
  std::erase(out.permutation, agent);
  return out;
}

}  // namespace sds
