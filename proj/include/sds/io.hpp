#pragma once

// Structured (JSON) output. Rationals are emitted as exact strings ("5/9").
//
//   lottery:  {"alternatives": [ids], "probabilities": {id: "p/q"}}
//   profile:  {"alternatives": [ids], "agents": [{"id": n, "classes": [[ids], ...]}]}
//   mr tree:  {"set": [ids], "weight": "p/q", "assignment": {id: "p/q"}, "children": [...]}
//   esr trace: [{"time", "kind", "agent"?, "tower"?, "next_tower"?, "value"}]

#include <sds/audit.hpp>
#include <sds/efficiency.hpp>
#include <sds/esr.hpp>
#include <sds/mr.hpp>
#include <sds/search.hpp>

#include <nlohmann/json.hpp>

namespace sds::io {

using json = nlohmann::ordered_json;

inline json set_json(const Alternatives& alts, AltSet s) {
  json out = json::array();
  s.for_each([&](std::size_t i) { out.push_back(alts.name(i)); });
  return out;
}

inline json to_json(const Lottery& p) {
  json probs = json::object();
  for (std::size_t i = 0; i < p.size(); ++i) probs[p.alternatives().name(i)] = to_string(p[i]);
  return {{"alternatives", p.alternatives().names()}, {"probabilities", probs}};
}

inline json to_json(const Profile& profile) {
  json agents = json::array();
  for (const auto& [agent, order] : profile.orders()) {
    json classes = json::array();
    for (AltSet c : order.classes()) classes.push_back(set_json(profile.alternatives(), c));
    agents.push_back({{"id", agent.value}, {"classes", classes}});
  }
  return {{"alternatives", profile.alternatives().names()}, {"agents", agents}};
}

inline json to_json(const Alternatives& alts, const WeakOrder& order) {
  json classes = json::array();
  for (AltSet c : order.classes()) classes.push_back(set_json(alts, c));
  return classes;
}

inline json to_json(const Alternatives& alts, const MrNode& node) {
  json assignment = json::object();
  node.set.for_each([&](std::size_t a) { assignment[alts.name(a)] = to_string(node.assignment[a]); });
  json children = json::array();
  for (const auto& c : node.children) children.push_back(to_json(alts, c));
  return {{"set", set_json(alts, node.set)},
          {"weight", to_string(node.weight)},
          {"assignment", assignment},
          {"children", children}};
}

inline json to_json(const Alternatives& alts, const EsrTrace& trace) {
  json out = json::array();
  for (const auto& e : trace.events) {
    json ev = {{"time", to_string(e.time)}, {"kind", to_string(e.kind)}};
    if (e.agent) ev["agent"] = e.agent->value;
    if (e.tower) ev["tower"] = set_json(alts, *e.tower);
    if (e.next_tower) ev["next_tower"] = set_json(alts, *e.next_tower);
    ev["value"] = to_string(e.value);
    out.push_back(ev);
  }
  return out;
}

inline json to_json(const AuditVerdict& v, AgentId agent) {
  json out = {{"agent", agent.value},
              {"notion", to_string(v.notion)},
              {"holds", v.holds},
              {"with", to_json(v.with_lottery)},
              {"without", to_json(v.without_lottery)},
              {"comparison", to_string(v.comparison)},
              {"improvement_exists", v.improvement_exists},
              {"explanation", {{"code", v.explanation.code}, {"text", v.explanation.text}}}};
  if (v.improvement_witness) out["improvement_witness"] = to_json(*v.improvement_witness);
  return out;
}

inline json to_json(const Alternatives& alts, const StrategyproofnessVerdict& v, AgentId agent) {
  json out = {{"agent", agent.value},
              {"extension", to_string(v.extension)},
              {"manipulable", v.manipulable},
              {"strategyproof", v.strategyproof},
              {"truthful", to_json(v.truthful)},
              {"misreports_checked", v.misreports_checked}};
  if (v.manipulation)
    out["manipulation"] = {{"misreport", to_json(alts, v.manipulation->misreport)},
                           {"outcome", to_json(v.manipulation->outcome)}};
  return out;
}

inline json to_json(const Alternatives& alts, const EfficiencyVerdict& v) {
  json out = {{"efficient", v.efficient}};
  if (v.pareto_witness)
    out["pareto_witness"] = {{"dominated", alts.name(v.pareto_witness->dominated)},
                             {"dominator", alts.name(v.pareto_witness->dominator)}};
  if (v.sd_witness) out["sd_witness"] = to_json(*v.sd_witness);
  return out;
}

inline json to_json(const SearchReport& r) {
  json violations = json::array();
  for (const auto& v : r.violations) {
    json item = {{"profile", to_json(v.profile)}, {"rule", to_string(v.rule)}};
    if (v.agent) item["agent"] = v.agent->value;
    const auto& alts = v.profile.alternatives();
    std::visit(
        [&](const auto& verdict) {
          using T = std::decay_t<decltype(verdict)>;
          if constexpr (std::is_same_v<T, AuditVerdict>)
            item["verdict"] = to_json(verdict, *v.agent);
          else if constexpr (std::is_same_v<T, StrategyproofnessVerdict>)
            item["verdict"] = to_json(alts, verdict, *v.agent);
          else
            item["verdict"] = to_json(alts, verdict);
        },
        v.verdict);
    if (v.outcome) item["outcome"] = to_json(*v.outcome);
    violations.push_back(item);
  }
  return {{"instances_checked", r.instances_checked},
          {"instances_failed", r.instances_failed},
          {"exhausted", r.exhausted},
          {"violations", violations}};
}

}  // namespace sds::io
