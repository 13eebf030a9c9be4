#pragma once

// Replays the published worked examples (outcomes, recursion tree, audit verdicts)
// against the library. Used by the `paper-check` command.

#include <sds/all.hpp>

#include <functional>
#include <string>
#include <vector>

namespace sds::reference {

inline const char* const kExampleProfile = "1: a,b,c,d\n2: {a,b},{c,d}\n3: {c,d},{a,b}\n";
inline const char* const kMrProfile = "1: {a,b,c,d},{e}\n2: {a,b},{c,d},{e}\n3: {c,e},{a},{d},{b}\n";
inline const char* const kEsr4Profile = "1: a,b\n2: a,b\n3: b,a\n4: b,a\n";
inline const char* const kEsr6Profile =
    "1: {b,c,f},{a,d,e,g,h}\n"
    "2: {a,h},{c,d,e,f,g},{b}\n"
    "3: {b,c,d,e,h},{a,f,g}\n"
    "4: {a,d},{b,c,g},{e},{f,h}\n"
    "5: {a,d,e,f,h},{b,g},{c}\n"
    "6: {e,h},{a,c,f},{b,d,g}\n";
inline const char* const kSerialProfile = "1: {a,b},c\n2: c,b,a\n3: c,b,a\n";

struct CheckResult {
  bool pass = false;
  std::string detail;
  bool informational = false;  // reported, never fails the run
};

struct Check {
  std::string id;
  std::string description;
  std::function<CheckResult()> run;
};

namespace detail {

inline Lottery lottery(const Profile& p, const char* literal) { return parse_lottery(literal, p.alternatives()); }

inline bool within(const Lottery& got, const std::vector<std::pair<const char*, double>>& want, double tol) {
  for (std::size_t i = 0; i < got.size(); ++i) {
    double expected = 0;
    for (const auto& [id, v] : want)
      if (got.alternatives().name(i) == id) expected = v;
    if (std::abs(got[i].get_d() - expected) > tol) return false;
  }
  return true;
}

}  // namespace detail

inline std::vector<Check> checks() {
  std::vector<Check> out;

  out.push_back({"example-comparator", "SD-incomparable but DL-preferred lotteries for agent 1", [] {
                   Profile p = parse_profile(kExampleProfile);
                   Lottery x = detail::lottery(p, "a:2/3,d:1/3"), y = detail::lottery(p, "a:1/2,c:1/2");
                   auto sd = sd_compare(p.order({1}), x, y), dl = dl_compare(p.order({1}), x, y);
                   return CheckResult{sd == Comparison::Incomparable && dl == Comparison::StrictlyPrefers,
                                      "sd " + to_string(sd) + ", dl " + to_string(dl)};
                 }});

  out.push_back({"mr-figure", "MR lottery and recursion tree on the three-agent profile", [] {
                   Profile p = parse_profile(kMrProfile);
                   auto r = mr(p);
                   const auto& alts = p.alternatives();
                   bool tree = r.tree.children.size() == 2 && r.tree.children[0].set == alts.set_of({"a", "b"}) &&
                               r.tree.children[0].weight == make_rational(10, 18) &&
                               r.tree.children[1].set == alts.set_of({"c"}) &&
                               r.tree.children[1].weight == make_rational(8, 18) &&
                               r.tree.children[0].children.size() == 1 &&
                               r.tree.children[0].children[0].set == alts.set_of({"a"}) &&
                               r.tree.children[0].children[0].weight == make_rational(10, 18) &&
                               r.tree.children[1].children.empty();
                   bool lot = r.lottery == detail::lottery(p, "a:10/18,c:8/18");
                   return CheckResult{tree && lot, render_lottery(r.lottery)};
                 }});

  out.push_back({"mr-figure-abstention", "MR outcome is c:1 when agent 2 abstains", [] {
                   Profile p = parse_profile(kMrProfile).remove_agent({2});
                   auto r = mr(p);
                   return CheckResult{r.lottery == detail::lottery(p, "c:1"), render_lottery(r.lottery)};
                 }});

  out.push_back({"mr-figure-participation", "MR: agent 2 strictly SD-gains by participating", [] {
                   Profile p = parse_profile(kMrProfile);
                   auto v = audit_participation(SdsId::of(RuleKind::MR), p, {2},
                                                {ParticipationLevel::VeryStrong, Extension::SD});
                   return CheckResult{v.holds && v.comparison == Comparison::StrictlyPrefers,
                                      "very-strong/sd " + std::string(v.holds ? "holds" : "violated") + ", " +
                                          to_string(v.comparison)};
                 }});

  out.push_back({"esr-4agent-outcomes", "ESR gives 1/2 a + 1/2 b with and without agent 4", [] {
                   Profile p = parse_profile(kEsr4Profile);
                   Lottery half = detail::lottery(p, "a:1/2,b:1/2");
                   auto with = esr(p).lottery, without = esr(p.remove_agent({4})).lottery;
                   return CheckResult{with == half && without == half,
                                      render_lottery(with) + " | " + render_lottery(without)};
                 }});

  out.push_back({"esr-4agent-very-strong", "ESR violates very strong SD-participation, keeps strong", [] {
                   Profile p = parse_profile(kEsr4Profile);
                   auto outcomes = participation_outcomes(SdsId::of(RuleKind::ESR), p, {4});
                   auto vs = outcomes.verdict(p, {ParticipationLevel::VeryStrong, Extension::SD});
                   auto st = outcomes.verdict(p, {ParticipationLevel::Strong, Extension::SD});
                   return CheckResult{!vs.holds && vs.improvement_exists && st.holds,
                                      "very-strong/sd " + std::string(vs.holds ? "holds" : "violated") +
                                          ", strong/sd " + (st.holds ? "holds" : "violated")};
                 }});

  out.push_back({"esr-6agent-strong", "ESR violates strong SD-participation for agent 2 (incomparable)", [] {
                   Profile p = parse_profile(kEsr6Profile);
                   auto v = audit_participation(SdsId::of(RuleKind::ESR), p, {2},
                                                {ParticipationLevel::Strong, Extension::SD});
                   return CheckResult{!v.holds && v.comparison == Comparison::Incomparable,
                                      "strong/sd " + std::string(v.holds ? "holds" : "violated") + ", " +
                                          to_string(v.comparison)};
                 }});

  out.push_back({"esr-6agent-decimals", "ESR per-alternative values on the six-agent profile (1e-6)", [] {
                   Profile p = parse_profile(kEsr6Profile);
                   auto with = esr(p).lottery, without = esr(p.remove_agent({2})).lottery;
                   bool ok = detail::within(with, {{"a", 0.333333}, {"b", 0.166667}, {"c", 0.166667}, {"h", 0.333333}},
                                            1e-6) &&
                             detail::within(without,
                                            {{"a", 0.222222}, {"b", 0.111111}, {"c", 0.222222}, {"d", 0.111111},
                                             {"e", 0.333333}},
                                            1e-6);
                   return CheckResult{ok,
                                      render_lottery(with, NumberFormat::Decimal) + " | " +
                                          render_lottery(without, NumberFormat::Decimal),
                                      true};
                 }});

  out.push_back({"serial-dictatorship", "Serial dictatorship (1,2,3): outcome b:1 unchanged by agent 3", [] {
                   Profile p = parse_profile(kSerialProfile);
                   auto rule = SdsId::serial_dictatorship({{1}, {2}, {3}});
                   auto outcomes = participation_outcomes(rule, p, {3});
                   auto dl = outcomes.verdict(p, {ParticipationLevel::VeryStrong, Extension::DL});
                   auto sd = outcomes.verdict(p, {ParticipationLevel::VeryStrong, Extension::SD});
                   Lottery b = detail::lottery(p, "b:1");
                   return CheckResult{outcomes.with_lottery == b && outcomes.without_lottery == b && !dl.holds && !sd.holds,
                                      render_lottery(outcomes.with_lottery) + "; very-strong/dl " +
                                          (dl.holds ? "holds" : "violated") + ", very-strong/sd " +
                                          (sd.holds ? "holds" : "violated")};
                 }});

  out.push_back({"lattice-smoke", "Participation implications on every reference profile, rule and agent", [] {
                   std::size_t triples = 0;
                   std::vector<std::string> failures;
                   for (const char* text : {kExampleProfile, kMrProfile, kEsr4Profile, kEsr6Profile, kSerialProfile}) {
                     Profile p = parse_profile(text);
                     for (auto kind : {RuleKind::Constant, RuleKind::PP, RuleKind::BO, RuleKind::MR, RuleKind::ESR}) {
                       for (AgentId a : p.agents()) {
                         auto table = participation_table(participation_outcomes(SdsId::of(kind), p, a), p);
                         for (auto& f : lattice_violations(table)) failures.push_back(to_string(kind) + ": " + f);
                         ++triples;
                       }
                     }
                   }
                   return CheckResult{failures.empty(), std::to_string(triples) + " triples, " +
                                                            std::to_string(failures.size()) + " violations"};
                 }});

  return out;
}

}  // namespace sds::reference
