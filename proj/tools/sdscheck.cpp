// sdscheck: command-line front end for the sds library.
//
// Exit codes: 0 success / property holds, 2 property violated, 1 usage or input error.

#include "reference_checks.hpp"

#include <sds/all.hpp>
#include <sds/io.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace sds;

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kViolated = 2;

struct Output {
  bool json = false;
  std::string format = "rational";

  NumberFormat number_format() const {
    return format == "decimal" ? NumberFormat::Decimal : NumberFormat::Rational;
  }
};

std::string read_source(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path);
  if (!in) throw Error("cannot read profile file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Profile load_profile(const std::string& path) { return parse_profile(read_source(path)); }

std::vector<AgentId> parse_permutation(const std::string& text) {
  std::vector<AgentId> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      int v = std::stoi(item, &used);
      if (used != item.size() || v <= 0) throw std::invalid_argument(item);
      out.push_back(AgentId{v});
    } catch (const std::exception&) {
      throw Error("malformed permutation '" + text + "'");
    }
  }
  return out;
}

SdsId make_rule(const std::string& name, const std::string& permutation, const Profile* profile) {
  auto kind = parse_rule_kind(name);
  if (!kind) throw Error("unknown rule '" + name + "'");
  if (*kind != RuleKind::SerialDictatorship) {
    if (!permutation.empty()) throw Error("--permutation only applies to --rule sd");
    return SdsId::of(*kind);
  }
  if (permutation.empty()) {
    if (!profile) throw Error("--rule sd requires --permutation");
    throw Error("--rule sd requires --permutation (e.g. --permutation " + [&] {
      std::string s;
      for (AgentId a : profile->agents()) s += (s.empty() ? "" : ",") + to_string(a);
      return s;
    }() + ")");
  }
  return SdsId::serial_dictatorship(parse_permutation(permutation));
}

Extension parse_extension(const std::string& s) { return s == "dl" ? Extension::DL : Extension::SD; }

ParticipationLevel parse_level(const std::string& s) {
  if (s == "strong") return ParticipationLevel::Strong;
  if (s == "very-strong") return ParticipationLevel::VeryStrong;
  return ParticipationLevel::Participation;
}

void print_json(const io::json& j) { std::cout << j.dump(2) << '\n'; }

// ---------------------------------------------------------------------------

struct ComputeArgs {
  std::string rule, profile, permutation;
  bool tree = false, trace = false;
};

int run_compute(const ComputeArgs& a, const Output& out) {
  Profile profile = load_profile(a.profile);
  SdsId rule = make_rule(a.rule, a.permutation, &profile);
  Limits limits = Limits::from_env();
  if (a.tree && rule.kind != RuleKind::MR) throw Error("--tree only applies to --rule mr");
  if (a.trace && rule.kind != RuleKind::ESR) throw Error("--trace only applies to --rule esr");

  io::json j;
  Lottery lottery = [&] {
    if (rule.kind == RuleKind::MR) {
      auto r = mr(profile);
      if (a.tree) {
        if (out.json)
          j["tree"] = io::to_json(profile.alternatives(), r.tree);
        else
          std::cout << render_mr_tree(profile.alternatives(), r.tree);
      }
      return r.lottery;
    }
    if (rule.kind == RuleKind::ESR) {
      auto r = esr(profile);
      if (a.trace) {
        if (out.json)
          j["trace"] = io::to_json(profile.alternatives(), r.trace);
        else
          std::cout << render_esr_trace(profile.alternatives(), r.trace);
      }
      return r.lottery;
    }
    if (rule.kind == RuleKind::SerialDictatorship) {
      auto r = serial_dictatorship(profile, rule.permutation);
      if (out.json) j["final_set"] = io::set_json(profile.alternatives(), r.final_set);
      return r.lottery;
    }
    return apply_rule(rule, profile, limits);
  }();

  if (out.json) {
    j["rule"] = to_string(rule);
    j["lottery"] = io::to_json(lottery);
    print_json(j);
  } else {
    std::cout << render_lottery(lottery, out.number_format()) << '\n';
  }
  return kOk;
}

struct CompareArgs {
  std::string order, profile, p, q, extension = "both";
  int agent = 0;
};

int run_compare(const CompareArgs& a, const Output& out) {
  std::optional<Profile> profile;
  AgentId agent{1};
  if (!a.order.empty()) {
    if (!a.profile.empty()) throw Error("use either --order or --profile/--agent");
    profile = parse_profile("1: " + a.order);
  } else {
    if (a.profile.empty() || a.agent == 0) throw Error("compare needs --order, or --profile with --agent");
    profile = load_profile(a.profile);
    agent = AgentId{a.agent};
  }
  const WeakOrder& order = profile->order(agent);
  Lottery p = parse_lottery(a.p, profile->alternatives());
  Lottery q = parse_lottery(a.q, profile->alternatives());

  io::json j;
  for (Extension e : {Extension::SD, Extension::DL}) {
    if (a.extension != "both" && a.extension != to_string(e)) continue;
    Comparison c = compare(e, order, p, q);
    if (out.json)
      j[to_string(e)] = to_string(c);
    else
      std::cout << to_string(e) << ": " << to_string(c) << '\n';
  }
  if (out.json) print_json(j);
  return kOk;
}

struct VerifyArgs {
  std::string profile, lottery, property;
};

int run_verify(const VerifyArgs& a, const Output& out) {
  Profile profile = load_profile(a.profile);
  Lottery p = parse_lottery(a.lottery, profile.alternatives());
  const auto& alts = profile.alternatives();
  EfficiencyVerdict v = a.property == "sd" ? sd_efficient(profile, p) : ex_post_efficient(profile, p);
  if (out.json) {
    print_json(io::to_json(alts, v));
  } else if (v.efficient) {
    std::cout << (a.property == "sd" ? "SD-efficient" : "ex post efficient") << '\n';
  } else if (v.pareto_witness) {
    std::cout << "not ex post efficient: " << alts.name(v.pareto_witness->dominated) << " is Pareto dominated by "
              << alts.name(v.pareto_witness->dominator) << '\n';
  } else {
    std::cout << "not SD-efficient: dominated by " << render_lottery(*v.sd_witness, out.number_format()) << '\n';
  }
  return v.efficient ? kOk : kViolated;
}

struct AuditArgs {
  std::string rule, profile, permutation, notion = "participation", extension = "sd";
  int agent = 0;
  bool all_agents = false;
};

int run_audit(const AuditArgs& a, const Output& out) {
  Profile profile = load_profile(a.profile);
  SdsId rule = make_rule(a.rule, a.permutation, &profile);
  ParticipationNotion notion{parse_level(a.notion), parse_extension(a.extension)};
  std::vector<AgentId> agents;
  if (a.all_agents == (a.agent != 0)) throw Error("audit needs exactly one of --agent or --all-agents");
  if (a.all_agents)
    agents = profile.agents();
  else
    agents.push_back(AgentId{a.agent});

  bool all_hold = true;
  io::json j = io::json::array();
  for (AgentId agent : agents) {
    auto v = audit_participation(rule, profile, agent, notion, Limits::from_env());
    all_hold = all_hold && v.holds;
    if (out.json) {
      j.push_back(io::to_json(v, agent));
      continue;
    }
    std::cout << "agent " << to_string(agent) << ": " << to_string(notion) << ' '
              << (v.holds ? "holds" : "VIOLATED") << '\n'
              << "  with:    " << render_lottery(v.with_lottery, out.number_format()) << '\n'
              << "  without: " << render_lottery(v.without_lottery, out.number_format()) << '\n'
              << "  comparison: " << to_string(v.comparison)
              << "; improvement exists: " << (v.improvement_exists ? "yes" : "no") << '\n'
              << "  " << v.explanation.code << ": " << v.explanation.text << '\n';
  }
  if (out.json) print_json(j);
  return all_hold ? kOk : kViolated;
}

struct AuditSpArgs {
  std::string rule, profile, permutation, extension = "sd";
  int agent = 0;
};

int run_audit_sp(const AuditSpArgs& a, const Output& out) {
  Profile profile = load_profile(a.profile);
  SdsId rule = make_rule(a.rule, a.permutation, &profile);
  AgentId agent{a.agent};
  auto v = audit_strategyproofness(rule, profile, agent, parse_extension(a.extension), Limits::from_env());
  const auto& alts = profile.alternatives();
  if (out.json) {
    print_json(io::to_json(alts, v, agent));
  } else {
    std::cout << "agent " << to_string(agent) << ": " << v.misreports_checked << " misreports checked\n"
              << "  " << to_string(v.extension) << "-manipulable: " << (v.manipulable ? "yes" : "no") << '\n'
              << "  " << to_string(v.extension) << "-strategyproof: " << (v.strategyproof ? "yes" : "no") << '\n';
    if (v.manipulation)
      std::cout << "  witness: report " << render_order(alts, v.manipulation->misreport) << " -> "
                << render_lottery(v.manipulation->outcome, out.number_format()) << " (truthful "
                << render_lottery(v.truthful, out.number_format()) << ")\n";
  }
  return v.manipulable ? kViolated : kOk;
}

struct SearchArgs {
  std::string rule, property, extension = "sd", shard = "1/1", permutation;
  std::size_t min_agents = 2, max_agents = 3, min_alts = 2, max_alts = 3, budget = 0, max_violations = 0;
  bool no_canonicalize = false;
  std::size_t show = 5;
};

int run_search(const SearchArgs& a, const Output& out) {
  SearchSpec spec;
  auto kind = parse_rule_kind(a.rule);
  if (!kind) throw Error("unknown rule '" + a.rule + "'");
  spec.rule = SdsId::of(*kind);
  spec.all_permutations = true;
  Extension ext = parse_extension(a.extension);
  if (a.property == "participation" || a.property == "strong" || a.property == "very-strong")
    spec.property = SearchProperty::participation({parse_level(a.property), ext});
  else if (a.property == "expost")
    spec.property = SearchProperty::ex_post();
  else if (a.property == "sd-efficiency")
    spec.property = SearchProperty::sd_efficiency();
  else
    spec.property = SearchProperty::strategyproofness(ext);
  spec.agents = {a.min_agents, a.max_agents};
  spec.alternatives = {a.min_alts, a.max_alts};
  spec.canonicalize = !a.no_canonicalize;
  spec.budget = a.budget;
  spec.max_violations = a.max_violations;
  spec.limits = Limits::from_env();
  auto slash = a.shard.find('/');
  try {
    if (slash == std::string::npos) throw std::invalid_argument(a.shard);
    spec.shard = {std::stoul(a.shard.substr(0, slash)), std::stoul(a.shard.substr(slash + 1))};
  } catch (const std::exception&) {
    throw Error("malformed --shard '" + a.shard + "' (expected k/K)");
  }

  SearchReport report = search(spec);
  if (out.json) {
    print_json(io::to_json(report));
  } else {
    std::cout << "rule " << to_string(spec.rule) << ", property " << to_string(spec.property) << '\n'
              << "instances checked: " << report.instances_checked
              << (report.instances_failed ? " (" + std::to_string(report.instances_failed) + " over budget)" : "")
              << '\n'
              << "exhausted: " << (report.exhausted ? "yes" : "no") << '\n'
              << "violations: " << report.violations.size() << '\n';
    for (std::size_t k = 0; k < report.violations.size() && k < a.show; ++k) {
      const auto& v = report.violations[k];
      std::cout << "--- " << to_string(v.rule);
      if (v.agent) std::cout << ", agent " << to_string(*v.agent);
      std::cout << '\n' << render_profile(v.profile);
      if (v.outcome) std::cout << "outcome: " << render_lottery(*v.outcome, out.number_format()) << '\n';
    }
  }
  return report.violations.empty() ? kOk : kViolated;
}

int run_paper_check(bool list, const Output& out) {
  auto all = reference::checks();
  if (list) {
    for (const auto& c : all) std::cout << c.id << '\n';
    return kOk;
  }
  bool ok = true;
  io::json j = io::json::array();
  for (const auto& c : all) {
    reference::CheckResult r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    if (!r.pass && !r.informational) ok = false;
    const char* tag = r.pass ? "PASS" : (r.informational ? "INFO" : "FAIL");
    if (out.json)
      j.push_back({{"id", c.id}, {"status", tag}, {"detail", r.detail}});
    else
      std::cout << '[' << tag << "] " << c.id << ": " << c.description << "\n       " << r.detail << '\n';
  }
  if (out.json) print_json(j);
  return ok ? kOk : kViolated;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Randomized social choice: rules, lottery comparisons, efficiency and participation audits"};
  app.require_subcommand(1);
  app.fallthrough();
  Output out;
  app.add_flag("--json", out.json, "Structured JSON output");
  app.add_option("--format", out.format, "Number format for lotteries")
      ->check(CLI::IsMember({"rational", "decimal"}));

  const std::vector<std::string> rules = {"constant", "sd", "rsd", "pp", "bo", "mr", "esr"};

  ComputeArgs compute;
  auto* c = app.add_subcommand("compute", "Evaluate a social decision scheme on a profile");
  c->add_option("--rule", compute.rule)->required()->check(CLI::IsMember(rules));
  c->add_option("--profile", compute.profile, "Profile file, or - for stdin")->required();
  c->add_option("--permutation", compute.permutation, "Agent order for serial dictatorship, e.g. 1,2,3");
  c->add_flag("--tree", compute.tree, "Print the MR recursion tree");
  c->add_flag("--trace", compute.trace, "Print the ESR event trace");

  CompareArgs cmp;
  auto* k = app.add_subcommand("compare", "Compare two lotteries under SD and/or DL");
  k->add_option("--order", cmp.order, "Preference list, e.g. \"a,{b,c},d\"");
  k->add_option("--profile", cmp.profile);
  k->add_option("--agent", cmp.agent);
  k->add_option("--p", cmp.p, "First lottery, e.g. \"a:2/3,d:1/3\"")->required();
  k->add_option("--q", cmp.q, "Second lottery")->required();
  k->add_option("--extension", cmp.extension)->check(CLI::IsMember({"sd", "dl", "both"}));

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Check a lottery for ex post or SD-efficiency");
  v->add_option("--profile", verify.profile)->required();
  v->add_option("--lottery", verify.lottery)->required();
  v->add_option("--property", verify.property)->required()->check(CLI::IsMember({"expost", "sd"}));

  AuditArgs audit;
  auto* au = app.add_subcommand("audit", "Audit participation for one agent or all agents");
  au->add_option("--rule", audit.rule)->required()->check(CLI::IsMember(rules));
  au->add_option("--profile", audit.profile)->required();
  au->add_option("--permutation", audit.permutation);
  au->add_option("--agent", audit.agent);
  au->add_flag("--all-agents", audit.all_agents);
  au->add_option("--notion", audit.notion)->check(CLI::IsMember({"participation", "strong", "very-strong"}));
  au->add_option("--extension", audit.extension)->check(CLI::IsMember({"sd", "dl"}));

  AuditSpArgs sp;
  auto* asp = app.add_subcommand("audit-sp", "Audit strategyproofness for one agent by enumerating misreports");
  asp->add_option("--rule", sp.rule)->required()->check(CLI::IsMember(rules));
  asp->add_option("--profile", sp.profile)->required();
  asp->add_option("--permutation", sp.permutation);
  asp->add_option("--agent", sp.agent)->required();
  asp->add_option("--extension", sp.extension)->check(CLI::IsMember({"sd", "dl"}));

  SearchArgs srch;
  auto* s = app.add_subcommand("search", "Exhaustively search small profiles for property violations");
  s->add_option("--rule", srch.rule)->required()->check(CLI::IsMember(rules));
  s->add_option("--property", srch.property)
      ->required()
      ->check(CLI::IsMember({"participation", "strong", "very-strong", "expost", "sd-efficiency", "strategyproofness"}));
  s->add_option("--extension", srch.extension)->check(CLI::IsMember({"sd", "dl"}));
  s->add_option("--min-agents", srch.min_agents);
  s->add_option("--max-agents", srch.max_agents);
  s->add_option("--min-alts", srch.min_alts);
  s->add_option("--max-alts", srch.max_alts);
  s->add_option("--shard", srch.shard, "k/K: process every K-th instance starting at k");
  s->add_option("--budget", srch.budget, "Maximum instances (0 = unlimited)");
  s->add_option("--max-violations", srch.max_violations, "Stop after this many violations (0 = unlimited)");
  s->add_option("--show", srch.show, "Violations to print");
  s->add_flag("--no-canonicalize", srch.no_canonicalize, "Enumerate ordered agent tuples instead of multisets");

  bool list = false;
  auto* pc = app.add_subcommand("paper-check", "Replay the reference worked examples");
  pc->add_flag("--list", list, "List check ids without running them");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*c) return run_compute(compute, out);
    if (*k) return run_compare(cmp, out);
    if (*v) return run_verify(verify, out);
    if (*au) return run_audit(audit, out);
    if (*asp) return run_audit_sp(sp, out);
    if (*s) return run_search(srch, out);
    if (*pc) return run_paper_check(list, out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
