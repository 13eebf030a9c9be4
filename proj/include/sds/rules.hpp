#pragma once

// Simple social decision schemes: constant, serial dictatorship, random serial
// dictatorship, proportional plurality and uniform randomization over Borda winners.

#include <sds/prefs.hpp>

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace sds {

// Enumeration budgets. Defaults can be overridden with SDS_RSD_MAX_AGENTS and
// SDS_MAX_ENUM_ALTS.
struct Limits {
  std::size_t rsd_max_agents = 10;
  std::size_t max_enum_alternatives = 5;

  static Limits from_env() {
    Limits l;
    auto read = [](const char* name, std::size_t& into) {
      if (const char* v = std::getenv(name)) {
        char* end = nullptr;
        unsigned long parsed = std::strtoul(v, &end, 10);
        if (end != v && *end == '\0' && parsed > 0) into = parsed;
      }
    };
    read("SDS_RSD_MAX_AGENTS", l.rsd_max_agents);
    read("SDS_MAX_ENUM_ALTS", l.max_enum_alternatives);
    return l;
  }
};

inline Lottery constant_rule(const Profile& profile) {
  return Lottery::uniform(profile.alternatives(), profile.alternatives().full());
}

struct SerialDictatorshipResult {
  Lottery lottery;
  AltSet final_set;
};

inline void check_permutation(const Profile& profile, const std::vector<AgentId>& permutation) {
  std::set<AgentId> seen(permutation.begin(), permutation.end());
  if (seen.size() != permutation.size() || permutation.size() != profile.num_agents())
    throw InvalidArgument("permutation must list every agent of the profile exactly once");
  for (AgentId a : permutation)
    if (!profile.contains(a)) throw InvalidArgument("permutation names unknown agent " + to_string(a));
}

// Each agent in turn keeps only its most preferred alternatives of the running set;
// the outcome is uniform over what survives.
inline SerialDictatorshipResult serial_dictatorship(const Profile& profile, const std::vector<AgentId>& permutation) {
  check_permutation(profile, permutation);
  AltSet s = profile.alternatives().full();
  for (AgentId a : permutation) s = profile.order(a).max_set(s);
  return {Lottery::uniform(profile.alternatives(), s), s};
}

namespace detail {

class RsdSolver {
 public:
  explicit RsdSolver(const Profile& profile) : alts_(profile.alternatives()) {
    std::map<WeakOrder, std::size_t> index;
    for (const auto& [agent, order] : profile.orders()) {
      auto [it, inserted] = index.emplace(order, orders_.size());
      if (inserted) {
        orders_.push_back(order);
        counts_.push_back(0);
      }
      ++counts_[it->second];
    }
  }

  std::vector<Rational> run() { return solve(counts_, alts_.full()); }

 private:
  // Average over which remaining agent dictates next; identical orders are merged
  // and weighted by multiplicity.
  std::vector<Rational> solve(std::vector<std::size_t>& counts, AltSet s) {
    auto key = std::make_pair(counts, s.bits());
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    std::size_t remaining = 0;
    for (auto c : counts) remaining += c;
    std::vector<Rational> out(alts_.size(), Rational(0));
    if (remaining == 0) {
      Rational share(1, static_cast<unsigned long>(s.size()));
      share.canonicalize();
      s.for_each([&](std::size_t i) { out[i] = share; });
    } else {
      for (std::size_t k = 0; k < orders_.size(); ++k) {
        if (counts[k] == 0) continue;
        Rational weight(static_cast<unsigned long>(counts[k]), static_cast<unsigned long>(remaining));
        weight.canonicalize();
        --counts[k];
        auto sub = solve(counts, orders_[k].max_set(s));
        ++counts[k];
        for (std::size_t i = 0; i < out.size(); ++i)
          if (sub[i] != 0) out[i] += weight * sub[i];
      }
    }
    memo_.emplace(std::move(key), out);
    return out;
  }

  Alternatives alts_;
  std::vector<WeakOrder> orders_;
  std::vector<std::size_t> counts_;
  std::map<std::pair<std::vector<std::size_t>, std::uint64_t>, std::vector<Rational>> memo_;
};

}  // namespace detail

// Exact average of serial dictatorship over all n! agent orderings.
inline Lottery rsd(const Profile& profile, const Limits& limits = {}) {
  if (profile.num_agents() > limits.rsd_max_agents)
    throw BudgetExceeded("RSD over " + std::to_string(profile.num_agents()) + " agents exceeds budget of " +
                         std::to_string(limits.rsd_max_agents));
  detail::RsdSolver solver(profile);
  return Lottery(profile.alternatives(), solver.run());
}

// Each agent spreads one point uniformly over its top class; p(a) = points(a) / n.
inline Lottery proportional_plurality(const Profile& profile) {
  std::vector<Rational> points(profile.num_alternatives(), Rational(0));
  for (const auto& [agent, order] : profile.orders()) {
    Rational share(1, static_cast<unsigned long>(order.top().size()));
    share.canonicalize();
    order.top().for_each([&](std::size_t i) { points[i] += share; });
  }
  Rational n(static_cast<unsigned long>(profile.num_agents()));
  for (auto& p : points) p /= n;
  return Lottery(profile.alternatives(), std::move(points));
}

// Symmetric Borda: one point per alternative ranked strictly below, half a point per
// other alternative in the same class.
inline std::vector<Rational> borda_scores(const Profile& profile) {
  std::vector<Rational> scores(profile.num_alternatives(), Rational(0));
  const Rational half(1, 2);
  for (const auto& [agent, order] : profile.orders()) {
    std::size_t below = profile.num_alternatives();
    for (AltSet c : order.classes()) {
      below -= c.size();
      Rational s = Rational(static_cast<unsigned long>(below)) + half * static_cast<unsigned long>(c.size() - 1);
      c.for_each([&](std::size_t i) { scores[i] += s; });
    }
  }
  return scores;
}

inline AltSet borda_winners(const Profile& profile) {
  auto scores = borda_scores(profile);
  Rational best = *std::max_element(scores.begin(), scores.end());
  AltSet winners;
  for (std::size_t i = 0; i < scores.size(); ++i)
    if (scores[i] == best) winners.insert(i);
  return winners;
}

inline Lottery borda_uniform(const Profile& profile) {
  return Lottery::uniform(profile.alternatives(), borda_winners(profile));
}

}  // namespace sds
