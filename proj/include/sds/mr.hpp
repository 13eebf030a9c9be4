#pragma once

// Maximal recursive rule (MR).
//
// At a node with alternative set S and weight v, every agent's preference is
// restricted to S. If all agents are indifferent over S the weight is split evenly.
// Otherwise each agent spreads one unit over the members of its top set in S that
// have the highest generalized plurality score s1; alternative a receives
// v * gamma(a) / n. The children are the inclusion-minimal intersections (IMS) of the
// agents' top sets, each recursed into with the mass it received. An alternative's
// final probability is its assignment at the deepest node that contains it.

#include <sds/prefs.hpp>

#include <algorithm>
#include <map>
#include <string>
#include <vector>

namespace sds {

struct ScoreTable {
  AltSet set;
  std::vector<unsigned> s1;                      // per alternative; 0 outside `set`
  std::map<AgentId, AltSet> top;                 // T(i)
  std::map<AgentId, std::vector<Rational>> t;    // t(i, a) = 1/|T(i)| on T(i)
  std::vector<Rational> gamma;                   // sums to n
};

inline ScoreTable generalized_plurality(const Profile& profile, AltSet s) {
  if (s.empty()) throw InvalidArgument("generalized plurality over an empty set");
  if (!s.subset_of(profile.alternatives().full())) throw DomainError("set outside the profile's alternatives");
  const std::size_t m = profile.num_alternatives();

  ScoreTable table{s, std::vector<unsigned>(m, 0), {}, {}, std::vector<Rational>(m, Rational(0))};
  std::map<AgentId, AltSet> maxima;
  for (const auto& [agent, order] : profile.orders()) {
    AltSet top = order.max_set(s);
    maxima.emplace(agent, top);
    top.for_each([&](std::size_t a) { ++table.s1[a]; });
  }
  for (const auto& [agent, top] : maxima) {
    unsigned best = 0;
    top.for_each([&](std::size_t a) { best = std::max(best, table.s1[a]); });
    AltSet chosen;
    top.for_each([&](std::size_t a) {
      if (table.s1[a] == best) chosen.insert(a);
    });
    Rational share(1, static_cast<unsigned long>(chosen.size()));
    share.canonicalize();
    std::vector<Rational> row(m, Rational(0));
    chosen.for_each([&](std::size_t a) {
      row[a] = share;
      table.gamma[a] += share;
    });
    table.top.emplace(agent, chosen);
    table.t.emplace(agent, std::move(row));
  }
  return table;
}

// Inclusion-minimal nonempty intersections of subfamilies of `sets`. For each
// alternative x covered by the family, X_x = ∩{A : x ∈ A} is the smallest member of
// the intersection closure containing x, so the minimal members are the minimal X_x.
// The result is pairwise disjoint and sorted by bitmask.
inline std::vector<AltSet> ims(const std::vector<AltSet>& sets) {
  if (sets.empty()) throw InvalidArgument("ims of an empty family");
  AltSet covered;
  for (AltSet a : sets) {
    if (a.empty()) throw InvalidArgument("ims: family members must be nonempty");
    covered = covered | a;
  }
  std::vector<AltSet> candidates;
  covered.for_each([&](std::size_t x) {
    AltSet meet(~std::uint64_t{0});
    for (AltSet a : sets)
      if (a.contains(x)) meet = meet & a;
    candidates.push_back(meet);
  });
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  std::vector<AltSet> out;
  for (AltSet c : candidates) {
    bool minimal = std::none_of(candidates.begin(), candidates.end(),
                                [&](AltSet other) { return other != c && other.subset_of(c); });
    if (minimal) out.push_back(c);
  }
  return out;
}

struct MrNode {
  AltSet set;
  Rational weight;
  std::vector<Rational> assignment;  // indexed by alternative; zero outside `set`
  std::vector<MrNode> children;
};

struct MrResult {
  Lottery lottery;
  MrNode tree;
};

namespace detail {

inline MrNode mr_node(const Profile& profile, AltSet s, const Rational& weight) {
  const auto& alts = profile.alternatives();
  MrNode node{s, weight, std::vector<Rational>(alts.size(), Rational(0)), {}};

  std::vector<AltSet> tops;
  bool all_indifferent = true;
  for (const auto& [agent, order] : profile.orders()) {
    tops.push_back(order.max_set(s));
    if (tops.back() != s) all_indifferent = false;
  }
  if (all_indifferent) {
    Rational share = weight / static_cast<unsigned long>(s.size());
    s.for_each([&](std::size_t a) { node.assignment[a] = share; });
    return node;
  }

  ScoreTable table = generalized_plurality(profile, s);
  const auto n = static_cast<unsigned long>(profile.num_agents());
  s.for_each([&](std::size_t a) { node.assignment[a] = weight * table.gamma[a] / n; });

  auto children = ims(tops);
  std::sort(children.begin(), children.end(),
            [&](AltSet x, AltSet y) { return alts.render(x) < alts.render(y); });
  for (AltSet child : children) {
    if (child == s) throw std::logic_error("MR child equals its parent set");
    Rational child_weight = 0;
    child.for_each([&](std::size_t a) { child_weight += node.assignment[a]; });
    node.children.push_back(mr_node(profile, child, child_weight));
  }
  return node;
}

inline void overwrite_from(const MrNode& node, std::vector<Rational>& probs) {
  node.set.for_each([&](std::size_t a) { probs[a] = node.assignment[a]; });
  for (const auto& child : node.children) overwrite_from(child, probs);
}

}  // namespace detail

inline MrResult mr(const Profile& profile) {
  MrNode root = detail::mr_node(profile, profile.alternatives().full(), Rational(1));
  std::vector<Rational> probs(profile.num_alternatives(), Rational(0));
  detail::overwrite_from(root, probs);
  return {Lottery(profile.alternatives(), std::move(probs)), std::move(root)};
}

// Indented tree, one node per line: "{a,b} @ 5/9  [a: 5/18, b: 5/18]".
inline std::string render_mr_tree(const Alternatives& alts, const MrNode& node, std::size_t depth = 0) {
  std::string out(depth * 2, ' ');
  out += alts.render(node.set) + " @ " + to_string(node.weight) + "  [";
  bool first = true;
  node.set.for_each([&](std::size_t a) {
    if (!first) out += ", ";
    out += alts.name(a) + ": " + to_string(node.assignment[a]);
    first = false;
  });
  out += "]\n";
  for (const auto& child : node.children) out += render_mr_tree(alts, child, depth + 1);
  return out;
}

}  // namespace sds
