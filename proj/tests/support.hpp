#pragma once

// Fixed-seed generators and shared fixtures for the test suites.

#include <sds/all.hpp>

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace sds::testing {

inline constexpr const char* kFigProfile = "1: {a,b,c,d},{e}\n2: {a,b},{c,d},{e}\n3: {c,e},{a},{d},{b}\n";
inline constexpr const char* kExampleProfile = "1: a,b,c,d\n2: {a,b},{c,d}\n3: {c,d},{a,b}\n";
inline constexpr const char* kEsr4Profile = "1: a,b\n2: a,b\n3: b,a\n4: b,a\n";
inline constexpr const char* kEsr6Profile =
    "1: {b,c,f},{a,d,e,g,h}\n"
    "2: {a,h},{c,d,e,f,g},{b}\n"
    "3: {b,c,d,e,h},{a,f,g}\n"
    "4: {a,d},{b,c,g},{e},{f,h}\n"
    "5: {a,d,e,f,h},{b,g},{c}\n"
    "6: {e,h},{a,c,f},{b,d,g}\n";
inline constexpr const char* kSerialProfile = "1: {a,b},c\n2: c,b,a\n3: c,b,a\n";

using Rng = std::mt19937_64;

inline Lottery lot(const Profile& p, const char* text) { return parse_lottery(text, p.alternatives()); }
inline Lottery lot(const Alternatives& alts, const char* text) { return parse_lottery(text, alts); }
inline Rational q(long n, long d = 1) { return make_rational(n, d); }

inline std::size_t uniform_index(Rng& rng, std::size_t bound) {
  return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng);
}

// Shuffled alternatives cut at random points into classes.
inline WeakOrder random_order(Rng& rng, std::size_t m) {
  std::vector<std::size_t> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<AltSet> classes;
  AltSet current;
  for (std::size_t k = 0; k < m; ++k) {
    current.insert(perm[k]);
    if (k + 1 == m || std::bernoulli_distribution(0.5)(rng)) {
      classes.push_back(current);
      current = AltSet{};
    }
  }
  return WeakOrder(classes);
}

inline WeakOrder random_strict_order(Rng& rng, std::size_t m) {
  std::vector<std::size_t> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<AltSet> classes;
  for (auto a : perm) classes.push_back(AltSet::single(a));
  return WeakOrder(classes);
}

inline Profile random_profile(Rng& rng, std::size_t n, std::size_t m) {
  std::map<AgentId, WeakOrder> orders;
  for (std::size_t i = 1; i <= n; ++i) orders.emplace(AgentId{static_cast<int>(i)}, random_order(rng, m));
  return Profile(Alternatives::first(m), std::move(orders));
}

// Small integer weights so that coincidences (ties, zeros) show up often.
inline Lottery random_lottery(Rng& rng, const Alternatives& alts, int max_weight = 4) {
  std::vector<long> w(alts.size());
  long total = 0;
  do {
    total = 0;
    for (auto& x : w) total += x = std::uniform_int_distribution<long>(0, max_weight)(rng);
  } while (total == 0);
  std::vector<Rational> probs;
  for (long x : w) probs.push_back(make_rational(x, total));
  return Lottery(alts, probs);
}

// Rename alternatives by `perm` (old index -> new index).
inline WeakOrder permute_order(const WeakOrder& o, const std::vector<std::size_t>& perm) {
  std::vector<AltSet> classes;
  for (AltSet c : o.classes()) {
    AltSet out;
    c.for_each([&](std::size_t a) { out.insert(perm[a]); });
    classes.push_back(out);
  }
  return WeakOrder(classes);
}

inline Profile permute_alternatives(const Profile& p, const std::vector<std::size_t>& perm) {
  std::map<AgentId, WeakOrder> orders;
  for (const auto& [id, o] : p.orders()) orders.emplace(id, permute_order(o, perm));
  return Profile(p.alternatives(), std::move(orders));
}

inline Lottery permute_lottery(const Lottery& l, const std::vector<std::size_t>& perm) {
  std::vector<Rational> probs(l.size());
  for (std::size_t a = 0; a < l.size(); ++a) probs[perm[a]] = l[a];
  return Lottery(l.alternatives(), probs);
}

// Relabel agents 1..n by `perm` (position k gets the order of agent perm[k]).
inline Profile permute_agents(const Profile& p, const std::vector<AgentId>& perm) {
  std::map<AgentId, WeakOrder> orders;
  int next = 1;
  for (AgentId a : perm) orders.emplace(AgentId{next++}, p.order(a));
  return Profile(p.alternatives(), std::move(orders));
}

}  // namespace sds::testing
