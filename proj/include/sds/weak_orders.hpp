#pragma once

// Enumeration of all weak orders (ordered set partitions) over small alternative sets.

#include <sds/prefs.hpp>
#include <sds/rules.hpp>

#include <string>
#include <vector>

namespace sds {

// Every ordered partition of `domain`, canonical order: the first class runs over the
// nonempty subsets of `domain` in increasing bitmask order, recursively.
inline std::vector<WeakOrder> enumerate_weak_orders(AltSet domain) {
  std::vector<WeakOrder> out;
  std::vector<AltSet> prefix;
  auto rec = [&](auto&& self, AltSet rest) -> void {
    if (rest.empty()) {
      out.emplace_back(prefix);
      return;
    }
    // Submasks of `rest` in increasing order.
    std::vector<AltSet> subs;
    for (std::uint64_t s = rest.bits();; s = (s - 1) & rest.bits()) {
      if (s == 0) break;
      subs.emplace_back(s);
    }
    for (auto it = subs.rbegin(); it != subs.rend(); ++it) {
      prefix.push_back(*it);
      self(self, rest - *it);
      prefix.pop_back();
    }
  };
  rec(rec, domain);
  return out;
}

inline std::vector<WeakOrder> enumerate_weak_orders(std::size_t m, const Limits& limits = {}) {
  if (m == 0) throw InvalidArgument("need at least one alternative");
  if (m > limits.max_enum_alternatives)
    throw BudgetExceeded("enumerating weak orders over " + std::to_string(m) + " alternatives exceeds budget of " +
                         std::to_string(limits.max_enum_alternatives));
  return enumerate_weak_orders(AltSet::first_n(m));
}

}  // namespace sds
