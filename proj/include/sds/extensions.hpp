#pragma once

// Lottery extensions: stochastic dominance (SD) and downward lexicographic (DL).

#include <sds/prefs.hpp>

#include <optional>
#include <string>
#include <vector>

namespace sds {

enum class Comparison { StrictlyPrefers, Indifferent, StrictlyDispreferred, Incomparable };
enum class Extension { SD, DL };

inline std::string to_string(Comparison c) {
  switch (c) {
    case Comparison::StrictlyPrefers: return "strictly-prefers";
    case Comparison::Indifferent: return "indifferent";
    case Comparison::StrictlyDispreferred: return "strictly-dispreferred";
    case Comparison::Incomparable: return "incomparable";
  }
  return "?";
}

inline std::string to_string(Extension e) { return e == Extension::SD ? "sd" : "dl"; }

inline Comparison reverse(Comparison c) {
  switch (c) {
    case Comparison::StrictlyPrefers: return Comparison::StrictlyDispreferred;
    case Comparison::StrictlyDispreferred: return Comparison::StrictlyPrefers;
    default: return c;
  }
}

inline bool weakly_prefers(Comparison c) {
  return c == Comparison::StrictlyPrefers || c == Comparison::Indifferent;
}

namespace detail {

inline void check_domain(const WeakOrder& order, const Lottery& p, const Lottery& q) {
  if (!(p.alternatives() == q.alternatives())) throw DomainError("lotteries over different alternatives");
  if (order.domain() != p.alternatives().full()) throw DomainError("order and lottery domains differ");
}

}  // namespace detail

// Probability of each equivalence class, most preferred first.
inline std::vector<Rational> class_masses(const WeakOrder& order, const Lottery& p) {
  std::vector<Rational> out;
  out.reserve(order.num_classes());
  for (AltSet c : order.classes()) out.push_back(p.mass(c));
  return out;
}

// Compares p against q by the cumulative class masses p(E1 ∪ ... ∪ El).
inline Comparison sd_compare(const WeakOrder& order, const Lottery& p, const Lottery& q) {
  detail::check_domain(order, p, q);
  bool p_above = false, q_above = false;
  Rational cp = 0, cq = 0;
  for (AltSet c : order.classes()) {
    cp += p.mass(c);
    cq += q.mass(c);
    if (cp > cq) p_above = true;
    if (cq > cp) q_above = true;
  }
  if (p_above && q_above) return Comparison::Incomparable;
  if (p_above) return Comparison::StrictlyPrefers;
  if (q_above) return Comparison::StrictlyDispreferred;
  return Comparison::Indifferent;
}

// First class whose mass differs decides; never Incomparable.
inline Comparison dl_compare(const WeakOrder& order, const Lottery& p, const Lottery& q) {
  detail::check_domain(order, p, q);
  for (AltSet c : order.classes()) {
    Rational mp = p.mass(c), mq = q.mass(c);
    if (mp > mq) return Comparison::StrictlyPrefers;
    if (mp < mq) return Comparison::StrictlyDispreferred;
  }
  return Comparison::Indifferent;
}

inline Comparison compare(Extension ext, const WeakOrder& order, const Lottery& p, const Lottery& q) {
  return ext == Extension::SD ? sd_compare(order, p, q) : dl_compare(order, p, q);
}

struct Improvement {
  bool exists = false;
  std::optional<Lottery> witness;
};

// Is there any lottery the agent strictly prefers to q? Under both SD and DL this
// holds iff q(E1) < 1. The witness keeps q's mass on E1 and moves everything else
// onto the lowest-id member of E1.
inline Improvement exists_strict_improvement(const WeakOrder& order, const Lottery& q, Extension ext) {
  if (order.domain() != q.alternatives().full()) throw DomainError("order and lottery domains differ");
  AltSet top = order.top();
  Rational top_mass = q.mass(top);
  if (top_mass == 1) return {};

  std::vector<Rational> probs(q.size(), Rational(0));
  top.for_each([&](std::size_t i) { probs[i] = q[i]; });
  probs[top.front()] += 1 - top_mass;
  Lottery witness(q.alternatives(), std::move(probs));
  if (compare(ext, order, witness, q) != Comparison::StrictlyPrefers)
    throw std::logic_error("improvement witness is not strictly preferred");
  return {true, std::move(witness)};
}

}  // namespace sds
