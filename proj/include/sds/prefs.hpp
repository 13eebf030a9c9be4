#pragma once

// Core domain types: alternatives, agents, weak orders, profiles and lotteries,
// plus the profile/lottery text formats.

#include <sds/errors.hpp>
#include <sds/rational.hpp>

#include <algorithm>
#include <bit>
#include <cctype>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sds {

inline constexpr std::size_t kMaxAlternatives = 64;

// A subset of a profile's alternatives, addressed by index into `Alternatives`.
class AltSet {
 public:
  constexpr AltSet() = default;
  constexpr explicit AltSet(std::uint64_t bits) : bits_(bits) {}

  static constexpr AltSet single(std::size_t index) { return AltSet(std::uint64_t{1} << index); }
  static constexpr AltSet first_n(std::size_t n) {
    return AltSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool contains(std::size_t index) const { return (bits_ >> index) & 1U; }
  constexpr bool subset_of(AltSet other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr bool intersects(AltSet other) const { return (bits_ & other.bits_) != 0; }

  // Lowest index in the set; the set must be nonempty.
  constexpr std::size_t front() const { return static_cast<std::size_t>(std::countr_zero(bits_)); }

  void insert(std::size_t index) { bits_ |= std::uint64_t{1} << index; }
  void erase(std::size_t index) { bits_ &= ~(std::uint64_t{1} << index); }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
    return out;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) f(static_cast<std::size_t>(std::countr_zero(b)));
  }

  friend constexpr AltSet operator&(AltSet a, AltSet b) { return AltSet(a.bits_ & b.bits_); }
  friend constexpr AltSet operator|(AltSet a, AltSet b) { return AltSet(a.bits_ | b.bits_); }
  friend constexpr AltSet operator-(AltSet a, AltSet b) { return AltSet(a.bits_ & ~b.bits_); }
  friend constexpr bool operator==(AltSet, AltSet) = default;
  friend constexpr auto operator<=>(AltSet, AltSet) = default;

 private:
  std::uint64_t bits_ = 0;
};

inline bool valid_alternative_id(std::string_view id) {
  if (id.empty()) return false;
  return std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
  });
}

// The alternative universe of a profile. Names are kept sorted, so index order is
// lexicographic id order. Cheap to copy (shared immutable storage).
class Alternatives {
 public:
  explicit Alternatives(std::vector<std::string> names) {
    std::sort(names.begin(), names.end());
    if (names.empty()) throw InvalidArgument("alternative set must be nonempty");
    if (names.size() > kMaxAlternatives)
      throw InvalidArgument("at most " + std::to_string(kMaxAlternatives) + " alternatives supported");
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (!valid_alternative_id(names[i])) throw InvalidArgument("invalid alternative id '" + names[i] + "'");
      if (i > 0 && names[i] == names[i - 1]) throw InvalidArgument("duplicate alternative '" + names[i] + "'");
    }
    names_ = std::make_shared<const std::vector<std::string>>(std::move(names));
  }

  // a, b, c, ... (then x26, x27, ... past z); used by enumeration.
  static Alternatives first(std::size_t m) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < m; ++i)
      names.push_back(i < 26 ? std::string(1, static_cast<char>('a' + i)) : "x" + std::to_string(i));
    return Alternatives(std::move(names));
  }

  std::size_t size() const { return names_->size(); }
  const std::string& name(std::size_t index) const { return names_->at(index); }
  const std::vector<std::string>& names() const { return *names_; }
  AltSet full() const { return AltSet::first_n(size()); }

  std::optional<std::size_t> index_of(std::string_view id) const {
    auto it = std::lower_bound(names_->begin(), names_->end(), id);
    if (it == names_->end() || *it != id) return std::nullopt;
    return static_cast<std::size_t>(it - names_->begin());
  }

  std::size_t require(std::string_view id) const {
    auto idx = index_of(id);
    if (!idx) throw DomainError("unknown alternative '" + std::string(id) + "'");
    return *idx;
  }

  AltSet set_of(const std::vector<std::string>& ids) const {
    AltSet s;
    for (const auto& id : ids) s.insert(require(id));
    return s;
  }

  // "{a,b}" with members in id order.
  std::string render(AltSet s) const {
    std::string out = "{";
    bool first = true;
    s.for_each([&](std::size_t i) {
      if (!first) out += ',';
      out += name(i);
      first = false;
    });
    return out + "}";
  }

  friend bool operator==(const Alternatives& a, const Alternatives& b) {
    return a.names_ == b.names_ || *a.names_ == *b.names_;
  }

 private:
  std::shared_ptr<const std::vector<std::string>> names_;
};

struct AgentId {
  int value = 0;

  friend constexpr bool operator==(AgentId, AgentId) = default;
  friend constexpr auto operator<=>(AgentId, AgentId) = default;
};

inline std::string to_string(AgentId a) { return std::to_string(a.value); }

// An agent's preference: an ordered partition of `domain()` into equivalence classes,
// most preferred first.
class WeakOrder {
 public:
  explicit WeakOrder(std::vector<AltSet> classes) : classes_(std::move(classes)) {
    if (classes_.empty()) throw InvalidArgument("weak order needs at least one class");
    for (AltSet c : classes_) {
      if (c.empty()) throw InvalidArgument("weak order classes must be nonempty");
      if (c.intersects(domain_)) throw InvalidArgument("weak order classes must be disjoint");
      domain_ = domain_ | c;
    }
  }

  const std::vector<AltSet>& classes() const { return classes_; }
  std::size_t num_classes() const { return classes_.size(); }
  AltSet domain() const { return domain_; }
  AltSet top() const { return classes_.front(); }

  // Union of the first `count` classes.
  AltSet prefix(std::size_t count) const {
    AltSet s;
    for (std::size_t l = 0; l < count && l < classes_.size(); ++l) s = s | classes_[l];
    return s;
  }

  std::size_t class_index(std::size_t alt) const {
    for (std::size_t l = 0; l < classes_.size(); ++l)
      if (classes_[l].contains(alt)) return l;
    throw DomainError("alternative not ranked by this order");
  }

  bool prefers(std::size_t a, std::size_t b) const { return class_index(a) < class_index(b); }
  bool indifferent(std::size_t a, std::size_t b) const { return class_index(a) == class_index(b); }

  bool is_strict() const {
    return std::all_of(classes_.begin(), classes_.end(), [](AltSet c) { return c.size() == 1; });
  }
  bool is_dichotomous() const { return classes_.size() == 2; }

  // Intersect each class with `subset`, drop empty classes, keep class order.
  WeakOrder restrict(AltSet subset) const {
    if (subset.empty()) throw InvalidArgument("restrict: empty alternative set");
    if (!subset.subset_of(domain_)) throw DomainError("restrict: set not contained in the order's domain");
    std::vector<AltSet> out;
    for (AltSet c : classes_)
      if (AltSet r = c & subset; !r.empty()) out.push_back(r);
    return WeakOrder(std::move(out));
  }

  // Most preferred members of `subset`.
  AltSet max_set(AltSet subset) const {
    if (subset.empty()) throw InvalidArgument("max_set: empty alternative set");
    if (!subset.subset_of(domain_)) throw DomainError("max_set: set not contained in the order's domain");
    for (AltSet c : classes_)
      if (AltSet r = c & subset; !r.empty()) return r;
    return {};  // unreachable: subset is nonempty and inside the domain
  }

  friend bool operator==(const WeakOrder&, const WeakOrder&) = default;
  friend auto operator<=>(const WeakOrder& a, const WeakOrder& b) {
    return std::lexicographical_compare_three_way(a.classes_.begin(), a.classes_.end(), b.classes_.begin(),
                                                  b.classes_.end());
  }

 private:
  std::vector<AltSet> classes_;
  AltSet domain_;
};

inline WeakOrder restrict(const WeakOrder& order, AltSet subset) { return order.restrict(subset); }
inline AltSet max_set(const WeakOrder& order, AltSet subset) { return order.max_set(subset); }

// "{a,b},c" (singleton classes bare).
inline std::string render_order(const Alternatives& alts, const WeakOrder& order) {
  std::string out;
  for (std::size_t l = 0; l < order.num_classes(); ++l) {
    if (l > 0) out += ',';
    AltSet c = order.classes()[l];
    out += c.size() == 1 ? alts.name(c.front()) : alts.render(c);
  }
  return out;
}

class Profile {
 public:
  Profile(Alternatives alternatives, std::map<AgentId, WeakOrder> orders)
      : alternatives_(std::move(alternatives)), orders_(std::move(orders)) {
    if (orders_.empty()) throw InvalidArgument("profile needs at least one agent");
    for (const auto& [agent, order] : orders_) {
      if (agent.value <= 0) throw InvalidArgument("agent ids must be positive");
      if (order.domain() != alternatives_.full())
        throw InvalidArgument("order of agent " + to_string(agent) + " does not rank every alternative");
    }
  }

  const Alternatives& alternatives() const { return alternatives_; }
  const std::map<AgentId, WeakOrder>& orders() const { return orders_; }
  std::size_t num_agents() const { return orders_.size(); }
  std::size_t num_alternatives() const { return alternatives_.size(); }
  bool contains(AgentId agent) const { return orders_.count(agent) != 0; }

  std::vector<AgentId> agents() const {
    std::vector<AgentId> out;
    for (const auto& entry : orders_) out.push_back(entry.first);
    return out;
  }

  const WeakOrder& order(AgentId agent) const {
    auto it = orders_.find(agent);
    if (it == orders_.end()) throw InvalidArgument("unknown agent " + to_string(agent));
    return it->second;
  }

  Profile remove_agent(AgentId agent) const {
    if (!contains(agent)) throw InvalidArgument("unknown agent " + to_string(agent));
    if (orders_.size() < 2) throw InvalidArgument("cannot remove the last agent of a profile");
    auto orders = orders_;
    orders.erase(agent);
    return Profile(alternatives_, std::move(orders));
  }

  Profile with_order(AgentId agent, WeakOrder order) const {
    auto orders = orders_;
    orders.insert_or_assign(agent, std::move(order));
    return Profile(alternatives_, std::move(orders));
  }

  friend bool operator==(const Profile&, const Profile&) = default;

 private:
  Alternatives alternatives_;
  std::map<AgentId, WeakOrder> orders_;
};

inline Profile remove_agent(const Profile& profile, AgentId agent) { return profile.remove_agent(agent); }

// A probability distribution over a profile's alternatives; entries sum to exactly 1.
class Lottery {
 public:
  Lottery(Alternatives alternatives, std::vector<Rational> probs)
      : alternatives_(std::move(alternatives)), probs_(std::move(probs)) {
    if (probs_.size() != alternatives_.size()) throw DomainError("lottery size does not match alternatives");
    Rational total = 0;
    for (auto& p : probs_) {
      p.canonicalize();
      if (p < 0) throw InvalidArgument("lottery has a negative probability");
      total += p;
    }
    if (total != 1) throw InvalidArgument("lottery probabilities sum to " + to_string(total) + ", not 1");
  }

  static Lottery uniform(const Alternatives& alternatives, AltSet over) {
    if (over.empty()) throw InvalidArgument("uniform lottery over an empty set");
    std::vector<Rational> probs(alternatives.size(), Rational(0));
    Rational share(1, static_cast<unsigned long>(over.size()));
    share.canonicalize();
    over.for_each([&](std::size_t i) { probs[i] = share; });
    return Lottery(alternatives, std::move(probs));
  }

  static Lottery degenerate(const Alternatives& alternatives, std::size_t alt) {
    return uniform(alternatives, AltSet::single(alt));
  }

  const Alternatives& alternatives() const { return alternatives_; }
  const std::vector<Rational>& probabilities() const { return probs_; }
  std::size_t size() const { return probs_.size(); }
  const Rational& operator[](std::size_t alt) const { return probs_.at(alt); }
  const Rational& probability(std::string_view id) const { return probs_[alternatives_.require(id)]; }

  Rational mass(AltSet subset) const {
    if (!subset.subset_of(alternatives_.full())) throw DomainError("class mass over alternatives outside the lottery");
    Rational m = 0;
    subset.for_each([&](std::size_t i) { m += probs_[i]; });
    return m;
  }

  AltSet support() const {
    AltSet s;
    for (std::size_t i = 0; i < probs_.size(); ++i)
      if (probs_[i] > 0) s.insert(i);
    return s;
  }

  friend bool operator==(const Lottery&, const Lottery&) = default;

 private:
  Alternatives alternatives_;
  std::vector<Rational> probs_;
};

inline Rational lottery_class_mass(const Lottery& p, AltSet subset) { return p.mass(subset); }

// ---------------------------------------------------------------------------
// Text formats

namespace detail {

class LineCursor {
 public:
  LineCursor(std::string_view text, std::size_t line) : text_(text), line_(line) {}

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\r')) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  std::size_t column() const { return pos_ + 1; }
  std::size_t line() const { return line_; }

  [[noreturn]] void fail(const std::string& message) const { throw ParseError(line_, column(), message); }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  template <typename Pred>
  std::string_view take_while(Pred pred) {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && pred(text_[pos_])) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  std::string alternative() {
    auto id = take_while([](char c) { return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_'; });
    if (id.empty()) fail("expected alternative id [a-z0-9_]+");
    return std::string(id);
  }

  std::string_view rest() {
    skip_ws();
    return text_.substr(pos_);
  }

 private:
  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

struct RawOrder {
  std::size_t line;
  std::size_t agent_column;
  int agent;
  std::vector<std::vector<std::pair<std::string, std::size_t>>> classes;  // (id, column)
};

}  // namespace detail

// Grammar (one agent per line, "#" comments, optional "alternatives:" header):
//   line  := agent-id ":" class ("," class)*
//   class := "{" alt ("," alt)* "}" | alt
inline Profile parse_profile(std::string_view text) {
  std::optional<std::vector<std::string>> header;
  std::vector<detail::RawOrder> raw;
  std::size_t header_line = 0;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    detail::LineCursor cur(line, line_no);
    if (cur.at_end()) {
      if (end == text.size()) break;
      continue;
    }

    if (std::isalpha(static_cast<unsigned char>(cur.peek()))) {
      auto word = cur.take_while([](char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; });
      if (word != "alternatives") cur.fail("expected agent id or 'alternatives:' header");
      if (header) cur.fail("duplicate 'alternatives:' header");
      if (!raw.empty()) cur.fail("'alternatives:' header must precede agent lines");
      cur.expect(':');
      std::vector<std::string> alts;
      std::set<std::string> seen;
      do {
        std::size_t col = cur.column();
        auto id = cur.alternative();
        if (!seen.insert(id).second)
          throw ParseError(line_no, col, "duplicate alternative '" + id + "' in header");
        alts.push_back(id);
      } while (cur.accept(','));
      if (!cur.at_end()) cur.fail("unexpected trailing input");
      header = std::move(alts);
      header_line = line_no;
      if (end == text.size()) break;
      continue;
    }

    detail::RawOrder order{line_no, 0, 0, {}};
    cur.skip_ws();
    order.agent_column = cur.column();
    auto digits = cur.take_while([](char c) { return c >= '0' && c <= '9'; });
    if (digits.empty() || digits[0] == '0') cur.fail("expected agent id [1-9][0-9]*");
    if (digits.size() > 9) cur.fail("agent id too large");
    order.agent = std::stoi(std::string(digits));
    cur.expect(':');
    do {
      std::vector<std::pair<std::string, std::size_t>> cls;
      if (cur.accept('{')) {
        do {
          std::size_t col = cur.column();
          cls.emplace_back(cur.alternative(), col);
        } while (cur.accept(','));
        cur.expect('}');
      } else {
        std::size_t col = cur.column();
        cls.emplace_back(cur.alternative(), col);
      }
      order.classes.push_back(std::move(cls));
    } while (cur.accept(','));
    if (!cur.at_end()) cur.fail("unexpected trailing input");
    raw.push_back(std::move(order));
    if (end == text.size()) break;
  }

  if (raw.empty()) throw ParseError(line_no == 0 ? 1 : line_no, 1, "profile has no agents");

  std::vector<std::string> names;
  if (header) {
    names = *header;
  } else {
    std::set<std::string> all;
    for (const auto& r : raw)
      for (const auto& cls : r.classes)
        for (const auto& [id, col] : cls) all.insert(id);
    names.assign(all.begin(), all.end());
  }
  if (names.size() > kMaxAlternatives)
    throw ParseError(header ? header_line : 1, 1, "too many alternatives");
  Alternatives alts(names);

  std::map<AgentId, WeakOrder> orders;
  for (const auto& r : raw) {
    AltSet seen;
    std::vector<AltSet> classes;
    for (const auto& cls : r.classes) {
      AltSet c;
      for (const auto& [id, col] : cls) {
        auto idx = alts.index_of(id);
        if (!idx) throw ParseError(r.line, col, "alternative '" + id + "' not declared in header");
        if (seen.contains(*idx)) throw ParseError(r.line, col, "duplicate alternative in order: '" + id + "'");
        seen.insert(*idx);
        c.insert(*idx);
      }
      classes.push_back(c);
    }
    if (seen != alts.full()) {
      AltSet missing = alts.full() - seen;
      throw ParseError(r.line, 1,
                       "incomplete order: agent " + std::to_string(r.agent) + " omits " + alts.render(missing));
    }
    if (orders.count(AgentId{r.agent}))
      throw ParseError(r.line, r.agent_column, "duplicate agent id " + std::to_string(r.agent));
    orders.emplace(AgentId{r.agent}, WeakOrder(std::move(classes)));
  }
  return Profile(std::move(alts), std::move(orders));
}

// Canonical form: header line, then agents in id order.
inline std::string render_profile(const Profile& profile) {
  const auto& alts = profile.alternatives();
  std::string out = "alternatives: ";
  for (std::size_t i = 0; i < alts.size(); ++i) out += (i ? "," : "") + alts.name(i);
  out += '\n';
  for (const auto& [agent, order] : profile.orders())
    out += to_string(agent) + ": " + render_order(alts, order) + '\n';
  return out;
}

enum class NumberFormat { Rational, Decimal };

// "a: 5/18, b: 0, c: 4/9" in id order.
inline std::string render_lottery(const Lottery& p, NumberFormat format = NumberFormat::Rational) {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ", ";
    out += p.alternatives().name(i) + ": " +
           (format == NumberFormat::Rational ? to_string(p[i]) : to_decimal(p[i], 6));
  }
  return out;
}

// Parses "a: 1/2, b: 1/2" against `alts`; unlisted alternatives get probability 0.
inline Lottery parse_lottery(std::string_view text, const Alternatives& alts) {
  detail::LineCursor cur(text, 1);
  std::vector<Rational> probs(alts.size(), Rational(0));
  AltSet seen;
  if (cur.at_end()) cur.fail("empty lottery literal");
  do {
    std::size_t col = cur.column();
    auto id = cur.alternative();
    auto idx = alts.index_of(id);
    if (!idx) throw ParseError(1, col, "unknown alternative '" + id + "'");
    if (seen.contains(*idx)) throw ParseError(1, col, "alternative '" + id + "' listed twice");
    seen.insert(*idx);
    cur.expect(':');
    auto num = cur.take_while([](char c) {
      return std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '.' || c == '-' || c == '+';
    });
    try {
      probs[*idx] = parse_rational(num);
    } catch (const InvalidArgument& e) {
      cur.fail(e.what());
    }
  } while (cur.accept(','));
  if (!cur.at_end()) cur.fail("unexpected trailing input");
  try {
    return Lottery(alts, std::move(probs));
  } catch (const InvalidArgument& e) {
    throw ParseError(1, 1, e.what());
  }
}

}  // namespace sds
