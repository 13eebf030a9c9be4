#include "support.hpp"

#include <chrono>

#include <gtest/gtest.h>

namespace sds {
namespace {

using namespace sds::testing;

// Oracle: every nonempty intersection over every subfamily, then the minimal ones.
std::set<AltSet> ims_brute_force(const std::vector<AltSet>& sets) {
  std::set<AltSet> all;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << sets.size()); ++mask) {
    AltSet x = AltSet::first_n(64);
    for (std::size_t k = 0; k < sets.size(); ++k)
      if ((mask >> k) & 1U) x = x & sets[k];
    if (!x.empty()) all.insert(x);
  }
  std::set<AltSet> minimal;
  for (AltSet x : all) {
    bool is_min = true;
    for (AltSet y : all)
      if (y != x && y.subset_of(x)) is_min = false;
    if (is_min) minimal.insert(x);
  }
  return minimal;
}

std::set<AltSet> as_set(const std::vector<AltSet>& v) { return {v.begin(), v.end()}; }

TEST(GeneralizedPlurality, FigureProfile) {
  Profile fig = parse_profile(kFigProfile);
  const auto& alts = fig.alternatives();
  auto t = generalized_plurality(fig, alts.full());
  EXPECT_EQ(t.s1, (std::vector<unsigned>{2, 2, 2, 1, 1}));
  EXPECT_EQ(t.top.at({1}), alts.set_of({"a", "b", "c"}));
  EXPECT_EQ(t.top.at({2}), alts.set_of({"a", "b"}));
  EXPECT_EQ(t.top.at({3}), alts.set_of({"c"}));
  EXPECT_EQ(t.t.at({1})[0], q(1, 3));
  EXPECT_EQ(t.t.at({2})[1], q(1, 2));
  EXPECT_EQ(t.t.at({3})[4], q(0));
  EXPECT_EQ(t.gamma, (std::vector<Rational>{q(5, 6), q(5, 6), q(4, 3), q(0), q(0)}));
}

TEST(GeneralizedPlurality, IndifferentAndSingleAgent) {
  Profile flat = parse_profile("1: {a,b,c}\n2: {a,b,c}");
  auto t = generalized_plurality(flat, flat.alternatives().full());
  EXPECT_EQ(t.s1, (std::vector<unsigned>{2, 2, 2}));
  EXPECT_EQ(t.gamma, (std::vector<Rational>{q(2, 3), q(2, 3), q(2, 3)}));

  Profile one = parse_profile("1: b,a,c");
  auto u = generalized_plurality(one, one.alternatives().full());
  EXPECT_EQ(u.s1, (std::vector<unsigned>{0, 1, 0}));
  EXPECT_EQ(u.gamma, (std::vector<Rational>{q(0), q(1), q(0)}));
  EXPECT_THROW(generalized_plurality(one, AltSet{}), InvalidArgument);
}

TEST(GeneralizedPlurality, TableInvariants) {
  Rng rng(51);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t m = 1 + uniform_index(rng, 6);
    Profile p = random_profile(rng, 1 + uniform_index(rng, 5), m);
    AltSet s(1 + uniform_index(rng, (std::uint64_t{1} << m) - 1));
    auto t = generalized_plurality(p, s);
    for (std::size_t a = 0; a < m; ++a) {
      unsigned count = 0;
      for (const auto& [id, o] : p.orders()) count += o.max_set(s).contains(a);
      ASSERT_EQ(t.s1[a], count);
    }
    Rational gamma_total = 0;
    for (const auto& g : t.gamma) gamma_total += g;
    ASSERT_EQ(gamma_total, static_cast<long>(p.num_agents()));
    for (const auto& [id, o] : p.orders()) {
      AltSet top = o.max_set(s), chosen = t.top.at(id);
      ASSERT_TRUE(!chosen.empty() && chosen.subset_of(top));
      unsigned best = 0;
      top.for_each([&](std::size_t a) { best = std::max(best, t.s1[a]); });
      chosen.for_each([&](std::size_t a) { ASSERT_EQ(t.s1[a], best); });
      top.for_each([&](std::size_t a) { ASSERT_EQ(chosen.contains(a), t.s1[a] == best); });
    }
  }
}

TEST(Ims, Examples) {
  Alternatives alts = Alternatives::first(5);
  auto got = ims({alts.set_of({"a", "b", "c", "d"}), alts.set_of({"a", "b"}), alts.set_of({"c", "e"})});
  EXPECT_EQ(as_set(got), (std::set<AltSet>{alts.set_of({"a", "b"}), alts.set_of({"c"})}));
  EXPECT_EQ(ims({alts.set_of({"b", "d"})}), std::vector<AltSet>{alts.set_of({"b", "d"})});
  EXPECT_EQ(as_set(ims({alts.set_of({"a"}), alts.set_of({"b"})})),
            (std::set<AltSet>{alts.set_of({"a"}), alts.set_of({"b"})}));
  EXPECT_THROW(ims({}), InvalidArgument);
}

TEST(Ims, MatchesSubfamilyIntersections) {
  Rng rng(52);
  for (int trial = 0; trial < 1000; ++trial) {
    std::size_t m = 1 + uniform_index(rng, 6), k = 1 + uniform_index(rng, 5);
    std::vector<AltSet> sets;
    for (std::size_t i = 0; i < k; ++i) sets.emplace_back(1 + uniform_index(rng, (std::uint64_t{1} << m) - 1));
    auto got = ims(sets);
    ASSERT_EQ(as_set(got), ims_brute_force(sets));
    ASSERT_EQ(got.size(), as_set(got).size());
    for (std::size_t i = 0; i < got.size(); ++i)
      for (std::size_t j = i + 1; j < got.size(); ++j) ASSERT_FALSE(got[i].intersects(got[j]));
  }
}

TEST(Mr, FigureProfile) {
  Profile fig = parse_profile(kFigProfile);
  const auto& alts = fig.alternatives();
  auto r = mr(fig);
  EXPECT_EQ(r.lottery, lot(fig, "a:10/18,b:0,c:8/18"));
  ASSERT_EQ(r.tree.children.size(), 2u);
  EXPECT_EQ(r.tree.weight, q(1));
  EXPECT_EQ(r.tree.children[0].set, alts.set_of({"a", "b"}));
  EXPECT_EQ(r.tree.children[0].weight, q(10, 18));
  EXPECT_EQ(r.tree.children[1].set, alts.set_of({"c"}));
  EXPECT_EQ(r.tree.children[1].weight, q(8, 18));
  ASSERT_EQ(r.tree.children[0].children.size(), 1u);
  EXPECT_EQ(r.tree.children[0].children[0].set, alts.set_of({"a"}));
  EXPECT_EQ(r.tree.children[0].children[0].weight, q(10, 18));
  EXPECT_EQ(r.tree.assignment[0], q(5, 18));
}

TEST(Mr, FigureProfileWithoutAgent2) {
  Profile fig = parse_profile(kFigProfile).remove_agent({2});
  EXPECT_EQ(mr(fig).lottery, lot(fig, "c:1"));
}

TEST(Mr, UnanimousTop) {
  Profile p = parse_profile("1: a,b,c\n2: a,b,c\n3: a,b,c");
  EXPECT_EQ(mr(p).lottery, lot(p, "a:1"));
}

TEST(Mr, TreeRendering) {
  Profile fig = parse_profile(kFigProfile);
  EXPECT_EQ(render_mr_tree(fig.alternatives(), mr(fig).tree),
            "{a,b,c,d,e} @ 1  [a: 5/18, b: 5/18, c: 4/9, d: 0, e: 0]\n"
            "  {a,b} @ 5/9  [a: 5/9, b: 0]\n"
            "    {a} @ 5/9  [a: 5/9]\n"
            "  {c} @ 4/9  [c: 4/9]\n");
}

void check_node(const MrNode& node, std::size_t depth, std::size_t m) {
  ASSERT_LE(depth, m);
  Rational total = 0;
  node.set.for_each([&](std::size_t a) { total += node.assignment[a]; });
  ASSERT_EQ(total, node.weight);
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    const auto& c = node.children[i];
    ASSERT_TRUE(c.set.subset_of(node.set) && c.set != node.set);
    Rational w = 0;
    c.set.for_each([&](std::size_t a) { w += node.assignment[a]; });
    ASSERT_EQ(c.weight, w);
    for (std::size_t j = i + 1; j < node.children.size(); ++j) ASSERT_FALSE(c.set.intersects(node.children[j].set));
    check_node(c, depth + 1, m);
  }
}

TEST(Mr, TreeInvariantsAndExPostEfficiency) {
  Rng rng(53);
  for (int trial = 0; trial < 500; ++trial) {
    std::size_t m = 1 + uniform_index(rng, 6);
    Profile p = random_profile(rng, 1 + uniform_index(rng, 5), m);
    auto r = mr(p);
    ASSERT_EQ(r.tree.weight, 1);
    check_node(r.tree, 0, m);
    ASSERT_TRUE(r.lottery.support().subset_of(pareto_optimal(p))) << render_profile(p);
  }
}

TEST(Mr, LargeProfileRunsQuickly) {
  Rng rng(54);
  Profile p = random_profile(rng, 20, 20);
  auto start = std::chrono::steady_clock::now();
  auto r = mr(p);
  auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_LT(elapsed, 1.0);
  EXPECT_EQ(r.lottery.mass(p.alternatives().full()), 1);
}

}  // namespace
}  // namespace sds
