#include "support.hpp"

#include <gtest/gtest.h>

namespace sds {
namespace {

using namespace sds::testing;

// Oracle: SD by per-alternative upper contours, straight from the definition.
Comparison sd_by_contours(const WeakOrder& o, const Lottery& p, const Lottery& q) {
  bool p_ge = true, q_ge = true;
  for (std::size_t y = 0; y < p.size(); ++y) {
    Rational mp = 0, mq = 0;
    for (std::size_t x = 0; x < p.size(); ++x)
      if (!o.prefers(y, x)) {
        mp += p[x];
        mq += q[x];
      }
    if (mp < mq) p_ge = false;
    if (mq < mp) q_ge = false;
  }
  if (p_ge && q_ge) return Comparison::Indifferent;
  if (p_ge) return Comparison::StrictlyPrefers;
  if (q_ge) return Comparison::StrictlyDispreferred;
  return Comparison::Incomparable;
}

TEST(SdCompare, Examples) {
  Profile ex = parse_profile(kExampleProfile);
  Lottery p = lot(ex, "a:2/3,d:1/3"), r = lot(ex, "a:1/2,c:1/2");
  EXPECT_EQ(sd_compare(ex.order({1}), p, r), Comparison::Incomparable);
  EXPECT_EQ(sd_compare(ex.order({1}), p, p), Comparison::Indifferent);

  Profile ab = parse_profile("1: a,b");
  EXPECT_EQ(sd_compare(ab.order({1}), lot(ab, "a:1"), lot(ab, "a:1/2,b:1/2")), Comparison::StrictlyPrefers);
}

TEST(DlCompare, Examples) {
  Profile ex = parse_profile(kExampleProfile);
  Lottery p = lot(ex, "a:2/3,d:1/3"), r = lot(ex, "a:1/2,c:1/2");
  EXPECT_EQ(dl_compare(ex.order({1}), p, r), Comparison::StrictlyPrefers);
  EXPECT_EQ(dl_compare(ex.order({1}), r, p), Comparison::StrictlyDispreferred);
  EXPECT_EQ(dl_compare(ex.order({1}), p, p), Comparison::Indifferent);

  Profile tie = parse_profile("1: {a,b},c");
  EXPECT_EQ(dl_compare(tie.order({1}), lot(tie, "a:1"), lot(tie, "a:1/2,b:1/2")), Comparison::Indifferent);
}

TEST(Compare, DomainMismatchThrows) {
  Profile ab = parse_profile("1: a,b");
  Alternatives abc = Alternatives::first(3);
  EXPECT_THROW(sd_compare(ab.order({1}), lot(abc, "a:1"), lot(abc, "b:1")), DomainError);
  EXPECT_THROW(dl_compare(ab.order({1}), lot(abc, "a:1"), lot(abc, "b:1")), DomainError);
}

TEST(SdCompare, MatchesUpperContourDefinition) {
  Rng rng(21);
  for (int trial = 0; trial < 3000; ++trial) {
    std::size_t m = 1 + uniform_index(rng, 5);
    Alternatives alts = Alternatives::first(m);
    WeakOrder o = random_order(rng, m);
    Lottery p = random_lottery(rng, alts, 3), r = random_lottery(rng, alts, 3);
    ASSERT_EQ(sd_compare(o, p, r), sd_by_contours(o, p, r));
  }
}

TEST(Extensions, DlCompleteRefinementAndAntisymmetry) {
  Rng rng(22);
  for (int trial = 0; trial < 5000; ++trial) {
    std::size_t m = 1 + uniform_index(rng, 5);
    Alternatives alts = Alternatives::first(m);
    WeakOrder o = random_order(rng, m);
    Lottery p = random_lottery(rng, alts, 2), r = random_lottery(rng, alts, 2);
    Comparison sd = sd_compare(o, p, r), dl = dl_compare(o, p, r);
    ASSERT_NE(dl, Comparison::Incomparable);
    if (sd == Comparison::StrictlyPrefers) { ASSERT_EQ(dl, Comparison::StrictlyPrefers); }
    if (sd == Comparison::Indifferent) { ASSERT_EQ(dl, Comparison::Indifferent); }
    ASSERT_EQ(sd_compare(o, r, p), reverse(sd));
    ASSERT_EQ(dl_compare(o, r, p), reverse(dl));
  }
}

TEST(Extensions, DlTransitive) {
  Rng rng(23);
  for (int trial = 0; trial < 3000; ++trial) {
    std::size_t m = 2 + uniform_index(rng, 4);
    Alternatives alts = Alternatives::first(m);
    WeakOrder o = random_order(rng, m);
    Lottery x = random_lottery(rng, alts, 2), y = random_lottery(rng, alts, 2), z = random_lottery(rng, alts, 2);
    if (weakly_prefers(dl_compare(o, x, y)) && weakly_prefers(dl_compare(o, y, z))) {
      ASSERT_TRUE(weakly_prefers(dl_compare(o, x, z)));
    }
    if (dl_compare(o, x, y) == Comparison::StrictlyPrefers && weakly_prefers(dl_compare(o, y, z))) {
      ASSERT_EQ(dl_compare(o, x, z), Comparison::StrictlyPrefers);
    }
  }
}

TEST(SdCompare, InvariantUnderPermutationWithinAClass) {
  Rng rng(24);
  for (int trial = 0; trial < 1000; ++trial) {
    std::size_t m = 2 + uniform_index(rng, 4);
    Alternatives alts = Alternatives::first(m);
    WeakOrder o = random_order(rng, m);
    // Permutation shuffling alternatives inside each class only.
    std::vector<std::size_t> perm(m);
    for (AltSet c : o.classes()) {
      auto idx = c.indices();
      auto shuffled = idx;
      std::shuffle(shuffled.begin(), shuffled.end(), rng);
      for (std::size_t k = 0; k < idx.size(); ++k) perm[idx[k]] = shuffled[k];
    }
    ASSERT_EQ(permute_order(o, perm), o);
    Lottery p = random_lottery(rng, alts), r = random_lottery(rng, alts);
    ASSERT_EQ(sd_compare(o, permute_lottery(p, perm), r), sd_compare(o, p, r));
    ASSERT_EQ(sd_compare(o, p, permute_lottery(r, perm)), sd_compare(o, p, r));
  }
}

TEST(StrictImprovement, Examples) {
  Profile esr4 = parse_profile(kEsr4Profile);
  Lottery half = lot(esr4, "a:1/2,b:1/2");
  for (Extension e : {Extension::SD, Extension::DL}) {
    auto imp = exists_strict_improvement(esr4.order({4}), half, e);
    ASSERT_TRUE(imp.exists);
    EXPECT_EQ(*imp.witness, lot(esr4, "b:1"));
  }
  Profile tie = parse_profile("1: {a,b},c");
  EXPECT_FALSE(exists_strict_improvement(tie.order({1}), lot(tie, "a:1/2,b:1/2"), Extension::SD).exists);
  Profile strict = parse_profile("1: a,b,c");
  EXPECT_FALSE(exists_strict_improvement(strict.order({1}), lot(strict, "a:1"), Extension::DL).exists);
}

TEST(StrictImprovement, WitnessKeepsTopClassMassAndTargetsLowestTopMember) {
  Profile p = parse_profile("1: {c,b},a,d");
  auto imp = exists_strict_improvement(p.order({1}), lot(p, "a:1/4,c:1/4,d:1/2"), Extension::SD);
  ASSERT_TRUE(imp.exists);
  EXPECT_EQ(*imp.witness, lot(p, "b:3/4,c:1/4"));
}

TEST(StrictImprovement, WitnessSoundAndNoImprovementWhenTopFull) {
  Rng rng(25);
  for (int trial = 0; trial < 400; ++trial) {
    std::size_t m = 1 + uniform_index(rng, 5);
    Alternatives alts = Alternatives::first(m);
    WeakOrder o = random_order(rng, m);
    Lottery base = random_lottery(rng, alts);
    if (trial % 3 == 0) base = Lottery::uniform(alts, o.top());
    for (Extension e : {Extension::SD, Extension::DL}) {
      auto imp = exists_strict_improvement(o, base, e);
      ASSERT_EQ(imp.exists, base.mass(o.top()) < 1);
      if (imp.exists) {
        ASSERT_TRUE(imp.witness);
        ASSERT_EQ(compare(e, o, *imp.witness, base), Comparison::StrictlyPrefers);
      } else {
        for (int k = 0; k < 1000; ++k)
          ASSERT_NE(compare(e, o, random_lottery(rng, alts), base), Comparison::StrictlyPrefers);
      }
    }
  }
}

}  // namespace
}  // namespace sds
