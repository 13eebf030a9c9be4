#include "support.hpp"

#include <gtest/gtest.h>

namespace sds {
namespace {

using namespace sds::testing;

TEST(ParetoOptimal, Examples) {
  Profile pw = parse_profile("1: {a,b}\n2: a,b");
  EXPECT_EQ(pareto_optimal(pw), pw.alternatives().set_of({"a"}));
  Profile flat = parse_profile("1: {a,b,c}\n2: {a,b,c}");
  EXPECT_EQ(pareto_optimal(flat), flat.alternatives().full());
  Profile sd = parse_profile(kSerialProfile);
  EXPECT_EQ(pareto_optimal(sd), sd.alternatives().set_of({"b", "c"}));
}

TEST(ExPost, Examples) {
  Profile pw = parse_profile("1: {a,b}\n2: a,b");
  auto v = ex_post_efficient(pw, proportional_plurality(pw));
  EXPECT_FALSE(v.efficient);
  ASSERT_TRUE(v.pareto_witness);
  EXPECT_EQ(v.pareto_witness->dominated, 1u);
  EXPECT_EQ(v.pareto_witness->dominator, 0u);

  Profile single = parse_profile("1: a,b");
  EXPECT_TRUE(ex_post_efficient(single, lot(single, "a:1")).efficient);
  EXPECT_THROW(ex_post_efficient(single, lot(Alternatives::first(3), "a:1")), DomainError);
}

TEST(SdEfficient, Examples) {
  Profile single = parse_profile("1: a,b");
  auto v = sd_efficient(single, lot(single, "a:1/2,b:1/2"));
  EXPECT_FALSE(v.efficient);
  ASSERT_TRUE(v.sd_witness);
  EXPECT_EQ(*v.sd_witness, lot(single, "a:1"));
  EXPECT_TRUE(sd_efficient(single, lot(single, "a:1")).efficient);
  EXPECT_THROW(sd_efficient(single, lot(Alternatives::first(3), "a:1")), DomainError);
}

TEST(SdEfficient, MixtureOfParetoOptimaAndDominatedMixture) {
  Profile p = parse_profile("1: a,b,c,d\n2: b,a,d,c");
  EXPECT_TRUE(sd_efficient(p, lot(p, "a:1/2,b:1/2")).efficient);
  auto v = sd_efficient(p, lot(p, "c:1/2,d:1/2"));
  EXPECT_FALSE(v.efficient);
  EXPECT_TRUE(v.sd_witness->support().subset_of(p.alternatives().set_of({"a", "b"})));
}

TEST(SdEfficient, FullyIndifferentProfilesAcceptEverything) {
  Rng rng(71);
  Profile flat = parse_profile("1: {a,b,c,d}\n2: {a,b,c,d}");
  for (int k = 0; k < 100; ++k)
    ASSERT_TRUE(sd_efficient(flat, random_lottery(rng, flat.alternatives())).efficient);
}

TEST(Efficiency, WitnessesVerifyAndSdImpliesExPost) {
  Rng rng(72);
  for (int trial = 0; trial < 400; ++trial) {
    Profile p = random_profile(rng, 1 + uniform_index(rng, 4), 1 + uniform_index(rng, 5));
    Lottery l = random_lottery(rng, p.alternatives(), 2);
    auto sd = sd_efficient(p, l);
    auto ep = ex_post_efficient(p, l);
    if (sd.efficient) { ASSERT_TRUE(ep.efficient) << render_profile(p) << render_lottery(l); }
    if (!sd.efficient) {
      ASSERT_TRUE(sd.sd_witness);
      bool strict = false;
      for (const auto& [id, o] : p.orders()) {
        auto c = sd_compare(o, *sd.sd_witness, l);
        ASSERT_TRUE(weakly_prefers(c));
        strict = strict || c == Comparison::StrictlyPrefers;
      }
      ASSERT_TRUE(strict);
    }
    if (!ep.efficient) {
      ASSERT_TRUE(ep.pareto_witness);
      ASSERT_TRUE(l.support().contains(ep.pareto_witness->dominated));
      ASSERT_TRUE(pareto_dominates(p, ep.pareto_witness->dominator, ep.pareto_witness->dominated));
    }
  }
}

}  // namespace
}  // namespace sds
