#include <gtest/gtest.h>

#include "asymtree/asym.hpp"
#include "asymtree/canonical.hpp"
#include "asymtree/error.hpp"
#include "asymtree/presented.hpp"
#include "presentation_support.hpp"

namespace asymtree::presented {
namespace {

Cardinal B(unsigned k) { return Cardinal::beth(k); }

const char* kT3 = "class r: d*3 / class d: d*2";
const char* kRay = "class r: r*1";
const char* kLeaves = "class r: l*w / class l:";

TEST(ParsePresentationTest, Examples) {
  TreePresentation t3 = parse_presentation(kT3);
  ASSERT_EQ(t3.classes.size(), 2u);
  EXPECT_EQ(t3.classes[0].name, "r");
  EXPECT_EQ(t3.classes[0].slots[0].child, 1u);
  EXPECT_EQ(t3.classes[0].slots[0].multiplicity, Cardinal(3ul));
  TreePresentation leaves = parse_presentation(kLeaves);
  EXPECT_EQ(leaves.classes[0].slots[0].multiplicity, B(0));
  EXPECT_TRUE(leaves.classes[1].slots.empty());
  EXPECT_THROW(parse_presentation("class r: x*1"), InputError);
}

TEST(ParsePresentationTest, Errors) {
  EXPECT_THROW(parse_presentation("class r: d*0 / class d:"), InputError);
  EXPECT_THROW(parse_presentation("class r: d*3 / class r:"), InputError);
  EXPECT_THROW(parse_presentation("class r d*3"), ParseError);
  EXPECT_THROW(parse_presentation("class r: d*"), ParseError);
  EXPECT_THROW(parse_presentation("class r: d*x1 / class d:"), ParseError);
  EXPECT_THROW(parse_presentation(""), InputError);
}

TEST(ParsePresentationTest, LinesKeywordOptionalAndRoundTrip) {
  TreePresentation a = parse_presentation("class r: q*beth_1\nclass q: q*1\n");
  TreePresentation b = parse_presentation("r: q*beth_1 / q: q*1");
  EXPECT_EQ(serialize(a), serialize(b));
  EXPECT_EQ(serialize(a), "class r: q*beth_1\nclass q: q*1\n");
  EXPECT_EQ(serialize(parse_presentation(serialize(a))), serialize(a));
}

TEST(MinimizeTest, Examples) {
  TreePresentation m = minimize(parse_presentation("class r: a*1, b*1 / class a: / class b:"));
  ASSERT_EQ(m.classes.size(), 2u);
  ASSERT_EQ(m.classes[0].slots.size(), 1u);
  EXPECT_EQ(m.classes[0].slots[0].multiplicity, Cardinal(2ul));
  EXPECT_EQ(serialize(minimize(parse_presentation(kT3))), serialize(parse_presentation(kT3)));
  TreePresentation merged = minimize(parse_presentation("class r: x*1, y*1 / class x: a*2 / class y: b*2 / class a: / class b:"));
  EXPECT_EQ(serialize(merged), "class r: x*2\nclass x: a*2\nclass a:\n");
}

TEST(MinimizeTest, CyclicBisimilarClassesMerge) {
  // Two mutually recursive copies of the binary tree, below a root that is
  // itself binary: everything collapses to one class.
  TreePresentation m = minimize(parse_presentation("class r: a*1, b*1 / class a: b*2 / class b: a*2"));
  EXPECT_EQ(serialize(m), "class r: r*2\n");
  TreePresentation t3 = minimize(parse_presentation("class r: a*1, b*2 / class a: b*2 / class b: a*2"));
  EXPECT_EQ(serialize(t3), "class r: a*3\nclass a: a*2\n");
}

TEST(MinimizeTest, IdempotentAndUnfoldingPreserving) {
  std::mt19937_64 rng(11);
  testing::PresentationShape shape;
  shape.max_slots = 2;
  shape.max_multiplicity = 2;
  for (int i = 0; i < 300; ++i) {
    shape.cycles = i % 2 == 1;
    TreePresentation p = testing::random_presentation(rng, shape);
    TreePresentation m = minimize(p);
    EXPECT_EQ(serialize(minimize(m)), serialize(m));
    std::size_t depth = p.classes.size() + 1;
    RootedTree a = unfold(p, depth, 5'000'000);
    RootedTree b = unfold(m, depth, 5'000'000);
    EXPECT_EQ(ahu_canonical(a), ahu_canonical(b)) << serialize(p);
  }
}

TEST(ClassifyTest, Examples) {
  Classification t3 = classify(minimize(parse_presentation(kT3)));
  EXPECT_EQ(t3.kind, Kind::kHasDoubleRay);
  EXPECT_EQ(t3.size, B(0));
  EXPECT_TRUE(t3.on_double_ray[0]);
  EXPECT_TRUE(t3.on_double_ray[1]);
  Classification ray = classify(parse_presentation(kRay));
  EXPECT_EQ(ray.kind, Kind::kOneEnded);
  EXPECT_EQ(ray.size, B(0));
  EXPECT_FALSE(ray.on_double_ray[0]);
  Classification leaves = classify(parse_presentation(kLeaves));
  EXPECT_EQ(leaves.kind, Kind::kRaylessInfinite);
  EXPECT_EQ(leaves.size, B(0));
  Classification finite = classify(parse_presentation("class r: a*2 / class a: b*3 / class b:"));
  EXPECT_EQ(finite.kind, Kind::kFiniteTree);
  EXPECT_EQ(finite.size, Cardinal(9ul));
  Classification big = classify(parse_presentation("class r: q*beth_1 / class q: q*1"));
  EXPECT_EQ(big.size, B(1));
}

TEST(ClassifyTest, DoubleRayMembershipFollowsThePath) {
  // r -> p (ray side, single) -> q with two ray children: r and p are not on
  // a double ray, q and below are.
  Classification c = classify(parse_presentation("class r: p*1, l*1 / class p: q*1 / class q: q*2 / class l:"));
  EXPECT_EQ(c.kind, Kind::kHasDoubleRay);
  EXPECT_FALSE(c.on_double_ray[0]);
  EXPECT_FALSE(c.on_double_ray[1]);
  EXPECT_TRUE(c.on_double_ray[2]);
  EXPECT_FALSE(c.on_double_ray[3]);
}

TEST(ClassifyTest, SizeMatchesUnfoldingForFinitePresentations) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 300; ++i) {
    TreePresentation p = testing::random_presentation(rng, {});
    Classification c = classify(p);
    if (c.size > Cardinal(20000ul)) continue;
    EXPECT_EQ(c.size, Cardinal(static_cast<unsigned long>(unfold(p).size())));
  }
}

TEST(RankTest, Examples) {
  EXPECT_EQ(rank_presented(parse_presentation("class l:")), 0u);
  EXPECT_EQ(rank_presented(parse_presentation(kLeaves)), 1u);
  EXPECT_EQ(rank_presented(parse_presentation("class r: s*w / class s: l*w / class l:")), 2u);
  EXPECT_EQ(rank_presented(parse_presentation("class r: s*2 / class s: l*w / class l:")), 1u);
  EXPECT_THROW(rank_presented(parse_presentation(kRay)), PreconditionError);
}

TEST(MotionPresentedTest, Examples) {
  EXPECT_TRUE(motion_presented(parse_presentation(kRay)).asymmetric());
  EXPECT_EQ(motion_presented(parse_presentation(kLeaves)).str(), "2");
  EXPECT_EQ(motion_presented(parse_presentation(kT3)).str(), "beth_0");
  // Twins only appear after merging isomorphic classes.
  EXPECT_EQ(motion_presented(parse_presentation("class r: a*1, b*1 / class a: / class b:")).str(), "2");
}

TEST(CountPresentedTest, Examples) {
  PresentedReport leaves = count_presented(parse_presentation(kLeaves));
  EXPECT_EQ(leaves.count, Cardinal(0ul));
  EXPECT_EQ(leaves.theorem, "rayless");
  EXPECT_EQ(leaves.rank, 1u);

  PresentedReport t3 = count_presented(parse_presentation(kT3));
  EXPECT_EQ(t3.count, B(1));
  EXPECT_EQ(t3.count, two_pow(t3.classification.size));
  EXPECT_EQ(t3.theorem, "double-ray");
  EXPECT_FALSE(t3.rank);

  PresentedReport ray = count_presented(parse_presentation(kRay));
  EXPECT_EQ(ray.count, B(1));
  EXPECT_EQ(ray.theorem, "one-ended");

  PresentedReport wide = count_presented(parse_presentation("class r: q*beth_1 / class q: q*1"));
  EXPECT_EQ(wide.count, B(2));
  EXPECT_EQ(wide.theorem, "double-ray");

  PresentedReport finite = count_presented(parse_presentation("class r: a*2 / class a:"));
  EXPECT_EQ(finite.count, Cardinal(2ul));
  EXPECT_EQ(finite.theorem, "finite");
  EXPECT_EQ(finite.rank, 0u);
}

TEST(CountPresentedTest, OneEndedWithDecorations) {
  // Spine vertices each carry three leaves: binom(2,3) = 0 kills the count.
  EXPECT_EQ(count_presented(parse_presentation("class r: r*1, l*3 / class l:")).count, Cardinal(0ul));
  // Two leaves per spine vertex: a(x) = 2 * binom(2,2) = 2, product over w.
  EXPECT_EQ(count_presented(parse_presentation("class r: r*1, l*2 / class l:")).count, B(1));
  // A finite prefix before the periodic part.
  EXPECT_EQ(count_presented(parse_presentation("class r: s*1, l*5 / class s: s*1 / class l:")).count,
            Cardinal(0ul));
}

TEST(CountPresentedTest, DoubleRayConditionCanFail) {
  // Three twins, each with 2^aleph_0 colorings of its subtree: fine.
  EXPECT_EQ(count_presented(parse_presentation("class r: r*3")).count, B(1));
  // beth_2 twins below each vertex: the subtrees are that large too.
  EXPECT_EQ(count_presented(parse_presentation("class r: r*beth_2")).count, B(3));
  // beth_2 twin rays offer only beth_1 colorings each.
  PresentedReport rays = count_presented(parse_presentation("class r: q*beth_2 / class q: q*1"));
  EXPECT_EQ(rays.theorem, "double-ray");
  EXPECT_EQ(rays.count, Cardinal(0ul));
  // A rayless side component with too many twins zeroes a(x).
  EXPECT_EQ(count_presented(parse_presentation("class r: r*2, l*w / class l:")).count, Cardinal(0ul));
}

TEST(CountPresentedTest, DoubleRayRootBelowAPath) {
  // Root r, path vertex p (one ray child), then q with two ray children.
  // The component of q contains p and r, each with one leaf.
  PresentedReport rep =
      count_presented(parse_presentation("class r: p*1, l*1 / class p: q*1, l*1 / class q: q*2 / class l:"));
  EXPECT_EQ(rep.theorem, "double-ray");
  EXPECT_EQ(rep.count, B(1));
}

TEST(CountPresentedTest, MatchesFiniteEngineOnUnfoldings) {
  std::mt19937_64 rng(3);
  int checked = 0;
  while (checked < 200) {
    TreePresentation p = testing::random_presentation(rng, {});
    if (classify(p).size > Cardinal(300ul)) continue;
    RootedTree t = unfold(p);
    PresentedReport rep = count_presented(p);
    EXPECT_EQ(rep.count, Cardinal(count_rooted(t))) << serialize(p);
    MotionResult finite = motion_rooted(t);
    EXPECT_EQ(rep.motion.str(), finite.str()) << serialize(p);
    ++checked;
  }
}

TEST(UnfoldTest, LabelsAndLimits) {
  RootedTree t = unfold(parse_presentation(kT3), 2);
  EXPECT_EQ(t.size(), 10u);
  EXPECT_EQ(t.label(0), "r_0");
  EXPECT_EQ(t.label(1), "d_1");
  EXPECT_THROW(unfold(parse_presentation(kT3)), UnsupportedFragment);
  EXPECT_THROW(unfold(parse_presentation(kLeaves), 3), UnsupportedFragment);
  EXPECT_NO_THROW(unfold(parse_presentation(kLeaves), 0));
}

TEST(CertificateTest, Examples) {
  auto two = asym_certificate(parse_presentation("class r: l*2 / class l:"), 1);
  ASSERT_TRUE(two);
  EXPECT_TRUE(two->verified);
  EXPECT_EQ(render_set(two->truncation.labels(), two->set.members), "{l_1}");

  auto t3 = asym_certificate(parse_presentation(kT3), 3);
  ASSERT_TRUE(t3);
  EXPECT_TRUE(t3->verified);
  EXPECT_EQ(t3->truncation.size(), 22u);
  EXPECT_EQ(t3->boundary.size(), 12u);
  // Three twins under the root but only two asymmetric colorings of a
  // complete binary tree: the truncation alone cannot be asymmetric.
  EXPECT_FALSE(t3->fully_asymmetric);

  EXPECT_THROW(asym_certificate(parse_presentation(kLeaves), 2), PreconditionError);
  EXPECT_THROW(asym_certificate(parse_presentation(kT3), 0), PreconditionError);
}

TEST(CertificateTest, FiniteTreesGetFullyVerifiedColorings) {
  std::mt19937_64 rng(8);
  int checked = 0;
  while (checked < 100) {
    TreePresentation p = testing::random_presentation(rng, {});
    Classification c = classify(p);
    if (c.size > Cardinal(200ul)) continue;
    RootedTree t = unfold(p);
    if (count_rooted(t) == 0) continue;
    auto cert = asym_certificate(p, t.size());
    ASSERT_TRUE(cert);
    EXPECT_TRUE(cert->boundary.empty());
    EXPECT_TRUE(cert->verified);
    EXPECT_TRUE(cert->fully_asymmetric);
    EXPECT_TRUE(verify_asym_set(cert->truncation, cert->set.members)) << serialize(p);
    ++checked;
  }
}

}  // namespace
}  // namespace asymtree::presented
