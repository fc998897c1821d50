#include <gtest/gtest.h>

#include <map>

#include "asymtree/canonical.hpp"
#include "asymtree/generate.hpp"
#include "support.hpp"

namespace asymtree {
namespace {

Coloring color(const RootedTree& t, std::initializer_list<const char*> members) {
  Coloring c(t.size(), 0);
  for (const char* m : members) c[*t.find(m)] = 1;
  return c;
}

TEST(CanonicalTest, Examples) {
  EXPECT_EQ(ahu_canonical(parse_rooted("w(a,b)")), ahu_canonical(parse_rooted("r(x,y)")));
  EXPECT_NE(ahu_canonical(parse_rooted("w(a(b))")), ahu_canonical(parse_rooted("w(a,b)")));
  RootedTree t = parse_rooted("w(a,b)");
  EXPECT_EQ(ahu_canonical(t, color(t, {"a"})), ahu_canonical(t, color(t, {"b"})));
  EXPECT_NE(ahu_canonical(t, color(t, {"a"})), ahu_canonical(t));
  EXPECT_EQ(ahu_canonical(parse_rooted("w")).token, "()");
  EXPECT_EQ(ahu_canonical(t, color(t, {"w"})).token, "[()()]");
}

// Exhaustive over all rooted trees up to 9 vertices: distinct isomorphism
// types have distinct codes, scrambled copies keep theirs.
TEST(CanonicalTest, MatchesBruteForceIsomorphism) {
  for (std::size_t n = 1; n <= 9; ++n) {
    auto trees = all_rooted_trees(n);
    std::map<CanonicalCode, std::size_t> seen;
    for (std::size_t i = 0; i < trees.size(); ++i) {
      CanonicalCode code = ahu_canonical(trees[i]);
      EXPECT_TRUE(seen.emplace(code, i).second) << "collision at n=" << n;
      RootedTree copy = testing::scrambled(trees[i], i * 31 + n);
      EXPECT_TRUE(testing::brute_isomorphic(trees[i], copy));
      EXPECT_EQ(ahu_canonical(copy), code);
    }
    if (n <= 7) {
      for (std::size_t i = 0; i < trees.size(); ++i) {
        for (std::size_t j = i + 1; j < trees.size(); ++j) {
          EXPECT_FALSE(testing::brute_isomorphic(trees[i], trees[j]));
        }
      }
    }
  }
}

TEST(CanonicalTest, ColoredCodesMatchBruteForce) {
  // All colorings of every rooted tree with 5 vertices, compared pairwise by
  // color-aware backtracking (colors folded into a pendant marker leaf).
  auto marked = [](const RootedTree& t, const Coloring& c) {
    std::vector<Vertex> parent;
    std::vector<std::string> labels;
    for (Vertex v = 0; v < t.size(); ++v) {
      parent.push_back(t.parent(v));
      labels.push_back(t.label(v));
    }
    for (Vertex v = 0; v < t.size(); ++v) {
      if (!c[v]) continue;
      // Two pendant leaves under a fresh child: a shape absent from the base.
      Vertex hub = static_cast<Vertex>(parent.size());
      parent.push_back(v);
      labels.push_back("m" + std::to_string(hub));
      for (int k = 0; k < 7; ++k) {
        parent.push_back(hub);
        labels.push_back("m" + std::to_string(parent.size() - 1));
      }
    }
    return RootedTree(std::move(parent), std::move(labels));
  };
  for (const auto& t : all_rooted_trees(5)) {
    std::vector<Coloring> colorings;
    for (unsigned mask = 0; mask < 32; ++mask) {
      Coloring c(5);
      for (Vertex v = 0; v < 5; ++v) c[v] = mask >> v & 1u;
      colorings.push_back(c);
    }
    for (const auto& a : colorings) {
      for (const auto& b : colorings) {
        bool same = ahu_canonical(t, a) == ahu_canonical(t, b);
        EXPECT_EQ(same, testing::brute_isomorphic(marked(t, a), marked(t, b)));
      }
    }
  }
}

TEST(SimilarityTest, Examples) {
  RootedTree star = parse_rooted("w(a,b,c)");
  auto s = similarity(star);
  ASSERT_EQ(s[star.root()].size(), 1u);
  EXPECT_EQ(s[star.root()][0].tau, 3u);
  EXPECT_EQ(star.label(s[star.root()][0].representative), "a");

  RootedTree mixed = parse_rooted("w(a(b),c)");
  auto m = similarity(mixed);
  ASSERT_EQ(m[mixed.root()].size(), 2u);
  EXPECT_EQ(m[mixed.root()][0].tau, 1u);
  EXPECT_EQ(m[mixed.root()][1].tau, 1u);

  RootedTree deep = parse_rooted("w(a(x,y),b(u,v))");
  auto d = similarity(deep);
  ASSERT_EQ(d[deep.root()].size(), 1u);
  EXPECT_EQ(d[deep.root()][0].tau, 2u);
  for (const char* inner : {"a", "b"}) {
    const auto& classes = d[*deep.find(inner)];
    ASSERT_EQ(classes.size(), 1u);
    EXPECT_EQ(classes[0].tau, 2u);
  }
}

TEST(SimilarityTest, PartitionsChildrenIntoIsomorphismClasses) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    RootedTree t = random_tree(2 + seed % 25, seed);
    auto table = similarity(t);
    for (Vertex y = 0; y < t.size(); ++y) {
      std::size_t covered = 0;
      for (const auto& cls : table[y]) {
        EXPECT_EQ(cls.tau, cls.members.size());
        EXPECT_GE(cls.tau, 1u);
        covered += cls.tau;
        for (Vertex m : cls.members) {
          EXPECT_EQ(t.parent(m), y);
          EXPECT_TRUE(testing::brute_isomorphic(t, m, t, cls.representative));
        }
      }
      EXPECT_EQ(covered, t.children(y).size());
      for (std::size_t i = 0; i < table[y].size(); ++i) {
        for (std::size_t j = i + 1; j < table[y].size(); ++j) {
          EXPECT_FALSE(testing::brute_isomorphic(t, table[y][i].representative, t, table[y][j].representative));
        }
      }
    }
  }
}

TEST(SimilarityTest, InvariantUnderRelabeling) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    RootedTree t = random_tree(3 + seed % 20, seed + 100);
    RootedTree copy = testing::scrambled(t, seed);
    auto a = similarity(t);
    auto b = similarity(copy);
    auto types_a = subtree_types(t);
    auto types_b = subtree_types(copy);
    // Class structure expressed in canonical terms must coincide per
    // corresponding vertex type.
    std::map<std::uint32_t, std::vector<std::pair<std::uint32_t, std::size_t>>> sa;
    std::map<std::uint32_t, std::vector<std::pair<std::uint32_t, std::size_t>>> sb;
    for (Vertex v = 0; v < t.size(); ++v) {
      for (const auto& c : a[v]) sa[types_a.type[v]].emplace_back(types_a.type[c.representative], c.tau);
      for (const auto& c : b[v]) sb[types_b.type[v]].emplace_back(types_b.type[c.representative], c.tau);
    }
    EXPECT_EQ(sa, sb);
  }
}

TEST(UnrootedCanonicalTest, IndependentOfRooting) {
  for (std::size_t n = 1; n <= 8; ++n) {
    auto trees = all_unrooted_trees(n);
    std::map<CanonicalCode, int> codes;
    for (const auto& t : trees) {
      CanonicalCode c = unrooted_canonical(t);
      EXPECT_TRUE(codes.emplace(c, 0).second);
      for (Vertex r = 0; r < t.size(); ++r) {
        RootedTree rooted = testing::scrambled(t.rooted_at(r), r);
        EXPECT_EQ(unrooted_canonical(to_unrooted(rooted)), c);
      }
    }
  }
  EXPECT_EQ(all_unrooted_trees(10).size(), 106u);
}

}  // namespace
}  // namespace asymtree
