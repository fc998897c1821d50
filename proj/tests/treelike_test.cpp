#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "asymtree/asym.hpp"
#include "asymtree/error.hpp"
#include "asymtree/generate.hpp"
#include "asymtree/oracle.hpp"
#include "asymtree/treelike.hpp"
#include "support.hpp"

namespace asymtree {
namespace {

RootedGraph cycle4() { return parse_graph("graph root w\nw a\na c\nc b\nb w\n"); }

// Complete binary tree of the given depth as a rooted graph, root labelled w.
RootedGraph binary_graph(std::size_t depth, const std::string& extra_edges = "") {
  std::string text = "graph root v1\n";
  std::size_t n = (std::size_t{1} << (depth + 1)) - 1;
  for (std::size_t v = 2; v <= n; ++v) text += "v" + std::to_string(v / 2) + " v" + std::to_string(v) + "\n";
  return parse_graph(text + extra_edges);
}

std::vector<Vertex> ids(const RootedTree& t, std::initializer_list<const char*> labels) {
  std::vector<Vertex> out;
  for (const char* l : labels) out.push_back(*t.find(l));
  std::sort(out.begin(), out.end());
  return out;
}

TEST(ContractTest, Examples) {
  RootedTree path = parse_rooted("w(a(b(c(e))))");
  ContractionMap m = contract_even_levels(path);
  EXPECT_EQ(m.contracted.size(), 3u);
  EXPECT_EQ(m.image[*path.find("a")], m.image[*path.find("w")]);
  EXPECT_EQ(m.image[*path.find("c")], m.image[*path.find("b")]);
  EXPECT_EQ(contract_even_levels(parse_rooted("w")).contracted.size(), 1u);
  EXPECT_EQ(contract_even_levels(parse_rooted("w(a,b)")).contracted.size(), 1u);
}

TEST(ContractTest, DepthHalvesAndEdgesMapToEdges) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    RootedTree t = random_tree(1 + seed % 40, seed);
    ContractionMap m = contract_even_levels(t);
    for (Vertex v = 0; v < t.size(); ++v) {
      EXPECT_EQ(m.contracted.depth(m.image[v]), t.depth(v) / 2);
      EXPECT_EQ(t.depth(m.leader[m.image[v]]) % 2, 0u);
      Vertex p = t.parent(v);
      if (p == kNoVertex) continue;
      Vertex a = m.image[p];
      Vertex b = m.image[v];
      EXPECT_TRUE(a == b || m.contracted.parent(b) == a);
    }
  }
}

TEST(LiftTest, Examples) {
  RootedTree path = parse_rooted("w(a(b(c(e))))");
  ContractionMap m = contract_even_levels(path);
  std::vector<Vertex> s_prime{m.image[*path.find("b")]};
  AsymSet plain = lift_asym_set(path, m, s_prime, LiftMode::kPlain);
  EXPECT_EQ(plain.members, ids(path, {"b"}));
  EXPECT_TRUE(verify_asym_set(path, plain.members));

  RootedTree single = parse_rooted("w");
  ContractionMap ms = contract_even_levels(single);
  EXPECT_EQ(lift_asym_set(single, ms, std::vector<Vertex>{0}, LiftMode::kPlain).members, ids(single, {"w"}));
}

TEST(LiftTest, AugmentedAddsOneChildOfTheRoot) {
  RootedTree t = parse_rooted("w(a(x),b(y))");
  ContractionMap m = contract_even_levels(t);
  std::vector<Vertex> s_prime{m.root_image, m.image[*t.find("x")]};
  std::sort(s_prime.begin(), s_prime.end());
  ASSERT_TRUE(verify_asym_set(m.contracted, s_prime));
  AsymSet s = lift_asym_set(t, m, s_prime, LiftMode::kAugmented);
  EXPECT_TRUE(verify_asym_set(t, s.members));
  EXPECT_EQ(s.members, ids(t, {"w", "x", "a"}));
  // The selected leaf x has no neighbour left outside once a joins it.
  EXPECT_EQ(unexposed(t, s.members), ids(t, {"a", "x"}));
}

TEST(LiftTest, ExposureHoldsWhenLeavesSitDeep) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    RootedTree t = testing::deepen_leaves(random_tree(1 + seed % 30, seed));
    ContractionMap m = contract_even_levels(t);
    auto s_prime = find_asym_set(m.contracted);
    if (!s_prime) continue;
    AsymSet plain = lift_asym_set(t, m, s_prime->members, LiftMode::kPlain);
    EXPECT_TRUE(verify_asym_set(t, plain.members));
    EXPECT_TRUE(unexposed(t, plain.members).empty());
    AsymSet augmented = lift_asym_set(t, m, s_prime->members, LiftMode::kAugmented);
    EXPECT_TRUE(verify_asym_set(t, augmented.members));
    EXPECT_EQ(unexposed(t, augmented.members).size(), t.children(t.root()).size() == 1 ? 0u : 1u);
  }
}

TEST(LiftTest, RejectsANonVerifyingContractedSet) {
  RootedTree t = parse_rooted("w(a(x),b(y))");
  ContractionMap m = contract_even_levels(t);
  EXPECT_THROW(lift_asym_set(t, m, std::vector<Vertex>{}, LiftMode::kPlain), PreconditionError);
}

// w(a,b) contracts to one vertex and {w'} verifies there, yet no lift of it
// separates the twins a and b: the construction needs the contracted tree to
// see every twin class, which fails when leaves sit at odd depth.
TEST(LiftTest, OddDepthTwinLeavesDefeatTheLift) {
  RootedTree t = parse_rooted("w(a,b)");
  ContractionMap m = contract_even_levels(t);
  ASSERT_TRUE(verify_asym_set(m.contracted, std::vector<Vertex>{0}));
  EXPECT_FALSE(verify_asym_set(t, lift_asym_set(t, m, std::vector<Vertex>{0}, LiftMode::kPlain).members));
}

TEST(CheckTreelikeTest, Examples) {
  TreelikeCheck binary = check_treelike(binary_graph(4), 4);
  EXPECT_TRUE(binary.passes());

  RootedGraph c4 = cycle4();
  TreelikeCheck cycle = check_treelike(c4, 2);
  EXPECT_FALSE(cycle.passes());
  std::vector<Vertex> failing = cycle.failing;
  std::sort(failing.begin(), failing.end());
  std::vector<Vertex> expected{*c4.graph.find("a"), *c4.graph.find("b")};
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(failing, expected);

  RootedGraph k3 = parse_graph("graph root w\nw a\nw b\na b\n");
  EXPECT_TRUE(check_treelike(k3, 1).passes());
}

TEST(CheckTreelikeTest, Errors) {
  EXPECT_THROW(check_treelike(parse_graph("graph root w\nw a\nb c\n"), 1), InputError);
  EXPECT_THROW(check_treelike(cycle4(), 3), PreconditionError);
}

TEST(ExtractForestTest, Examples) {
  RootedGraph tree = binary_graph(3);
  ForestDecomposition f = extract_forest(tree);
  EXPECT_EQ(f.edges.size(), tree.graph.size() - 1);
  EXPECT_EQ(f.components.size(), 1u);

  RootedGraph c4 = cycle4();
  ForestDecomposition fc = extract_forest(c4);
  EXPECT_EQ(fc.edges.size(), 2u);
  for (auto [parent, child] : fc.edges) EXPECT_EQ(parent, *c4.graph.find("w"));
  EXPECT_EQ(fc.components.size(), 2u);
  EXPECT_EQ(fc.components[fc.root_component].size(), 3u);

  RootedGraph crossed = binary_graph(2, "v4 v6\n");
  ForestDecomposition fx = extract_forest(crossed);
  Vertex a = *crossed.graph.find("v4");
  Vertex b = *crossed.graph.find("v6");
  for (auto [parent, child] : fx.edges) {
    EXPECT_FALSE((parent == a && child == b) || (parent == b && child == a));
  }
  EXPECT_EQ(fx.edges.size(), crossed.graph.size() - 1);
}

TEST(ExtractForestTest, InvariantUnderRootFixingAutomorphisms) {
  oracle::Limits limits;
  limits.max_group_vertices = 15;
  std::vector<RootedGraph> graphs{cycle4(), binary_graph(2, "v4 v6\nv5 v7\n"), binary_graph(3),
                                  parse_graph("graph root w\nw a\nw b\na c\nb c\nc d\nc e\n")};
  for (const RootedGraph& g : graphs) {
    ForestDecomposition f = extract_forest(g);
    std::set<std::pair<Vertex, Vertex>> edges(f.edges.begin(), f.edges.end());
    for (const auto& p : oracle::graph_automorphisms(g.graph, g.root, limits).elements) {
      for (auto [u, v] : f.edges) EXPECT_TRUE(edges.count({p[u], p[v]}));
    }
  }
}

TEST(AsymmetrizeTreelikeTest, AsymmetricGraphNeedsNothing) {
  RootedGraph g = parse_graph("graph root a\na b\nb c\nc d\nc e\ne f\nf g\n");
  ASSERT_EQ(oracle::graph_automorphisms(g.graph).order(), 1u);
  TreelikeResult r = asymmetrize_treelike(g);
  ASSERT_TRUE(r.set);
  EXPECT_TRUE(r.set->members.empty());
}

TEST(AsymmetrizeTreelikeTest, FourCycleFailsAndSweepAgrees) {
  TreelikeResult r = asymmetrize_treelike(cycle4());
  EXPECT_FALSE(r.set);
  ASSERT_TRUE(r.failure);
  EXPECT_FALSE(admissible_sweep(cycle4()));
}

TEST(AsymmetrizeTreelikeTest, VerdictMatchesSweep) {
  oracle::Limits limits;
  limits.max_group_vertices = 15;
  limits.max_subset_vertices = 15;
  std::vector<RootedGraph> graphs{binary_graph(2), binary_graph(3), binary_graph(2, "v4 v6\n"),
                                  parse_graph("graph root w\nw a\na b\nb c\nc d\nw e\n"),
                                  parse_graph("graph root w\nw a\nw b\na c\nb c\nc d\nc e\n")};
  for (const RootedGraph& g : graphs) {
    TreelikeResult r = asymmetrize_treelike(g, limits);
    EXPECT_EQ(r.set.has_value(), admissible_sweep(g, limits)) << serialize(g);
    if (r.set) {
      EXPECT_TRUE(oracle::stabilizer_trivial(oracle::graph_automorphisms(g.graph, std::nullopt, limits), r.set->members));
    }
  }
}

TEST(AsymmetrizeTreelikeTest, FailureNames) {
  EXPECT_EQ(to_string(TreelikeFailure::kComponent), "component");
  EXPECT_EQ(to_string(TreelikeFailure::kInequivalence), "inequivalence");
  EXPECT_EQ(to_string(TreelikeFailure::kVerification), "verification");
}

}  // namespace
}  // namespace asymtree
