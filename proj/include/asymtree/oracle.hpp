#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "asymtree/asym.hpp"
#include "asymtree/tree.hpp"

namespace asymtree::oracle {

// Brute-force ground truth. Nothing here consults canonical codes or twin
// classes; automorphisms come from a plain backtracking search.

struct Limits {
  std::size_t max_group_vertices = 12;   // explicit group listing
  std::size_t max_subset_vertices = 16;  // 2^n subset sweeps
  std::size_t max_group_order = 4'000'000;

  // Defaults; $ASYMTREE_MAX_N, when set, replaces the group cap and raises
  // the subset cap to at least itself (at most 30).
  static Limits from_env();
};

using Permutation = std::vector<Vertex>;

struct PermutationGroup {
  std::vector<Permutation> elements;  // identity first, then by support size
  bool closed = false;

  std::size_t order() const { return elements.size(); }
};

// Exact automorphism group by backtracking with degree and distance pruning.
// With `fixed_root`, only maps fixing that vertex.
PermutationGroup graph_automorphisms(const Graph& graph, std::optional<Vertex> fixed_root = std::nullopt,
                                     const Limits& limits = {});

PermutationGroup tree_automorphisms(const RootedTree& tree, bool fix_root, const Limits& limits = {});
PermutationGroup tree_automorphisms(const UnrootedTree& tree, const Limits& limits = {});

// Identity present, closed under composition and inverses.
bool satisfies_group_axioms(const PermutationGroup& group);

// True iff no non-identity element maps `set` onto itself.
bool stabilizer_trivial(const PermutationGroup& group, std::span<const Vertex> set);

struct OrbitCount {
  std::uint64_t orbits = 0;                // inequivalent asymmetrizing sets
  std::uint64_t trivially_stabilized = 0;  // raw subsets with trivial stabilizer
  std::size_t group_order = 0;
};

OrbitCount count_asym(const Graph& graph, std::optional<Vertex> fixed_root = std::nullopt,
                      const Limits& limits = {});
OrbitCount count_asym(const RootedTree& tree, const Limits& limits = {});
OrbitCount count_asym(const UnrootedTree& tree, const Limits& limits = {});

MotionResult motion(const PermutationGroup& group);
MotionResult motion(const RootedTree& tree, const Limits& limits = {});
MotionResult motion(const UnrootedTree& tree, const Limits& limits = {});

Graph as_graph(const RootedTree& tree);

}  // namespace asymtree::oracle
