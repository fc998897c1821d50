#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "asymtree/asym.hpp"
#include "asymtree/oracle.hpp"
#include "asymtree/tree.hpp"

namespace asymtree {

// Every edge from an even-depth vertex to its child is contracted, so each
// contracted vertex is an even-depth leader together with its children.
struct ContractionMap {
  RootedTree contracted;       // labels are the leaders' labels
  std::vector<Vertex> image;   // V(T) -> V(T')
  std::vector<Vertex> leader;  // V(T') -> the even-depth member in V(T)
  Vertex root_image = 0;
};

ContractionMap contract_even_levels(const RootedTree& tree);

enum class LiftMode { kPlain, kAugmented };

// Plain: each selected contracted vertex contributes its leader.
// Augmented: the plain lift of S' (or of its complement when the root is not
// selected) plus the root's children; when some child of the root has all of
// its children selected, only the first such child is added. A root of degree
// one gets the plain lift. Throws PreconditionError if `s_prime` does not
// asymmetrize the contracted tree.
AsymSet lift_asym_set(const RootedTree& tree, const ContractionMap& map, std::span<const Vertex> s_prime,
                      LiftMode mode);

// Members of `set` none of whose neighbours lie outside `set`.
std::vector<Vertex> unexposed(const RootedTree& tree, std::span<const Vertex> set);

struct TreelikeCheck {
  std::vector<std::size_t> distance;  // from the root
  std::size_t horizon = 0;
  std::vector<Vertex> failing;        // interior vertices without a private child
  bool passes() const { return failing.empty(); }
};

// Interior vertices are those with distance < horizon. Throws InputError on a
// disconnected graph, PreconditionError when horizon exceeds the eccentricity
// of the root.
TreelikeCheck check_treelike(const RootedGraph& graph, std::size_t horizon);

struct ForestDecomposition {
  std::vector<std::pair<Vertex, Vertex>> edges;  // (parent, child), child ascending
  std::vector<std::vector<Vertex>> components;   // ascending by least member
  std::size_t root_component = 0;
};

// Keeps the edge to x's breadth-first parent whenever that parent is unique.
ForestDecomposition extract_forest(const RootedGraph& graph);

enum class TreelikeFailure { kComponent, kInequivalence, kVerification };
std::string to_string(TreelikeFailure failure);

struct TreelikeResult {
  std::optional<AsymSet> set;
  std::optional<TreelikeFailure> failure;
};

// Union of admissible per-component asymmetrizing sets, pairwise
// inequivalent across isomorphic components, accepted only once it fixes no
// nontrivial automorphism of the whole graph. Admissible: outside the root
// component every member has a forest neighbour outside the set; in the root
// component exactly one member lacks one, unless the root has degree one.
TreelikeResult asymmetrize_treelike(const RootedGraph& graph, const oracle::Limits& limits = {});

// Brute-force counterpart: sweeps all 2^n subsets and checks the same
// conditions with permutation groups only. True iff some subset qualifies.
bool admissible_sweep(const RootedGraph& graph, const oracle::Limits& limits = {});

}  // namespace asymtree
