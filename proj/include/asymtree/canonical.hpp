#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "asymtree/tree.hpp"

namespace asymtree {

// Per-vertex 2-coloring; nonzero entries are members of the colored set.
using Coloring = std::vector<std::uint8_t>;

// Isomorphism types of all rooted subtrees of one tree, computed by the
// level-wise AHU procedure. type[u] == type[v] iff T^u and T^v are isomorphic
// (color-preservingly when a coloring is supplied). Type ids are dense and
// ordered by (height, color, sorted child types), so two isomorphic trees get
// identical numberings.
struct TypeTable {
  std::vector<std::uint32_t> type;
  std::uint32_t count = 0;
};

TypeTable subtree_types(const RootedTree& tree, std::span<const std::uint8_t> colors = {});

// Opaque, totally ordered rooted-tree code; equal iff the (colored) rooted
// trees are isomorphic. The token is a bracket word: `(...)` for an uncolored
// vertex, `[...]` for a colored one, children in canonical order.
struct CanonicalCode {
  std::string token;

  friend bool operator==(const CanonicalCode&, const CanonicalCode&) = default;
  friend std::strong_ordering operator<=>(const CanonicalCode&, const CanonicalCode&) = default;
};

CanonicalCode ahu_canonical(const RootedTree& tree, std::span<const std::uint8_t> colors = {});
CanonicalCode ahu_canonical(const RootedTree& tree, Vertex subtree_root, const TypeTable& types,
                            std::span<const std::uint8_t> colors = {});

struct TwinClass {
  Vertex representative;
  std::size_t tau;
  std::vector<Vertex> members;  // ascending vertex index
};

// For every vertex, its children partitioned into twin classes, ordered by
// canonical code. The representative is the member with the least label.
using SimilarityTable = std::vector<std::vector<TwinClass>>;

SimilarityTable similarity(const RootedTree& tree);

struct CenterResult {
  enum class Kind { kVertex, kEdge };
  Kind kind = Kind::kVertex;
  Vertex vertex = kNoVertex;                       // kVertex
  std::pair<Vertex, Vertex> edge{kNoVertex, kNoVertex};  // kEdge, first < second
  bool halves_isomorphic = false;                  // kEdge
};

CenterResult center(const UnrootedTree& tree);

// The tree hung from its center. For a central edge uv the edge is replaced by
// a fresh virtual root (index n, empty label) adjacent to u and v, so every
// automorphism of the unrooted tree becomes a root-fixing automorphism.
struct CenteredTree {
  RootedTree tree;
  CenterResult center;
  bool virtual_root = false;
};

CenteredTree center_rooted(const UnrootedTree& tree);

// Canonical code of an unrooted tree (code of the center-rooted tree).
CanonicalCode unrooted_canonical(const UnrootedTree& tree, std::span<const std::uint8_t> colors = {});

}  // namespace asymtree
