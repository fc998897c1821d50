#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "asymtree/canonical.hpp"
#include "asymtree/cardinal.hpp"
#include "asymtree/tree.hpp"

namespace asymtree {

// Minimum number of vertices moved by a non-identity automorphism, or
// `asymmetric` when the group is trivial.
struct MotionResult {
  std::optional<std::size_t> moved;

  bool asymmetric() const { return !moved.has_value(); }
  std::string str() const { return moved ? std::to_string(*moved) : "asymmetric"; }
  friend bool operator==(const MotionResult&, const MotionResult&) = default;
};

struct AsymSet {
  std::vector<Vertex> members;  // ascending
  bool rooted = true;

  friend bool operator==(const AsymSet&, const AsymSet&) = default;
};

// Number of inequivalent asymmetrizing sets of (T, w):
//   a(T,w) = 2 * prod over twin classes of the root's children of binom(a(x), tau(x)).
// The leading 2 is the root's own membership; for infinite subtrees it is
// absorbed (2 * 2^k = 2^k) which is why the printed recursion omits it.
Natural count_rooted(const RootedTree& tree);

// Quotient by Aut(T). Central vertex: rooted count there. Central edge with
// non-isomorphic halves: product of the half counts. Isomorphic halves with
// half count h: binom(h, 2).
Natural count_unrooted(const UnrootedTree& tree);

// Root-fixing motion of a rooted tree.
MotionResult motion_rooted(const RootedTree& tree);
MotionResult motion(const UnrootedTree& tree);

bool verify_asym_set(const RootedTree& tree, std::span<const Vertex> set);
bool verify_asym_set(const UnrootedTree& tree, std::span<const Vertex> set);

// Streams one representative per equivalence class of asymmetrizing sets in
// canonical order: by size, then by the structural rank of the choice made at
// every twin class. Within a twin class the member with the smallest index
// receives the highest-ranked coloring. Single consumer.
class AsymSetEnumerator {
 public:
  explicit AsymSetEnumerator(const RootedTree& tree);
  explicit AsymSetEnumerator(const UnrootedTree& tree);
  ~AsymSetEnumerator();
  AsymSetEnumerator(AsymSetEnumerator&&) noexcept;
  AsymSetEnumerator& operator=(AsymSetEnumerator&&) noexcept;

  std::optional<AsymSet> next();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

std::vector<AsymSet> enumerate_asym_sets(const RootedTree& tree, std::size_t limit);
std::vector<AsymSet> enumerate_asym_sets(const UnrootedTree& tree, std::size_t limit);

// First set of the enumeration; nullopt iff the count is zero.
std::optional<AsymSet> find_asym_set(const RootedTree& tree);
std::optional<AsymSet> find_asym_set(const UnrootedTree& tree);

// `{a,b}` with labels sorted.
std::string render_set(std::span<const std::string> labels, std::span<const Vertex> set);
// Parses "a,b" (braces optional) into vertex indices.
std::vector<Vertex> parse_set(std::string_view text, const std::vector<std::string>& labels);

Coloring to_coloring(std::size_t n, std::span<const Vertex> set);

}  // namespace asymtree
