#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "asymtree/cardinal.hpp"
#include "asymtree/tree.hpp"

namespace asymtree {

// Ranking of unlabeled rooted trees. A tree on n vertices is its root plus a
// multiset of subtrees; multisets are ranked by (number j of subtrees of the
// largest admissible size k, the j-multiset of their ranks, the remaining
// forest with sizes < k). Counts are memoized per instance.
class RootedTreeRanking {
 public:
  Natural trees(std::size_t n);  // number of rooted trees with n vertices
  RootedTree unrank(std::size_t n, const Natural& index);

 private:
  Natural forests(std::size_t m, std::size_t k);
  void build(std::size_t n, Natural index, std::vector<Vertex>& parent, Vertex parent_of_root);
  void build_forest(std::size_t m, std::size_t k, Natural index, std::vector<Vertex>& parent, Vertex parent_vertex);

  std::vector<Natural> trees_;
  std::map<std::pair<std::size_t, std::size_t>, Natural> forests_;
};

// Every isomorphism class exactly once, in rank order.
std::vector<RootedTree> all_rooted_trees(std::size_t n);
std::vector<UnrootedTree> all_unrooted_trees(std::size_t n);

// Rooted plane trees with n vertices, ranked by their depth-first Dyck word
// (`(` = descend to a new child, `)` = return) in lexicographic order with
// `(` < `)`. There are Catalan(n-1) of them.
Natural plane_tree_count(std::size_t n);
RootedTree unrank_plane_tree(std::size_t n, const Natural& index);

// Uniform index below `bound`: ceil(log2 bound) + 64 bits drawn from
// std::mt19937_64(seed), most significant word first, reduced mod bound.
Natural random_index(const Natural& bound, std::uint64_t seed);

// The reproducible fuzzing generator: unrank_plane_tree(n, random_index(Catalan(n-1), seed)).
RootedTree random_tree(std::size_t n, std::uint64_t seed);

}  // namespace asymtree
