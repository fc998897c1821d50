#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "asymtree/tree.hpp"

namespace asymtree::testing {

// Same rooted tree with vertex ids and child order scrambled and labels
// renamed to `x<i>`.
inline RootedTree scrambled(const RootedTree& tree, std::uint64_t seed) {
  const std::size_t n = tree.size();
  std::mt19937_64 rng(seed);
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), Vertex{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<Vertex> parent(n);
  std::vector<std::string> labels(n);
  for (Vertex v = 0; v < n; ++v) {
    parent[perm[v]] = tree.parent(v) == kNoVertex ? kNoVertex : perm[tree.parent(v)];
    labels[perm[v]] = "x" + std::to_string(perm[v]);
  }
  return RootedTree(std::move(parent), std::move(labels));
}

// Rooted isomorphism by backtracking over child matchings; no canonical
// codes involved.
inline bool brute_isomorphic(const RootedTree& a, Vertex u, const RootedTree& b, Vertex v) {
  auto ka = a.children(u);
  auto kb = b.children(v);
  if (ka.size() != kb.size()) return false;
  std::vector<char> used(kb.size(), 0);
  std::vector<std::size_t> pick(ka.size(), 0);
  std::size_t i = 0;
  while (true) {
    if (i == ka.size()) return true;
    bool placed = false;
    for (std::size_t j = pick[i]; j < kb.size(); ++j) {
      if (used[j] || !brute_isomorphic(a, ka[i], b, kb[j])) continue;
      used[j] = 1;
      pick[i] = j + 1;
      ++i;
      if (i < ka.size()) pick[i] = 0;
      placed = true;
      break;
    }
    if (placed) continue;
    if (i == 0) return false;
    --i;
    used[pick[i] - 1] = 0;
  }
}

inline bool brute_isomorphic(const RootedTree& a, const RootedTree& b) {
  return a.size() == b.size() && brute_isomorphic(a, a.root(), b, b.root());
}

// T^v as a tree of its own, labels kept.
inline RootedTree subtree_at(const RootedTree& t, Vertex root) {
  std::vector<Vertex> parent;
  std::vector<std::string> labels;
  std::vector<Vertex> map(t.size(), kNoVertex);
  for (Vertex v : t.preorder()) {
    bool inside = v == root || (t.parent(v) != kNoVertex && map[t.parent(v)] != kNoVertex);
    if (!inside) continue;
    map[v] = static_cast<Vertex>(parent.size());
    parent.push_back(v == root ? kNoVertex : map[t.parent(v)]);
    labels.push_back(t.label(v));
  }
  return RootedTree(std::move(parent), std::move(labels));
}

inline UnrootedTree path(std::size_t n) {
  std::vector<std::string> labels;
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::string(1, static_cast<char>('a' + i)));
  for (Vertex i = 1; i < n; ++i) edges.emplace_back(i - 1, i);
  return UnrootedTree(std::move(labels), std::move(edges));
}

// Extends every leaf by a path until all leaves sit at even depth >= 4.
inline RootedTree deepen_leaves(const RootedTree& t) {
  std::vector<Vertex> parent;
  std::vector<std::string> labels;
  for (Vertex v = 0; v < t.size(); ++v) {
    parent.push_back(t.parent(v));
    labels.push_back(t.label(v));
  }
  for (Vertex v = 0; v < t.size(); ++v) {
    if (!t.children(v).empty()) continue;
    std::size_t depth = t.depth(v);
    std::size_t target = std::max<std::size_t>(4, depth + depth % 2);
    Vertex tip = v;
    for (std::size_t d = depth; d < target; ++d) {
      parent.push_back(tip);
      tip = static_cast<Vertex>(labels.size());
      labels.push_back("p" + std::to_string(tip));
    }
  }
  return RootedTree(std::move(parent), std::move(labels));
}

// Hangs a path of length i below the i-th leaf child of every vertex, so no
// vertex keeps three or more twin leaves.
inline RootedTree break_leaf_fans(const RootedTree& t) {
  std::vector<Vertex> parent;
  std::vector<std::string> labels;
  for (Vertex v = 0; v < t.size(); ++v) {
    parent.push_back(t.parent(v));
    labels.push_back(t.label(v));
  }
  for (Vertex v = 0; v < t.size(); ++v) {
    std::size_t i = 0;
    for (Vertex c : t.children(v)) {
      if (!t.children(c).empty()) continue;
      Vertex tip = c;
      for (std::size_t step = 0; step < i; ++step) {
        parent.push_back(tip);
        tip = static_cast<Vertex>(labels.size());
        labels.push_back("p" + std::to_string(tip));
      }
      ++i;
    }
  }
  return RootedTree(std::move(parent), std::move(labels));
}

inline UnrootedTree unrooted(const std::string& rooted_text) { return to_unrooted(parse_rooted(rooted_text)); }

}  // namespace asymtree::testing
