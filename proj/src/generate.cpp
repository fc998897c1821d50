#include "asymtree/generate.hpp"

#include <random>
#include <set>
#include <string>

#include "asymtree/canonical.hpp"
#include "asymtree/error.hpp"

namespace asymtree {

namespace {

Natural multichoose(const Natural& kinds, std::size_t j) {
  if (j == 0) return 1;
  if (kinds == 0) return 0;
  Natural top = kinds + j - 1;
  Natural r;
  mpz_bin_ui(r.get_mpz_t(), top.get_mpz_t(), j);
  return r;
}

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> labels(n);
  for (std::size_t v = 0; v < n; ++v) labels[v] = "v" + std::to_string(v);
  return labels;
}

}  // namespace

Natural RootedTreeRanking::trees(std::size_t n) {
  if (n == 0) return 0;
  while (trees_.size() <= n) {
    std::size_t m = trees_.size();
    trees_.push_back(m == 0 ? Natural(0) : forests(m - 1, m - 1));
  }
  return trees_[n];
}

Natural RootedTreeRanking::forests(std::size_t m, std::size_t k) {
  if (m == 0) return 1;
  if (k == 0) return 0;
  if (k > m) k = m;
  auto key = std::make_pair(m, k);
  if (auto it = forests_.find(key); it != forests_.end()) return it->second;
  Natural total = 0;
  Natural kinds = trees(k);
  for (std::size_t j = 0; j * k <= m; ++j) total += multichoose(kinds, j) * forests(m - j * k, k - 1);
  forests_.emplace(key, total);
  return total;
}

void RootedTreeRanking::build(std::size_t n, Natural index, std::vector<Vertex>& parent, Vertex parent_of_root) {
  Vertex root = static_cast<Vertex>(parent.size());
  parent.push_back(parent_of_root);
  build_forest(n - 1, n - 1, std::move(index), parent, root);
}

void RootedTreeRanking::build_forest(std::size_t m, std::size_t k, Natural index, std::vector<Vertex>& parent,
                                     Vertex parent_vertex) {
  while (m > 0) {
    if (k > m) k = m;
    Natural kinds = trees(k);
    for (std::size_t j = 0;; ++j) {
      if (j * k > m) throw PreconditionError("rank out of range");
      Natural rest = forests(m - j * k, k - 1);
      Natural block = multichoose(kinds, j) * rest;
      if (index >= block) {
        index -= block;
        continue;
      }
      Natural chosen = index / rest;
      index %= rest;
      // chosen -> non-decreasing j-sequence of tree ranks
      Natural first = 0;
      for (std::size_t slot = j; slot > 0; --slot) {
        while (true) {
          Natural with_first = multichoose(kinds - first, slot - 1);
          if (chosen < with_first) break;
          chosen -= with_first;
          ++first;
        }
        build(k, first, parent, parent_vertex);
      }
      m -= j * k;
      --k;
      break;
    }
  }
}

RootedTree RootedTreeRanking::unrank(std::size_t n, const Natural& index) {
  if (n == 0 || index < 0 || index >= trees(n)) throw PreconditionError("rank out of range");
  std::vector<Vertex> parent;
  build(n, index, parent, kNoVertex);
  return RootedTree(std::move(parent), default_labels(n));
}

std::vector<RootedTree> all_rooted_trees(std::size_t n) {
  RootedTreeRanking ranking;
  std::vector<RootedTree> out;
  Natural total = ranking.trees(n);
  for (Natural i = 0; i < total; ++i) out.push_back(ranking.unrank(n, i));
  return out;
}

std::vector<UnrootedTree> all_unrooted_trees(std::size_t n) {
  std::vector<UnrootedTree> out;
  std::set<CanonicalCode> seen;
  for (const auto& t : all_rooted_trees(n)) {
    UnrootedTree u = to_unrooted(t);
    if (seen.insert(unrooted_canonical(u)).second) out.push_back(std::move(u));
  }
  return out;
}

Natural plane_tree_count(std::size_t n) {
  if (n == 0) return 0;
  Natural c;
  mpz_bin_uiui(c.get_mpz_t(), 2 * (n - 1), n - 1);
  return c / n;
}

RootedTree unrank_plane_tree(std::size_t n, const Natural& index) {
  if (n == 0 || index < 0 || index >= plane_tree_count(n)) throw PreconditionError("rank out of range");
  // State: L steps left at height h; binom = C(L, k) with k = (L - h) / 2.
  // Completions from that state: (h + 1) / ((L + h) / 2 + 1) * C(L, k).
  std::size_t steps = 2 * (n - 1);
  std::size_t height = 0;
  std::size_t k = n - 1;
  Natural binom;
  mpz_bin_uiui(binom.get_mpz_t(), steps, k);
  Natural rank = index;
  std::vector<Vertex> parent{kNoVertex};
  Vertex current = 0;
  for (; steps > 0; --steps) {
    Natural up_count = 0;
    Natural up_binom = 0;
    if (k > 0) {
      up_binom = binom * k / steps;
      up_count = up_binom * (height + 2) / ((steps + height) / 2 + 1);
    }
    if (rank < up_count) {
      Vertex child = static_cast<Vertex>(parent.size());
      parent.push_back(current);
      current = child;
      binom = up_binom;
      ++height;
      --k;
    } else {
      rank -= up_count;
      binom = binom * (steps - k) / steps;
      current = parent[current];
      --height;
    }
  }
  return RootedTree(std::move(parent), default_labels(n));
}

Natural random_index(const Natural& bound, std::uint64_t seed) {
  if (bound <= 0) throw PreconditionError("empty range");
  std::mt19937_64 rng(seed);
  std::size_t words = (mpz_sizeinbase(bound.get_mpz_t(), 2) + 63) / 64 + 1;
  Natural value = 0;
  for (std::size_t i = 0; i < words; ++i) {
    std::uint64_t w = rng();
    value <<= 32;
    value += static_cast<unsigned long>(w >> 32);
    value <<= 32;
    value += static_cast<unsigned long>(w & 0xffffffffu);
  }
  return value % bound;
}

RootedTree random_tree(std::size_t n, std::uint64_t seed) {
  return unrank_plane_tree(n, random_index(plane_tree_count(n), seed));
}

}  // namespace asymtree
