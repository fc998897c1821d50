#include "asymtree/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <set>
#include <string>

#include "asymtree/error.hpp"

namespace asymtree::oracle {

namespace {

constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

std::vector<std::vector<std::uint32_t>> all_distances(const Graph& g) {
  const std::size_t n = g.size();
  std::vector<std::vector<std::uint32_t>> dist(n, std::vector<std::uint32_t>(n, kUnreachable));
  for (Vertex s = 0; s < n; ++s) {
    std::vector<Vertex> queue{s};
    dist[s][s] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      Vertex v = queue[head];
      for (Vertex u : g.neighbors(v)) {
        if (dist[s][u] == kUnreachable) {
          dist[s][u] = dist[s][v] + 1;
          queue.push_back(u);
        }
      }
    }
  }
  return dist;
}

std::size_t support(const Permutation& p) {
  std::size_t moved = 0;
  for (Vertex v = 0; v < p.size(); ++v) moved += p[v] != v;
  return moved;
}

std::uint32_t image_mask(const Permutation& p, std::uint32_t mask) {
  std::uint32_t out = 0;
  for (Vertex v = 0; v < p.size(); ++v) {
    if (mask >> v & 1u) out |= 1u << p[v];
  }
  return out;
}

}  // namespace

Limits Limits::from_env() {
  Limits limits;
  if (const char* env = std::getenv("ASYMTREE_MAX_N")) {
    char* end = nullptr;
    unsigned long n = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) {
      limits.max_group_vertices = n;
      limits.max_subset_vertices = std::min<unsigned long>(std::max<unsigned long>(n, 16), 30);
    }
  }
  return limits;
}

Graph as_graph(const RootedTree& tree) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex v = 0; v < tree.size(); ++v) {
    if (tree.parent(v) != kNoVertex) edges.emplace_back(tree.parent(v), v);
  }
  return Graph(tree.labels(), std::move(edges));
}

PermutationGroup graph_automorphisms(const Graph& graph, std::optional<Vertex> fixed_root, const Limits& limits) {
  const std::size_t n = graph.size();
  if (n > limits.max_group_vertices) {
    throw CapExceeded("automorphism listing capped at " + std::to_string(limits.max_group_vertices) +
                      " vertices (graph has " + std::to_string(n) + ")");
  }
  auto dist = all_distances(graph);

  // Assignment order: BFS from the root (or vertex 0), restarting in every
  // component, so most vertices have an already-mapped neighbour.
  std::vector<Vertex> order;
  std::vector<char> placed(n, 0);
  std::vector<Vertex> starts;
  if (fixed_root) starts.push_back(*fixed_root);
  for (Vertex v = 0; v < n; ++v) starts.push_back(v);
  for (Vertex s : starts) {
    if (placed[s]) continue;
    placed[s] = 1;
    std::size_t head = order.size();
    order.push_back(s);
    for (; head < order.size(); ++head) {
      for (Vertex u : graph.neighbors(order[head])) {
        if (!placed[u]) {
          placed[u] = 1;
          order.push_back(u);
        }
      }
    }
  }

  PermutationGroup group;
  Permutation image(n, kNoVertex);
  std::vector<char> used(n, 0);
  // Explicit depth-first search over positions in `order`.
  std::vector<Vertex> next_candidate(n + 1, 0);
  std::size_t depth = 0;
  while (true) {
    if (depth == n) {
      group.elements.push_back(image);
      if (group.elements.size() > limits.max_group_order) {
        throw CapExceeded("automorphism group larger than " + std::to_string(limits.max_group_order));
      }
      if (depth == 0) break;
      --depth;
      used[image[order[depth]]] = 0;
      image[order[depth]] = kNoVertex;
      continue;
    }
    Vertex v = order[depth];
    bool advanced = false;
    for (Vertex u = next_candidate[depth]; u < n; ++u) {
      if (used[u]) continue;
      if (fixed_root && (v == *fixed_root) != (u == *fixed_root)) continue;
      if (graph.neighbors(u).size() != graph.neighbors(v).size()) continue;
      bool ok = true;
      for (std::size_t j = 0; j < depth && ok; ++j) {
        ok = dist[v][order[j]] == dist[u][image[order[j]]];
      }
      if (!ok) continue;
      image[v] = u;
      used[u] = 1;
      next_candidate[depth] = u + 1;
      ++depth;
      next_candidate[depth] = 0;
      advanced = true;
      break;
    }
    if (advanced) continue;
    if (depth == 0) break;
    --depth;
    used[image[order[depth]]] = 0;
    image[order[depth]] = kNoVertex;
  }
  std::stable_sort(group.elements.begin(), group.elements.end(),
                   [](const Permutation& a, const Permutation& b) { return support(a) < support(b); });
  group.closed = true;
  return group;
}

PermutationGroup tree_automorphisms(const RootedTree& tree, bool fix_root, const Limits& limits) {
  return graph_automorphisms(as_graph(tree), fix_root ? std::optional<Vertex>(tree.root()) : std::nullopt, limits);
}

PermutationGroup tree_automorphisms(const UnrootedTree& tree, const Limits& limits) {
  return graph_automorphisms(tree, std::nullopt, limits);
}

bool satisfies_group_axioms(const PermutationGroup& group) {
  if (group.elements.empty()) return false;
  const std::size_t n = group.elements.front().size();
  std::set<Permutation> members(group.elements.begin(), group.elements.end());
  if (members.size() != group.elements.size()) return false;
  Permutation identity(n);
  for (Vertex v = 0; v < n; ++v) identity[v] = v;
  if (!members.count(identity)) return false;
  Permutation tmp(n);
  for (const auto& a : group.elements) {
    for (Vertex v = 0; v < n; ++v) tmp[a[v]] = v;
    if (!members.count(tmp)) return false;
    for (const auto& b : group.elements) {
      for (Vertex v = 0; v < n; ++v) tmp[v] = a[b[v]];
      if (!members.count(tmp)) return false;
    }
  }
  return true;
}

bool stabilizer_trivial(const PermutationGroup& group, std::span<const Vertex> set) {
  if (group.elements.empty()) return true;
  const std::size_t n = group.elements.front().size();
  std::vector<char> in(n, 0);
  for (Vertex v : set) in[v] = 1;
  for (const auto& p : group.elements) {
    if (support(p) == 0) continue;
    bool preserves = true;
    for (Vertex v = 0; v < n && preserves; ++v) preserves = in[v] == in[p[v]];
    if (preserves) return false;
  }
  return true;
}

OrbitCount count_asym(const Graph& graph, std::optional<Vertex> fixed_root, const Limits& limits) {
  const std::size_t n = graph.size();
  if (n > limits.max_subset_vertices || n > 30) {
    throw CapExceeded("subset sweep capped at " + std::to_string(limits.max_subset_vertices) + " vertices");
  }
  Limits group_limits = limits;
  group_limits.max_group_vertices = std::max(limits.max_group_vertices, n);
  PermutationGroup group = graph_automorphisms(graph, fixed_root, group_limits);
  std::vector<const Permutation*> moving;
  for (const auto& p : group.elements) {
    if (support(p) > 0) moving.push_back(&p);
  }
  OrbitCount result;
  result.group_order = group.order();
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t m = 0; m < total; ++m) {
    auto mask = static_cast<std::uint32_t>(m);
    bool trivial = std::none_of(moving.begin(), moving.end(),
                                [&](const Permutation* p) { return image_mask(*p, mask) == mask; });
    if (trivial) ++result.trivially_stabilized;
  }
  result.orbits = result.trivially_stabilized / result.group_order;
  return result;
}

OrbitCount count_asym(const RootedTree& tree, const Limits& limits) {
  return count_asym(as_graph(tree), tree.root(), limits);
}

OrbitCount count_asym(const UnrootedTree& tree, const Limits& limits) {
  return count_asym(static_cast<const Graph&>(tree), std::nullopt, limits);
}

MotionResult motion(const PermutationGroup& group) {
  MotionResult result;
  for (const auto& p : group.elements) {
    std::size_t s = support(p);
    if (s > 0 && (!result.moved || s < *result.moved)) result.moved = s;
  }
  return result;
}

MotionResult motion(const RootedTree& tree, const Limits& limits) {
  return motion(tree_automorphisms(tree, true, limits));
}

MotionResult motion(const UnrootedTree& tree, const Limits& limits) {
  return motion(tree_automorphisms(tree, limits));
}

}  // namespace asymtree::oracle
