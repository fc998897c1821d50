#include "asymtree/canonical.hpp"

#include <algorithm>
#include <map>

namespace asymtree {

TypeTable subtree_types(const RootedTree& tree, std::span<const std::uint8_t> colors) {
  const std::size_t n = tree.size();
  std::vector<std::size_t> height(n, 0);
  const auto& order = tree.preorder();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    Vertex v = *it;
    if (tree.parent(v) != kNoVertex) height[tree.parent(v)] = std::max(height[tree.parent(v)], height[v] + 1);
  }
  std::size_t max_height = height[tree.root()];
  std::vector<std::vector<Vertex>> by_height(max_height + 1);
  for (Vertex v = 0; v < n; ++v) by_height[height[v]].push_back(v);

  TypeTable table;
  table.type.assign(n, 0);
  std::uint32_t next = 0;
  std::vector<std::uint32_t> signature;
  for (const auto& level : by_height) {
    // signature = color, then sorted child types
    std::vector<std::pair<std::vector<std::uint32_t>, Vertex>> sigs;
    sigs.reserve(level.size());
    for (Vertex v : level) {
      signature.clear();
      signature.push_back(colors.empty() ? 0u : (colors[v] ? 1u : 0u));
      for (Vertex c : tree.children(v)) signature.push_back(table.type[c]);
      std::sort(signature.begin() + 1, signature.end());
      sigs.emplace_back(signature, v);
    }
    std::sort(sigs.begin(), sigs.end());
    for (std::size_t i = 0; i < sigs.size(); ++i) {
      if (i > 0 && sigs[i].first != sigs[i - 1].first) ++next;
      table.type[sigs[i].second] = next;
    }
    if (!sigs.empty()) ++next;
  }
  table.count = next;
  return table;
}

CanonicalCode ahu_canonical(const RootedTree& tree, Vertex subtree_root, const TypeTable& types,
                            std::span<const std::uint8_t> colors) {
  auto open = [&](Vertex v) { return !colors.empty() && colors[v] ? '[' : '('; };
  auto close = [&](Vertex v) { return !colors.empty() && colors[v] ? ']' : ')'; };
  auto sorted_children = [&](Vertex v) {
    std::vector<Vertex> kids(tree.children(v).begin(), tree.children(v).end());
    std::stable_sort(kids.begin(), kids.end(), [&](Vertex a, Vertex b) { return types.type[a] < types.type[b]; });
    return kids;
  };
  CanonicalCode code;
  struct Frame {
    Vertex v;
    std::vector<Vertex> kids;
    std::size_t next = 0;
  };
  std::vector<Frame> stack;
  code.token += open(subtree_root);
  stack.push_back({subtree_root, sorted_children(subtree_root)});
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.next == f.kids.size()) {
      code.token += close(f.v);
      stack.pop_back();
      continue;
    }
    Vertex c = f.kids[f.next++];
    code.token += open(c);
    stack.push_back({c, sorted_children(c)});
  }
  return code;
}

CanonicalCode ahu_canonical(const RootedTree& tree, std::span<const std::uint8_t> colors) {
  return ahu_canonical(tree, tree.root(), subtree_types(tree, colors), colors);
}

SimilarityTable similarity(const RootedTree& tree) {
  TypeTable types = subtree_types(tree);
  SimilarityTable table(tree.size());
  for (Vertex y = 0; y < tree.size(); ++y) {
    std::map<std::uint32_t, std::vector<Vertex>> groups;
    for (Vertex x : tree.children(y)) groups[types.type[x]].push_back(x);
    for (auto& [type, members] : groups) {
      std::sort(members.begin(), members.end());
      Vertex rep = *std::min_element(members.begin(), members.end(),
                                     [&](Vertex a, Vertex b) { return tree.label(a) < tree.label(b); });
      table[y].push_back(TwinClass{rep, members.size(), std::move(members)});
    }
  }
  return table;
}

namespace {

// Rooted tree on the vertices of `tree` plus a virtual root joined to the two
// endpoints of the central edge.
RootedTree hang_from_edge(const UnrootedTree& tree, Vertex a, Vertex b) {
  const std::size_t n = tree.size();
  std::vector<Vertex> parent(n + 1, kNoVertex);
  std::vector<char> seen(n, 0);
  for (Vertex start : {a, b}) {
    parent[start] = static_cast<Vertex>(n);
    seen[start] = 1;
  }
  std::vector<Vertex> stack{a, b};
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (Vertex u : tree.neighbors(v)) {
      if (!seen[u]) {
        seen[u] = 1;
        parent[u] = v;
        stack.push_back(u);
      }
    }
  }
  auto labels = tree.labels();
  labels.emplace_back();
  return RootedTree(std::move(parent), std::move(labels));
}

}  // namespace

CenterResult center(const UnrootedTree& tree) {
  const std::size_t n = tree.size();
  CenterResult result;
  if (n == 1) {
    result.vertex = 0;
    return result;
  }
  std::vector<std::size_t> degree(n);
  std::vector<Vertex> layer;
  for (Vertex v = 0; v < n; ++v) {
    degree[v] = tree.neighbors(v).size();
    if (degree[v] <= 1) layer.push_back(v);
  }
  std::size_t remaining = n;
  while (remaining > 2) {
    remaining -= layer.size();
    std::vector<Vertex> next;
    for (Vertex v : layer) {
      for (Vertex u : tree.neighbors(v)) {
        if (--degree[u] == 1) next.push_back(u);
      }
    }
    layer = std::move(next);
  }
  std::sort(layer.begin(), layer.end());
  if (layer.size() == 1) {
    result.vertex = layer[0];
    return result;
  }
  result.kind = CenterResult::Kind::kEdge;
  result.edge = {layer[0], layer[1]};
  RootedTree hung = hang_from_edge(tree, layer[0], layer[1]);
  TypeTable types = subtree_types(hung);
  result.halves_isomorphic = types.type[layer[0]] == types.type[layer[1]];
  return result;
}

CenteredTree center_rooted(const UnrootedTree& tree) {
  CenterResult c = center(tree);
  if (c.kind == CenterResult::Kind::kVertex) return CenteredTree{tree.rooted_at(c.vertex), c, false};
  return CenteredTree{hang_from_edge(tree, c.edge.first, c.edge.second), c, true};
}

CanonicalCode unrooted_canonical(const UnrootedTree& tree, std::span<const std::uint8_t> colors) {
  CenteredTree ct = center_rooted(tree);
  if (!ct.virtual_root || colors.empty()) return ahu_canonical(ct.tree, colors);
  Coloring extended(colors.begin(), colors.end());
  extended.push_back(0);
  return ahu_canonical(ct.tree, extended);
}

}  // namespace asymtree
