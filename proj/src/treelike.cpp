#include "asymtree/treelike.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "asymtree/canonical.hpp"
#include "asymtree/error.hpp"

namespace asymtree {

namespace {

std::vector<std::size_t> bfs_distances(const Graph& g, Vertex root) {
  std::vector<std::size_t> dist(g.size(), static_cast<std::size_t>(-1));
  std::vector<Vertex> queue{root};
  dist[root] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Vertex v = queue[head];
    for (Vertex u : g.neighbors(v)) {
      if (dist[u] == static_cast<std::size_t>(-1)) {
        dist[u] = dist[v] + 1;
        queue.push_back(u);
      }
    }
  }
  return dist;
}

void require_connected(const RootedGraph& g) {
  if (g.graph.size() == 0) throw InputError("empty graph");
  if (g.root >= g.graph.size()) throw InputError("root out of range");
  if (!g.graph.connected()) throw InputError("graph is not connected");
}

// A forest component as its own graph, with the map back to the host.
struct Component {
  std::vector<Vertex> members;  // ascending host vertices
  std::vector<std::pair<Vertex, Vertex>> local_edges;
  bool has_root = false;
};

std::vector<Component> split(const RootedGraph& g, const ForestDecomposition& forest) {
  std::vector<Component> out(forest.components.size());
  std::vector<std::size_t> which(g.graph.size());
  std::vector<Vertex> local(g.graph.size());
  for (std::size_t c = 0; c < forest.components.size(); ++c) {
    out[c].members = forest.components[c];
    for (Vertex i = 0; i < out[c].members.size(); ++i) {
      which[out[c].members[i]] = c;
      local[out[c].members[i]] = i;
    }
  }
  out[forest.root_component].has_root = true;
  for (auto [a, b] : forest.edges) out[which[a]].local_edges.emplace_back(local[a], local[b]);
  return out;
}

std::vector<std::string> member_labels(const Graph& g, const Component& c) {
  std::vector<std::string> labels;
  for (Vertex v : c.members) labels.push_back(g.label(v));
  return labels;
}

// Admissibility of a local set: count of members with no forest neighbour
// outside the set.
std::size_t count_unexposed(const Graph& local, const std::vector<char>& in) {
  std::size_t count = 0;
  for (Vertex v = 0; v < local.size(); ++v) {
    if (!in[v]) continue;
    auto nb = local.neighbors(v);
    if (std::all_of(nb.begin(), nb.end(), [&](Vertex u) { return in[u] != 0; })) ++count;
  }
  return count;
}

bool admissible(const Graph& local, const std::vector<char>& in, bool root_component, std::size_t root_degree) {
  std::size_t count = count_unexposed(local, in);
  if (!root_component) return count == 0;
  return root_degree == 1 || count == 1;
}

}  // namespace

ContractionMap contract_even_levels(const RootedTree& tree) {
  const std::size_t n = tree.size();
  std::vector<Vertex> image(n, kNoVertex);
  std::vector<Vertex> leader;
  std::vector<Vertex> parent;
  std::vector<std::string> labels;
  for (Vertex v : tree.preorder()) {
    if (tree.depth(v) % 2 == 1) {
      image[v] = image[tree.parent(v)];
      continue;
    }
    Vertex id = static_cast<Vertex>(leader.size());
    image[v] = id;
    leader.push_back(v);
    labels.push_back(tree.label(v));
    parent.push_back(v == tree.root() ? kNoVertex : image[tree.parent(tree.parent(v))]);
  }
  // The root opens the preorder, so its block is contracted vertex 0.
  return ContractionMap{RootedTree(std::move(parent), std::move(labels)), std::move(image), std::move(leader), 0};
}

AsymSet lift_asym_set(const RootedTree& tree, const ContractionMap& map, std::span<const Vertex> s_prime,
                      LiftMode mode) {
  if (!verify_asym_set(map.contracted, s_prime)) {
    throw PreconditionError("contracted set does not asymmetrize the contracted tree");
  }
  const std::size_t m = map.contracted.size();
  std::vector<char> selected(m, 0);
  for (Vertex b : s_prime) selected[b] = 1;

  const Vertex root = tree.root();
  const bool augment = mode == LiftMode::kAugmented && tree.children(root).size() > 1;
  if (augment && !selected[map.root_image]) {
    for (auto& s : selected) s = !s;
  }
  std::vector<char> in(tree.size(), 0);
  for (Vertex b = 0; b < m; ++b) {
    if (selected[b]) in[map.leader[b]] = 1;
  }
  if (augment) {
    auto kids = tree.children(root);
    auto exceptional = std::find_if(kids.begin(), kids.end(), [&](Vertex u) {
      auto grandkids = tree.children(u);
      return std::all_of(grandkids.begin(), grandkids.end(), [&](Vertex g) { return selected[map.image[g]] != 0; });
    });
    if (exceptional != kids.end()) {
      in[*exceptional] = 1;
    } else {
      for (Vertex u : kids) in[u] = 1;
    }
  }
  AsymSet out;
  for (Vertex v = 0; v < tree.size(); ++v) {
    if (in[v]) out.members.push_back(v);
  }
  return out;
}

std::vector<Vertex> unexposed(const RootedTree& tree, std::span<const Vertex> set) {
  std::vector<char> in(tree.size(), 0);
  for (Vertex v : set) in[v] = 1;
  std::vector<Vertex> out;
  for (Vertex v = 0; v < tree.size(); ++v) {
    if (!in[v]) continue;
    bool exposed = tree.parent(v) != kNoVertex && !in[tree.parent(v)];
    for (Vertex c : tree.children(v)) exposed = exposed || !in[c];
    if (!exposed) out.push_back(v);
  }
  return out;
}

TreelikeCheck check_treelike(const RootedGraph& graph, std::size_t horizon) {
  require_connected(graph);
  const Graph& g = graph.graph;
  TreelikeCheck out;
  out.distance = bfs_distances(g, graph.root);
  out.horizon = horizon;
  std::size_t eccentricity = *std::max_element(out.distance.begin(), out.distance.end());
  if (horizon > eccentricity) {
    throw PreconditionError("horizon " + std::to_string(horizon) + " exceeds the root's eccentricity " +
                            std::to_string(eccentricity));
  }
  const auto& d = out.distance;
  for (Vertex y = 0; y < g.size(); ++y) {
    if (d[y] >= horizon) continue;
    bool has_private_child = false;
    for (Vertex x : g.neighbors(y)) {
      if (d[x] != d[y] + 1) continue;
      auto nb = g.neighbors(x);
      auto parents = std::count_if(nb.begin(), nb.end(), [&](Vertex z) { return d[z] == d[y]; });
      if (parents == 1) {
        has_private_child = true;
        break;
      }
    }
    if (!has_private_child) out.failing.push_back(y);
  }
  return out;
}

ForestDecomposition extract_forest(const RootedGraph& graph) {
  require_connected(graph);
  const Graph& g = graph.graph;
  const std::size_t n = g.size();
  auto d = bfs_distances(g, graph.root);
  ForestDecomposition out;
  std::vector<Vertex> rep(n);
  std::iota(rep.begin(), rep.end(), Vertex{0});
  auto find = [&](Vertex v) {
    while (rep[v] != v) v = rep[v] = rep[rep[v]];
    return v;
  };
  for (Vertex x = 0; x < n; ++x) {
    if (x == graph.root) continue;
    Vertex parent = kNoVertex;
    std::size_t parents = 0;
    for (Vertex z : g.neighbors(x)) {
      if (d[z] + 1 == d[x]) {
        parent = z;
        ++parents;
      }
    }
    if (parents != 1) continue;
    out.edges.emplace_back(parent, x);
    Vertex a = find(parent);
    Vertex b = find(x);
    if (a != b) rep[std::max(a, b)] = std::min(a, b);
  }
  std::map<Vertex, std::size_t> index;
  for (Vertex v = 0; v < n; ++v) {
    Vertex r = find(v);
    auto [it, fresh] = index.emplace(r, out.components.size());
    if (fresh) out.components.emplace_back();
    out.components[it->second].push_back(v);
  }
  out.root_component = index.at(find(graph.root));
  return out;
}

std::string to_string(TreelikeFailure failure) {
  switch (failure) {
    case TreelikeFailure::kComponent:
      return "component";
    case TreelikeFailure::kInequivalence:
      return "inequivalence";
    case TreelikeFailure::kVerification:
      return "verification";
  }
  return "?";
}

TreelikeResult asymmetrize_treelike(const RootedGraph& graph, const oracle::Limits& limits) {
  require_connected(graph);
  const Graph& g = graph.graph;
  oracle::PermutationGroup group = oracle::graph_automorphisms(g, std::nullopt, limits);
  TreelikeResult result;
  if (group.order() == 1) {
    result.set = AsymSet{{}, false};
    return result;
  }
  ForestDecomposition forest = extract_forest(graph);
  std::vector<Component> parts = split(graph, forest);
  const std::size_t root_degree = g.neighbors(graph.root).size();

  struct Candidate {
    std::vector<Vertex> host;  // ascending host vertices
    CanonicalCode colored;
  };
  std::vector<std::vector<Candidate>> candidates(parts.size());
  std::vector<CanonicalCode> shape(parts.size());
  for (std::size_t c = 0; c < parts.size(); ++c) {
    const Component& part = parts[c];
    UnrootedTree local(member_labels(g, part), part.local_edges);
    shape[c] = unrooted_canonical(local);
    oracle::PermutationGroup local_group = oracle::graph_automorphisms(local, std::nullopt, limits);
    // Every asymmetrizing set of the component: the enumerated
    // representatives, each expanded to its orbit.
    std::set<std::vector<Vertex>> seen;
    AsymSetEnumerator sets(local);
    while (auto rep = sets.next()) {
      std::set<std::vector<Vertex>> orbit;
      for (const auto& perm : local_group.elements) {
        std::vector<Vertex> image;
        for (Vertex v : rep->members) image.push_back(perm[v]);
        std::sort(image.begin(), image.end());
        orbit.insert(std::move(image));
      }
      for (const auto& members : orbit) {
        if (!seen.insert(members).second) continue;
        std::vector<char> in(local.size(), 0);
        for (Vertex v : members) in[v] = 1;
        if (!admissible(local, in, part.has_root, root_degree)) continue;
        Candidate cand;
        for (Vertex v : members) cand.host.push_back(part.members[v]);
        cand.colored = unrooted_canonical(local, to_coloring(local.size(), members));
        candidates[c].push_back(std::move(cand));
      }
    }
    if (candidates[c].empty()) {
      result.failure = TreelikeFailure::kComponent;
      return result;
    }
  }

  // Backtracking over one candidate per component.
  std::vector<std::size_t> choice(parts.size(), 0);
  bool reached_full = false;
  std::size_t level = 0;
  auto consistent = [&](std::size_t c) {
    const auto& code = candidates[c][choice[c]].colored;
    for (std::size_t e = 0; e < c; ++e) {
      if (shape[e] == shape[c] && candidates[e][choice[e]].colored == code) return false;
    }
    return true;
  };
  while (true) {
    if (level == parts.size()) {
      reached_full = true;
      std::vector<Vertex> set;
      for (std::size_t c = 0; c < parts.size(); ++c) {
        const auto& host = candidates[c][choice[c]].host;
        set.insert(set.end(), host.begin(), host.end());
      }
      std::sort(set.begin(), set.end());
      if (oracle::stabilizer_trivial(group, set)) {
        result.set = AsymSet{std::move(set), false};
        return result;
      }
      --level;
      ++choice[level];
      continue;
    }
    if (choice[level] == candidates[level].size()) {
      choice[level] = 0;
      if (level == 0) break;
      --level;
      ++choice[level];
      continue;
    }
    if (consistent(level)) {
      ++level;
    } else {
      ++choice[level];
    }
  }
  result.failure = reached_full ? TreelikeFailure::kVerification : TreelikeFailure::kInequivalence;
  return result;
}

bool admissible_sweep(const RootedGraph& graph, const oracle::Limits& limits) {
  require_connected(graph);
  const Graph& g = graph.graph;
  const std::size_t n = g.size();
  if (n > limits.max_subset_vertices || n > 30) {
    throw CapExceeded("subset sweep capped at " + std::to_string(limits.max_subset_vertices) + " vertices");
  }
  oracle::PermutationGroup group = oracle::graph_automorphisms(g, std::nullopt, limits);
  if (group.order() == 1) return true;

  ForestDecomposition forest = extract_forest(graph);
  std::vector<Component> parts = split(graph, forest);
  const std::size_t root_degree = g.neighbors(graph.root).size();
  std::vector<Graph> locals;
  std::vector<oracle::PermutationGroup> local_groups;
  for (const auto& part : parts) {
    locals.emplace_back(member_labels(g, part), part.local_edges);
    local_groups.push_back(oracle::graph_automorphisms(locals.back(), std::nullopt, limits));
  }
  // For each pair of equal-sized components, the isomorphisms between them,
  // read off the automorphisms of their disjoint union.
  struct Pair {
    std::size_t a;
    std::size_t b;
    std::vector<std::vector<Vertex>> maps;  // local a -> local b
  };
  std::vector<Pair> pairs;
  for (std::size_t a = 0; a < parts.size(); ++a) {
    for (std::size_t b = a + 1; b < parts.size(); ++b) {
      const std::size_t k = parts[a].members.size();
      if (parts[b].members.size() != k || locals[a].edges().size() != locals[b].edges().size()) continue;
      std::vector<std::string> labels;
      for (std::size_t i = 0; i < 2 * k; ++i) labels.push_back("u" + std::to_string(i));
      auto edges = locals[a].edges();
      for (auto [x, y] : locals[b].edges()) edges.emplace_back(x + k, y + k);
      oracle::PermutationGroup both =
          oracle::graph_automorphisms(Graph(std::move(labels), std::move(edges)), std::nullopt, limits);
      Pair pair{a, b, {}};
      for (const auto& perm : both.elements) {
        if (k > 0 && perm[0] >= k) pair.maps.emplace_back(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(k));
      }
      for (auto& m : pair.maps) {
        for (auto& v : m) v -= static_cast<Vertex>(k);
      }
      if (!pair.maps.empty()) pairs.push_back(std::move(pair));
    }
  }

  std::vector<std::vector<char>> in(parts.size());
  for (std::size_t c = 0; c < parts.size(); ++c) in[c].assign(parts[c].members.size(), 0);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    bool ok = true;
    for (std::size_t c = 0; c < parts.size() && ok; ++c) {
      std::vector<Vertex> local_set;
      for (Vertex i = 0; i < parts[c].members.size(); ++i) {
        in[c][i] = static_cast<char>(mask >> parts[c].members[i] & 1u);
        if (in[c][i]) local_set.push_back(i);
      }
      ok = admissible(locals[c], in[c], parts[c].has_root, root_degree) &&
           oracle::stabilizer_trivial(local_groups[c], local_set);
    }
    for (std::size_t p = 0; p < pairs.size() && ok; ++p) {
      const auto& pair = pairs[p];
      for (const auto& m : pair.maps) {
        bool equivalent = true;
        for (Vertex i = 0; i < m.size() && equivalent; ++i) equivalent = in[pair.a][i] == in[pair.b][m[i]];
        if (equivalent) {
          ok = false;
          break;
        }
      }
    }
    if (!ok) continue;
    std::vector<Vertex> set;
    for (Vertex v = 0; v < n; ++v) {
      if (mask >> v & 1u) set.push_back(v);
    }
    if (oracle::stabilizer_trivial(group, set)) return true;
  }
  return false;
}

}  // namespace asymtree
