#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace asymtree {

using Vertex = std::uint32_t;
inline constexpr Vertex kNoVertex = static_cast<Vertex>(-1);

// Finite tree with a designated root. Vertices are dense indices 0..n-1 and
// every vertex carries a unique label. Trees produced by `parse_rooted` number
// vertices in depth-first (preorder) input order.
class RootedTree {
 public:
  // `parent[root] == kNoVertex`; every other entry names the parent. Children
  // keep the relative order of their indices.
  RootedTree(std::vector<Vertex> parent, std::vector<std::string> labels);

  std::size_t size() const { return parent_.size(); }
  Vertex root() const { return root_; }
  Vertex parent(Vertex v) const { return parent_[v]; }
  std::span<const Vertex> children(Vertex v) const { return children_[v]; }
  const std::string& label(Vertex v) const { return labels_[v]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<Vertex> find(std::string_view label) const;

  std::size_t depth(Vertex v) const { return depth_[v]; }
  // Vertices in depth-first order from the root (children in index order).
  const std::vector<Vertex>& preorder() const { return preorder_; }

 private:
  std::vector<Vertex> parent_;
  std::vector<std::vector<Vertex>> children_;
  std::vector<std::string> labels_;
  std::vector<std::size_t> depth_;
  std::vector<Vertex> preorder_;
  std::unordered_map<std::string, Vertex> by_label_;
  Vertex root_ = kNoVertex;
};

// Simple labelled undirected graph; the base for unrooted trees and the
// rooted graphs consumed by the tree-like procedures.
class Graph {
 public:
  Graph() = default;
  Graph(std::vector<std::string> labels, std::vector<std::pair<Vertex, Vertex>> edges);

  std::size_t size() const { return labels_.size(); }
  std::span<const Vertex> neighbors(Vertex v) const { return adjacency_[v]; }
  const std::vector<std::pair<Vertex, Vertex>>& edges() const { return edges_; }
  const std::string& label(Vertex v) const { return labels_[v]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<Vertex> find(std::string_view label) const;
  bool adjacent(Vertex a, Vertex b) const;
  bool connected() const;

 private:
  std::vector<std::string> labels_;
  std::vector<std::pair<Vertex, Vertex>> edges_;
  std::vector<std::vector<Vertex>> adjacency_;
  std::unordered_map<std::string, Vertex> by_label_;
};

// A graph that is connected, acyclic and non-empty.
class UnrootedTree : public Graph {
 public:
  UnrootedTree(std::vector<std::string> labels, std::vector<std::pair<Vertex, Vertex>> edges);

  RootedTree rooted_at(Vertex root) const;
};

struct RootedGraph {
  Graph graph;
  Vertex root = 0;
};

RootedTree parse_rooted(std::string_view text);
std::string serialize(const RootedTree& tree);

UnrootedTree parse_unrooted(std::string_view text);
std::string serialize(const UnrootedTree& tree);
UnrootedTree to_unrooted(const RootedTree& tree);

RootedGraph parse_graph(std::string_view text);
std::string serialize(const RootedGraph& graph);

enum class InputFormat { kRooted, kUnrooted, kGraph, kPresentation };
InputFormat detect_format(std::string_view text);

// |T^x| for every vertex.
std::vector<std::size_t> subtree_sizes(const RootedTree& tree);
std::size_t subtree_size(const RootedTree& tree, Vertex v);

}  // namespace asymtree
