#include "asymtree/tree.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "asymtree/error.hpp"

namespace asymtree {

namespace {

bool is_label_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

bool is_label(std::string_view s) { return !s.empty() && std::all_of(s.begin(), s.end(), is_label_char); }

std::unordered_map<std::string, Vertex> index_labels(const std::vector<std::string>& labels) {
  std::unordered_map<std::string, Vertex> by_label;
  by_label.reserve(labels.size());
  for (Vertex v = 0; v < labels.size(); ++v) {
    if (!by_label.emplace(labels[v], v).second) throw InputError("duplicate label '" + labels[v] + "'");
  }
  return by_label;
}

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

// Splits into whitespace-separated tokens per line, dropping blank lines and
// `#` comments.
std::vector<Line> tokenize_lines(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view line = text.substr(start, end - start);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::istringstream in{std::string(line)};
    Line parsed{number, {}};
    for (std::string tok; in >> tok;) parsed.tokens.push_back(tok);
    if (!parsed.tokens.empty()) lines.push_back(std::move(parsed));
    start = end + 1;
  }
  return lines;
}

// Reads `u v` edge lines and single-token vertex lines after a header.
Graph read_edge_list(const std::vector<Line>& lines, std::size_t first) {
  std::vector<std::string> labels;
  std::unordered_map<std::string, Vertex> ids;
  std::vector<std::pair<Vertex, Vertex>> edges;
  auto intern = [&](const std::string& tok, std::size_t line) {
    if (!is_label(tok)) throw ParseError("invalid vertex label '" + tok + "'", line, true);
    auto [it, inserted] = ids.emplace(tok, static_cast<Vertex>(labels.size()));
    if (inserted) labels.push_back(tok);
    return it->second;
  };
  for (std::size_t i = first; i < lines.size(); ++i) {
    const auto& l = lines[i];
    if (l.tokens.size() == 1) {
      intern(l.tokens[0], l.number);
    } else if (l.tokens.size() == 2) {
      Vertex a = intern(l.tokens[0], l.number);
      Vertex b = intern(l.tokens[1], l.number);
      if (a == b) throw ParseError("self-loop at '" + l.tokens[0] + "'", l.number, true);
      edges.emplace_back(a, b);
    } else {
      throw ParseError("expected 'u v'", l.number, true);
    }
  }
  return Graph(std::move(labels), std::move(edges));
}

}  // namespace

RootedTree::RootedTree(std::vector<Vertex> parent, std::vector<std::string> labels)
    : parent_(std::move(parent)), labels_(std::move(labels)) {
  const std::size_t n = parent_.size();
  if (n == 0) throw InputError("tree must have at least one vertex");
  if (labels_.size() != n) throw InputError("label count does not match vertex count");
  by_label_ = index_labels(labels_);
  children_.resize(n);
  for (Vertex v = 0; v < n; ++v) {
    if (parent_[v] == kNoVertex) {
      if (root_ != kNoVertex) throw InputError("tree has more than one root");
      root_ = v;
    } else {
      if (parent_[v] >= n || parent_[v] == v) throw InputError("invalid parent reference");
      children_[parent_[v]].push_back(v);
    }
  }
  if (root_ == kNoVertex) throw InputError("tree has no root");
  depth_.assign(n, 0);
  preorder_.reserve(n);
  std::vector<Vertex> stack{root_};
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    preorder_.push_back(v);
    for (auto it = children_[v].rbegin(); it != children_[v].rend(); ++it) {
      depth_[*it] = depth_[v] + 1;
      stack.push_back(*it);
    }
  }
  if (preorder_.size() != n) throw InputError("parent map contains a cycle");
}

std::optional<Vertex> RootedTree::find(std::string_view label) const {
  auto it = by_label_.find(std::string(label));
  if (it == by_label_.end()) return std::nullopt;
  return it->second;
}

Graph::Graph(std::vector<std::string> labels, std::vector<std::pair<Vertex, Vertex>> edges)
    : labels_(std::move(labels)), edges_(std::move(edges)) {
  by_label_ = index_labels(labels_);
  adjacency_.resize(labels_.size());
  for (auto [a, b] : edges_) {
    if (a >= size() || b >= size() || a == b) throw InputError("invalid edge");
    adjacency_[a].push_back(b);
    adjacency_[b].push_back(a);
  }
  for (auto& adj : adjacency_) {
    std::sort(adj.begin(), adj.end());
    if (std::adjacent_find(adj.begin(), adj.end()) != adj.end()) throw InputError("duplicate edge");
  }
}

std::optional<Vertex> Graph::find(std::string_view label) const {
  auto it = by_label_.find(std::string(label));
  if (it == by_label_.end()) return std::nullopt;
  return it->second;
}

bool Graph::adjacent(Vertex a, Vertex b) const {
  return std::binary_search(adjacency_[a].begin(), adjacency_[a].end(), b);
}

bool Graph::connected() const {
  if (size() == 0) return false;
  std::vector<char> seen(size(), 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (Vertex u : adjacency_[v]) {
      if (!seen[u]) {
        seen[u] = 1;
        ++count;
        stack.push_back(u);
      }
    }
  }
  return count == size();
}

UnrootedTree::UnrootedTree(std::vector<std::string> labels, std::vector<std::pair<Vertex, Vertex>> edges)
    : Graph(std::move(labels), std::move(edges)) {
  if (size() == 0) throw InputError("tree must have at least one vertex");
  if (this->edges().size() + 1 != size() || !connected()) throw InputError("edges do not form a tree");
}

RootedTree UnrootedTree::rooted_at(Vertex root) const {
  std::vector<Vertex> parent(size(), kNoVertex);
  std::vector<char> seen(size(), 0);
  std::vector<Vertex> stack{root};
  seen[root] = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (Vertex u : neighbors(v)) {
      if (!seen[u]) {
        seen[u] = 1;
        parent[u] = v;
        stack.push_back(u);
      }
    }
  }
  return RootedTree(std::move(parent), labels());
}

RootedTree parse_rooted(std::string_view text) {
  std::vector<Vertex> parent;
  std::vector<std::string> labels;
  std::vector<std::size_t> label_pos;
  std::vector<Vertex> open;
  std::size_t pos = 0;
  bool expect_node = true;
  bool have_root = false;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  while (true) {
    skip_ws();
    if (expect_node) {
      if (have_root && open.empty()) throw ParseError("unexpected trailing input", pos);
      std::size_t start = pos;
      std::string label;
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
      } else {
        while (pos < text.size() && is_label_char(text[pos])) ++pos;
        label = std::string(text.substr(start, pos - start));
      }
      std::size_t after_label = pos;
      skip_ws();
      bool group = pos < text.size() && text[pos] == '(';
      if (after_label == start && !group) throw ParseError("expected a node", start);
      Vertex v = static_cast<Vertex>(parent.size());
      parent.push_back(open.empty() ? kNoVertex : open.back());
      labels.push_back(std::move(label));
      label_pos.push_back(start);
      have_root = true;
      if (group) {
        open.push_back(v);
        ++pos;
      } else {
        expect_node = false;
      }
      continue;
    }
    if (pos == text.size()) {
      if (!open.empty()) throw ParseError("unclosed '('", pos);
      break;
    }
    if (text[pos] == ',' && !open.empty()) {
      ++pos;
      expect_node = true;
    } else if (text[pos] == ')' && !open.empty()) {
      open.pop_back();
      ++pos;
    } else {
      throw ParseError(std::string("unexpected character '") + text[pos] + "'", pos);
    }
  }
  for (std::size_t v = 0; v < labels.size(); ++v) {
    if (labels[v].empty()) labels[v] = "v" + std::to_string(v);
  }
  return RootedTree(std::move(parent), std::move(labels));
}

std::string serialize(const RootedTree& tree) {
  std::string out;
  // Each frame: vertex and index of the next child to emit.
  std::vector<std::pair<Vertex, std::size_t>> stack{{tree.root(), 0}};
  out += tree.label(tree.root());
  if (!tree.children(tree.root()).empty()) out += '(';
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    auto kids = tree.children(v);
    if (next == kids.size()) {
      if (!kids.empty()) out += ')';
      stack.pop_back();
      continue;
    }
    if (next > 0) out += ',';
    Vertex c = kids[next++];
    out += tree.label(c);
    if (!tree.children(c).empty()) out += '(';
    stack.emplace_back(c, 0);
  }
  return out;
}

UnrootedTree parse_unrooted(std::string_view text) {
  auto lines = tokenize_lines(text);
  if (lines.empty() || lines[0].tokens != std::vector<std::string>{"tree", "unrooted"}) {
    throw ParseError("expected header 'tree unrooted'", lines.empty() ? 1 : lines[0].number, true);
  }
  Graph g = read_edge_list(lines, 1);
  return UnrootedTree(g.labels(), g.edges());
}

std::string serialize(const UnrootedTree& tree) {
  std::string out = "tree unrooted\n";
  if (tree.size() == 1) return out + tree.label(0) + "\n";
  for (auto [a, b] : tree.edges()) out += tree.label(a) + " " + tree.label(b) + "\n";
  return out;
}

UnrootedTree to_unrooted(const RootedTree& tree) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex v : tree.preorder()) {
    if (tree.parent(v) != kNoVertex) edges.emplace_back(tree.parent(v), v);
  }
  return UnrootedTree(tree.labels(), std::move(edges));
}

RootedGraph parse_graph(std::string_view text) {
  auto lines = tokenize_lines(text);
  if (lines.empty() || lines[0].tokens.size() != 3 || lines[0].tokens[0] != "graph" || lines[0].tokens[1] != "root") {
    throw ParseError("expected header 'graph root <LABEL>'", lines.empty() ? 1 : lines[0].number, true);
  }
  if (!is_label(lines[0].tokens[2])) throw ParseError("invalid root label", lines[0].number, true);
  Graph g = read_edge_list(lines, 1);
  auto root = g.find(lines[0].tokens[2]);
  if (!root) {
    // A lone root with no edges is a valid one-vertex graph.
    if (g.size() != 0) throw InputError("root '" + lines[0].tokens[2] + "' does not occur in the graph");
    g = Graph({lines[0].tokens[2]}, {});
    root = 0;
  }
  return RootedGraph{std::move(g), *root};
}

std::string serialize(const RootedGraph& rg) {
  std::string out = "graph root " + rg.graph.label(rg.root) + "\n";
  if (rg.graph.edges().empty()) return out + rg.graph.label(rg.root) + "\n";
  for (auto [a, b] : rg.graph.edges()) out += rg.graph.label(a) + " " + rg.graph.label(b) + "\n";
  return out;
}

InputFormat detect_format(std::string_view text) {
  auto lines = tokenize_lines(text);
  if (!lines.empty()) {
    const auto& t = lines[0].tokens;
    if (t.size() >= 2 && t[0] == "tree" && t[1] == "unrooted") return InputFormat::kUnrooted;
    if (t.size() >= 2 && t[0] == "graph" && t[1] == "root") return InputFormat::kGraph;
    if (t[0] == "class") return InputFormat::kPresentation;
  }
  return InputFormat::kRooted;
}

std::vector<std::size_t> subtree_sizes(const RootedTree& tree) {
  std::vector<std::size_t> size(tree.size(), 1);
  const auto& order = tree.preorder();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (tree.parent(*it) != kNoVertex) size[tree.parent(*it)] += size[*it];
  }
  return size;
}

std::size_t subtree_size(const RootedTree& tree, Vertex v) {
  if (v >= tree.size()) throw PreconditionError("vertex not in tree");
  std::size_t count = 0;
  std::vector<Vertex> stack{v};
  while (!stack.empty()) {
    Vertex x = stack.back();
    stack.pop_back();
    ++count;
    for (Vertex c : tree.children(x)) stack.push_back(c);
  }
  return count;
}

}  // namespace asymtree
