#include "asymtree/presented.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "asymtree/error.hpp"

namespace asymtree::presented {

namespace {

const Cardinal kTwo{2ul};

// ---------------------------------------------------------------- parsing

bool is_name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class RecordScanner {
 public:
  RecordScanner(std::string_view text, std::size_t line) : text_(text), line_(line) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool done() {
    skip_space();
    return pos_ == text_.size();
  }
  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  std::string word() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_name_char(text_[pos_])) ++pos_;
    if (start == pos_) fail("expected a name");
    return std::string(text_.substr(start, pos_ - start));
  }
  // Peeks whether the record starts with the `class` keyword followed by a name.
  bool accept_keyword() {
    skip_space();
    std::size_t save = pos_;
    if (text_.substr(pos_, 5) == "class") {
      pos_ += 5;
      if (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) return true;
    }
    pos_ = save;
    return false;
  }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_, true); }

 private:
  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

struct RawSlot {
  std::string child;
  Cardinal multiplicity;
};

// ---------------------------------------------------------------- graph helpers

using Adjacency = std::vector<std::vector<Slot>>;

std::vector<bool> reachable_from(const Adjacency& g, std::size_t start) {
  std::vector<bool> seen(g.size(), false);
  std::vector<std::size_t> stack{start};
  seen[start] = true;
  while (!stack.empty()) {
    std::size_t c = stack.back();
    stack.pop_back();
    for (const auto& s : g[c]) {
      if (!seen[s.child]) {
        seen[s.child] = true;
        stack.push_back(s.child);
      }
    }
  }
  return seen;
}

// Number of directed walks from `from` to `to` (the empty walk counts when
// they coincide), each weighted by the product of its multiplicities. When the
// relevant part of the graph contains a cycle there are countably many walks,
// and the sum is the larger of aleph_0 and the largest weight involved.
Cardinal path_count(const Adjacency& g, std::size_t from, std::size_t to) {
  const std::size_t n = g.size();
  std::vector<bool> forward = reachable_from(g, from);
  Adjacency reverse(n);
  for (std::size_t c = 0; c < n; ++c) {
    for (const auto& s : g[c]) reverse[s.child].push_back({c, s.multiplicity});
  }
  std::vector<bool> backward = reachable_from(reverse, to);
  std::vector<bool> live(n);
  for (std::size_t c = 0; c < n; ++c) live[c] = forward[c] && backward[c];
  if (!live[to]) return 0ul;

  std::vector<std::size_t> indegree(n, 0);
  Cardinal heaviest = 0ul;
  for (std::size_t c = 0; c < n; ++c) {
    if (!live[c]) continue;
    for (const auto& s : g[c]) {
      if (!live[s.child]) continue;
      ++indegree[s.child];
      heaviest = std::max(heaviest, s.multiplicity);
    }
  }
  std::vector<std::size_t> order;
  for (std::size_t c = 0; c < n; ++c) {
    if (live[c] && indegree[c] == 0) order.push_back(c);
  }
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (const auto& s : g[order[head]]) {
      if (live[s.child] && --indegree[s.child] == 0) order.push_back(s.child);
    }
  }
  std::size_t live_count = static_cast<std::size_t>(std::count(live.begin(), live.end(), true));
  if (order.size() != live_count) return std::max(Cardinal::aleph0(), heaviest);

  std::vector<Cardinal> ways(n, 0ul);
  ways[from] = 1ul;
  for (std::size_t c : order) {
    if (ways[c].is_zero()) continue;
    for (const auto& s : g[c]) {
      if (live[s.child]) ways[s.child] = ways[s.child] + ways[c] * s.multiplicity;
    }
  }
  return ways[to];
}

Adjacency adjacency(const TreePresentation& p) {
  Adjacency g(p.classes.size());
  for (std::size_t c = 0; c < p.classes.size(); ++c) g[c] = p.classes[c].slots;
  return g;
}

// Classes lying on a directed cycle, then classes that can reach one.
std::vector<bool> ray_extending(const Adjacency& g) {
  const std::size_t n = g.size();
  std::vector<bool> on_cycle(n, false);
  for (std::size_t c = 0; c < n; ++c) {
    for (const auto& s : g[c]) {
      if (reachable_from(g, s.child)[c]) {
        on_cycle[c] = true;
        break;
      }
    }
  }
  std::vector<bool> extending(n, false);
  for (std::size_t c = 0; c < n; ++c) {
    auto seen = reachable_from(g, c);
    for (std::size_t d = 0; d < n; ++d) {
      if (seen[d] && on_cycle[d]) {
        extending[c] = true;
        break;
      }
    }
  }
  return extending;
}

// Sum of multiplicities of the slots leading to ray-extending classes.
Cardinal ray_degree(const ClassDef& c, const std::vector<bool>& extending) {
  Cardinal total = 0ul;
  for (const auto& s : c.slots) {
    if (extending[s.child]) total = total + s.multiplicity;
  }
  return total;
}

// a(x) of the rayless part hanging at a vertex of class c: the vertex itself
// plus its subtrees through slots to non-ray-extending classes.
class LocalCounts {
 public:
  LocalCounts(const TreePresentation& p, const std::vector<bool>& extending)
      : p_(p), extending_(extending), memo_(p.classes.size()) {}

  const Cardinal& operator()(std::size_t c) {
    if (memo_[c]) return *memo_[c];
    Cardinal a = kTwo;
    for (const auto& s : p_.classes[c].slots) {
      if (extending_[s.child]) continue;
      a = a * binom((*this)(s.child), s.multiplicity);
    }
    memo_[c] = std::move(a);
    return *memo_[c];
  }

 private:
  const TreePresentation& p_;
  const std::vector<bool>& extending_;
  std::vector<std::optional<Cardinal>> memo_;
};

// ---------------------------------------------------------------- unfolding

struct Unfolded {
  std::vector<Vertex> parent;
  std::vector<std::size_t> class_of;
  std::vector<bool> cut;
};

Unfolded unfold_from(const TreePresentation& p, std::size_t root_class, std::optional<std::size_t> depth,
                     std::size_t max_vertices) {
  struct Pending {
    std::size_t cls;
    Vertex parent;
    std::size_t depth;
  };
  Unfolded out;
  std::vector<Pending> stack{{root_class, kNoVertex, 0}};
  while (!stack.empty()) {
    Pending item = stack.back();
    stack.pop_back();
    if (out.parent.size() >= max_vertices) {
      throw UnsupportedFragment("unfolding exceeds " + std::to_string(max_vertices) + " vertices");
    }
    Vertex v = static_cast<Vertex>(out.parent.size());
    out.parent.push_back(item.parent);
    out.class_of.push_back(item.cls);
    const auto& slots = p.classes[item.cls].slots;
    bool at_limit = depth && item.depth >= *depth;
    out.cut.push_back(at_limit && !slots.empty());
    if (at_limit) continue;
    std::size_t pushed_from = stack.size();
    for (const auto& s : slots) {
      if (s.multiplicity.is_infinite()) {
        throw UnsupportedFragment("unfolding meets infinite multiplicity at class '" + p.classes[item.cls].name + "'");
      }
      if (s.multiplicity.value() > max_vertices) {
        throw UnsupportedFragment("unfolding exceeds " + std::to_string(max_vertices) + " vertices");
      }
      for (unsigned long k = s.multiplicity.value().get_ui(); k > 0; --k) {
        stack.push_back({s.child, v, item.depth + 1});
        if (stack.size() > max_vertices) {
          throw UnsupportedFragment("unfolding exceeds " + std::to_string(max_vertices) + " vertices");
        }
      }
    }
    std::reverse(stack.begin() + static_cast<std::ptrdiff_t>(pushed_from), stack.end());
  }
  return out;
}

RootedTree to_tree(const TreePresentation& p, Unfolded u) {
  std::vector<std::string> labels(u.parent.size());
  for (std::size_t v = 0; v < labels.size(); ++v) labels[v] = p.classes[u.class_of[v]].name + "_" + std::to_string(v);
  return RootedTree(std::move(u.parent), std::move(labels));
}

void require_nonempty(const TreePresentation& p) {
  if (p.classes.empty()) throw InputError("presentation has no classes");
}

}  // namespace

// ---------------------------------------------------------------- public

TreePresentation parse_presentation(std::string_view text) {
  std::vector<std::pair<std::string, std::vector<RawSlot>>> raw;
  std::size_t line = 1;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    bool end = i == text.size();
    if (!end && text[i] != '\n' && text[i] != '/') continue;
    std::string_view record = text.substr(start, i - start);
    std::size_t record_line = line;
    if (!end && text[i] == '\n') ++line;
    start = i + 1;
    if (auto hash = record.find('#'); hash != std::string_view::npos) record = record.substr(0, hash);
    RecordScanner scan(record, record_line);
    if (scan.done()) continue;
    scan.accept_keyword();
    std::string name = scan.word();
    scan.expect(':');
    std::vector<RawSlot> slots;
    if (!scan.done()) {
      do {
        std::string child = scan.word();
        scan.expect('*');
        std::string mult = scan.word();
        Cardinal m;
        try {
          m = Cardinal::parse(mult);
        } catch (const InputError& e) {
          scan.fail(e.what());
        }
        if (m.is_zero()) throw InputError("zero multiplicity for slot '" + child + "' in class '" + name + "'");
        slots.push_back({std::move(child), std::move(m)});
      } while (scan.accept(','));
      if (!scan.done()) scan.fail("unexpected text after slots");
    }
    raw.emplace_back(std::move(name), std::move(slots));
  }
  if (raw.empty()) throw InputError("presentation has no classes");

  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t c = 0; c < raw.size(); ++c) {
    if (!index.emplace(raw[c].first, c).second) throw InputError("duplicate class '" + raw[c].first + "'");
  }
  TreePresentation p;
  for (auto& [name, slots] : raw) {
    ClassDef def{name, {}};
    for (auto& s : slots) {
      auto it = index.find(s.child);
      if (it == index.end()) throw InputError("undefined class '" + s.child + "'");
      def.slots.push_back({it->second, std::move(s.multiplicity)});
    }
    p.classes.push_back(std::move(def));
  }
  return p;
}

std::string serialize(const TreePresentation& p) {
  std::string out;
  for (const auto& c : p.classes) {
    out += "class " + c.name + ":";
    for (std::size_t i = 0; i < c.slots.size(); ++i) {
      out += i == 0 ? " " : ", ";
      out += p.classes[c.slots[i].child].name + "*" + c.slots[i].multiplicity.str();
    }
    out += "\n";
  }
  return out;
}

TreePresentation minimize(const TreePresentation& p) {
  require_nonempty(p);
  const std::size_t n = p.classes.size();
  // Reachable classes in breadth-first order from the root.
  std::vector<std::size_t> order{0};
  std::vector<bool> seen(n, false);
  seen[0] = true;
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (const auto& s : p.classes[order[head]].slots) {
      if (!seen[s.child]) {
        seen[s.child] = true;
        order.push_back(s.child);
      }
    }
  }

  using Signature = std::vector<std::pair<std::size_t, Cardinal>>;
  std::vector<std::size_t> block(n, 0);
  std::size_t blocks = 1;
  while (true) {
    std::map<std::pair<std::size_t, Signature>, std::size_t> ids;
    std::vector<std::size_t> next(n, 0);
    for (std::size_t c : order) {
      std::map<std::size_t, Cardinal> agg;
      for (const auto& s : p.classes[c].slots) {
        auto [it, fresh] = agg.emplace(block[s.child], s.multiplicity);
        if (!fresh) it->second = it->second + s.multiplicity;
      }
      Signature sig(agg.begin(), agg.end());
      auto [it, fresh] = ids.emplace(std::make_pair(block[c], std::move(sig)), ids.size());
      next[c] = it->second;
    }
    block = std::move(next);
    if (ids.size() == blocks) break;
    blocks = ids.size();
  }

  // Quotient: each block takes the name and slot order of its first member.
  std::vector<std::size_t> representative(blocks, n);
  for (std::size_t c : order) {
    if (representative[block[c]] == n) representative[block[c]] = c;
  }
  std::vector<std::vector<Slot>> slots(blocks);
  for (std::size_t b = 0; b < blocks; ++b) {
    for (const auto& s : p.classes[representative[b]].slots) {
      std::size_t target = block[s.child];
      auto it = std::find_if(slots[b].begin(), slots[b].end(), [&](const Slot& x) { return x.child == target; });
      if (it == slots[b].end()) {
        slots[b].push_back({target, s.multiplicity});
      } else {
        it->multiplicity = it->multiplicity + s.multiplicity;
      }
    }
  }
  // Renumber blocks breadth-first over the quotient itself so the result is
  // a fixpoint of this function.
  std::vector<std::size_t> renumber(blocks, blocks);
  std::vector<std::size_t> bfs{block[0]};
  renumber[block[0]] = 0;
  for (std::size_t head = 0; head < bfs.size(); ++head) {
    for (const auto& s : slots[bfs[head]]) {
      if (renumber[s.child] == blocks) {
        renumber[s.child] = bfs.size();
        bfs.push_back(s.child);
      }
    }
  }
  TreePresentation out;
  out.classes.resize(blocks);
  for (std::size_t b = 0; b < blocks; ++b) {
    ClassDef& def = out.classes[renumber[b]];
    def.name = p.classes[representative[b]].name;
    for (const auto& s : slots[b]) def.slots.push_back({renumber[s.child], s.multiplicity});
  }
  return out;
}

std::string to_string(Kind kind) {
  switch (kind) {
    case Kind::kFiniteTree:
      return "finite";
    case Kind::kRaylessInfinite:
      return "rayless";
    case Kind::kOneEnded:
      return "one-ended";
    case Kind::kHasDoubleRay:
      return "double-ray";
  }
  return "?";
}

Classification classify(const TreePresentation& p) {
  require_nonempty(p);
  const std::size_t n = p.classes.size();
  Adjacency g = adjacency(p);
  Classification out;
  out.reaches_cycle = ray_extending(g);
  out.on_double_ray.assign(n, false);
  out.class_size.assign(n, 0ul);
  for (std::size_t c = 0; c < n; ++c) {
    auto seen = reachable_from(g, c);
    Cardinal total = 0ul;
    for (std::size_t d = 0; d < n; ++d) {
      if (seen[d]) total = total + path_count(g, c, d);
    }
    out.class_size[c] = total;
  }
  out.size = out.class_size[0];

  auto reachable = reachable_from(g, 0);
  bool cyclic = out.reaches_cycle[0];
  if (!cyclic) {
    bool infinite = false;
    for (std::size_t c = 0; c < n; ++c) {
      if (!reachable[c]) continue;
      for (const auto& s : p.classes[c].slots) infinite = infinite || s.multiplicity.is_infinite();
    }
    out.kind = infinite ? Kind::kRaylessInfinite : Kind::kFiniteTree;
    return out;
  }

  out.kind = Kind::kOneEnded;
  for (std::size_t c = 0; c < n; ++c) {
    if (reachable[c] && ray_degree(p.classes[c], out.reaches_cycle) >= kTwo) out.kind = Kind::kHasDoubleRay;
  }
  if (out.kind != Kind::kHasDoubleRay) return out;

  // Occurrence states (class, has an independent ray through the parent side).
  std::set<std::pair<std::size_t, bool>> visited;
  std::vector<std::pair<std::size_t, bool>> stack{{0, false}};
  visited.insert(stack.back());
  while (!stack.empty()) {
    auto [c, up] = stack.back();
    stack.pop_back();
    Cardinal down = ray_degree(p.classes[c], out.reaches_cycle);
    if (down >= kTwo || (up && !down.is_zero())) out.on_double_ray[c] = true;
    for (const auto& s : p.classes[c].slots) {
      if (!out.reaches_cycle[s.child]) continue;
      // Other ray directions available to this child through its parent.
      bool child_up = up || down >= kTwo;
      auto state = std::make_pair(s.child, child_up);
      if (visited.insert(state).second) stack.push_back(state);
    }
  }
  return out;
}

std::size_t rank_presented(const TreePresentation& p) {
  Classification cls = classify(p);
  if (cls.kind != Kind::kFiniteTree && cls.kind != Kind::kRaylessInfinite) {
    throw PreconditionError("rank is defined here only for rayless presentations");
  }
  std::vector<std::optional<std::size_t>> memo(p.classes.size());
  std::function<std::size_t(std::size_t)> rank = [&](std::size_t c) -> std::size_t {
    if (memo[c]) return *memo[c];
    std::size_t r = 0;
    if (cls.class_size[c].is_infinite()) {
      for (const auto& s : p.classes[c].slots) {
        bool child_infinite = cls.class_size[s.child].is_infinite();
        bool many = s.multiplicity.is_infinite();
        std::size_t candidate = 0;
        if (child_infinite) {
          candidate = rank(s.child) + (many ? 1 : 0);
        } else if (many) {
          candidate = 1;
        }
        r = std::max(r, candidate);
      }
    }
    memo[c] = r;
    return r;
  };
  return rank(0);
}

PresentedMotion motion_presented(const TreePresentation& p) {
  TreePresentation m = minimize(p);
  Classification cls = classify(m);
  PresentedMotion out;
  for (const auto& c : m.classes) {
    for (const auto& s : c.slots) {
      if (s.multiplicity < kTwo) continue;
      Cardinal moved = kTwo * cls.class_size[s.child];
      if (!out.moved || moved < *out.moved) out.moved = moved;
    }
  }
  return out;
}

namespace {

Cardinal count_acyclic(const TreePresentation& p, const std::vector<bool>& extending) {
  LocalCounts a(p, extending);
  return a(0);
}

Cardinal count_one_ended(const TreePresentation& p, const std::vector<bool>& extending) {
  LocalCounts a(p, extending);
  std::vector<std::size_t> spine;
  std::vector<std::size_t> position(p.classes.size(), p.classes.size());
  std::size_t c = 0;
  while (position[c] == p.classes.size()) {
    position[c] = spine.size();
    spine.push_back(c);
    auto next = std::find_if(p.classes[c].slots.begin(), p.classes[c].slots.end(),
                             [&](const Slot& s) { return extending[s.child]; });
    if (next == p.classes[c].slots.end()) throw std::logic_error("one-ended spine ends");
    c = next->child;
  }
  std::size_t loop_start = position[c];
  std::vector<Factor> factors;
  for (std::size_t i = 0; i < spine.size(); ++i) {
    Cardinal occurrences = i < loop_start ? Cardinal(1ul) : Cardinal::aleph0();
    factors.push_back({a(spine[i]), occurrences});
  }
  return product_family(factors);
}

Cardinal count_double_ray(const TreePresentation& p, const std::vector<bool>& extending) {
  const std::size_t n = p.classes.size();
  LocalCounts a(p, extending);

  // Walk from the root to the first vertex with two downward ray directions.
  std::vector<std::size_t> path;
  std::vector<bool> on_path(n, false);
  std::size_t w = 0;
  while (ray_degree(p.classes[w], extending) < kTwo) {
    if (on_path[w]) throw std::logic_error("double-ray root not found");
    on_path[w] = true;
    path.push_back(w);
    auto next = std::find_if(p.classes[w].slots.begin(), p.classes[w].slots.end(),
                             [&](const Slot& s) { return extending[s.child]; });
    w = next->child;
  }

  // Rayless component of w: its own off-ray subtrees plus the path back up
  // to the root, each path vertex carrying its off-ray subtrees.
  TreePresentation component;
  auto off_ray = [&](std::size_t cls) {
    std::vector<Slot> slots;
    for (const auto& s : p.classes[cls].slots) {
      if (!extending[s.child]) slots.push_back({s.child + 1 + path.size(), s.multiplicity});
    }
    return slots;
  };
  component.classes.push_back({"_w", off_ray(w)});
  for (std::size_t i = 0; i < path.size(); ++i) {
    std::size_t cls = path[path.size() - 1 - i];
    component.classes.push_back({"_u" + std::to_string(i), off_ray(cls)});
  }
  for (std::size_t i = 0; i < path.size(); ++i) component.classes[i].slots.push_back({i + 1, 1ul});
  for (std::size_t c = 0; c < n; ++c) {
    ClassDef def{p.classes[c].name, {}};
    if (!extending[c]) {
      for (const auto& s : p.classes[c].slots) def.slots.push_back({s.child + 1 + path.size(), s.multiplicity});
    }
    component.classes.push_back(std::move(def));
  }
  TreePresentation minimal = minimize(component);
  Cardinal a_w = count_acyclic(minimal, std::vector<bool>(minimal.classes.size(), false));

  // Graph of T_* below w: ray-extending slots only.
  Adjacency star(n);
  for (std::size_t c = 0; c < n; ++c) {
    for (const auto& s : p.classes[c].slots) {
      if (extending[s.child]) star[c].push_back(s);
    }
  }
  auto below_w = reachable_from(star, w);
  // prod over T_*-descendants y >= x of a(y), for x of class d.
  auto descendant_product = [&](std::size_t d) {
    auto seen = reachable_from(star, d);
    std::vector<Factor> factors;
    for (std::size_t e = 0; e < n; ++e) {
      if (seen[e]) factors.push_back({a(e), path_count(star, d, e)});
    }
    return product_family(factors);
  };
  for (std::size_t c = 0; c < n; ++c) {
    if (!below_w[c]) continue;
    for (const auto& s : star[c]) {
      if (s.multiplicity > descendant_product(s.child)) return 0ul;
    }
  }
  std::vector<Factor> factors{{a_w, 1ul}};
  for (std::size_t e = 0; e < n; ++e) {
    if (!below_w[e]) continue;
    Cardinal occurrences = 0ul;
    for (const auto& s : star[w]) occurrences = occurrences + s.multiplicity * path_count(star, s.child, e);
    if (!occurrences.is_zero()) factors.push_back({a(e), occurrences});
  }
  return product_family(factors);
}

}  // namespace

PresentedReport count_presented(const TreePresentation& p) {
  TreePresentation m = minimize(p);
  PresentedReport report;
  report.classification = classify(m);
  report.motion = motion_presented(m);
  const auto& extending = report.classification.reaches_cycle;
  switch (report.classification.kind) {
    case Kind::kFiniteTree:
    case Kind::kRaylessInfinite:
      report.count = count_acyclic(m, extending);
      report.rank = rank_presented(m);
      break;
    case Kind::kOneEnded:
      report.count = count_one_ended(m, extending);
      break;
    case Kind::kHasDoubleRay:
      report.count = count_double_ray(m, extending);
      break;
  }
  report.theorem = to_string(report.classification.kind);
  return report;
}

RootedTree unfold(const TreePresentation& p, std::optional<std::size_t> depth, std::size_t max_vertices) {
  require_nonempty(p);
  return to_tree(p, unfold_from(p, 0, depth, max_vertices));
}

std::optional<Certificate> asym_certificate(const TreePresentation& p, std::size_t depth) {
  if (depth == 0) throw PreconditionError("certificate depth must be at least 1");
  PresentedReport report = count_presented(p);
  if (report.count.is_zero()) throw PreconditionError("presentation is not asymmetrizable (count 0)");
  require_nonempty(p);

  Unfolded u = unfold_from(p, 0, depth, 1'000'000);
  const std::size_t n = u.parent.size();
  std::vector<bool> complete(n, true);
  for (std::size_t v = n; v-- > 0;) {
    if (u.cut[v]) complete[v] = false;
    if (!complete[v] && u.parent[v] != kNoVertex) complete[u.parent[v]] = false;
  }
  RootedTree tree = to_tree(p, u);

  Coloring colors(n, 0);
  std::vector<Vertex> pending{tree.root()};
  while (!pending.empty()) {
    Vertex x = pending.back();
    pending.pop_back();
    // Twins (children of one class) draw pairwise inequivalent colorings of
    // their common truncated subtree, the smallest index taking the highest
    // ranked one. A cut group with too few colorings is left to the boundary
    // anchors and colored one level further down; a complete group with too
    // few means the truncation cannot be certified.
    std::map<std::size_t, std::vector<Vertex>> groups;
    for (Vertex c : tree.children(x)) groups[u.class_of[c]].push_back(c);
    for (const auto& [cls, members] : groups) {
      std::size_t below = depth - tree.depth(members.front());
      AsymSetEnumerator enumerator(to_tree(p, unfold_from(p, cls, below, 1'000'000)));
      std::vector<AsymSet> sets;
      while (sets.size() < members.size()) {
        auto next = enumerator.next();
        if (!next) break;
        sets.push_back(std::move(*next));
      }
      if (sets.size() < members.size()) {
        if (complete[members.front()]) return std::nullopt;
        pending.insert(pending.end(), members.begin(), members.end());
        continue;
      }
      for (std::size_t k = 0; k < members.size(); ++k) {
        for (Vertex v : sets[members.size() - 1 - k].members) colors[members[k] + v] = 1;
      }
    }
  }
  // The root keeps color 0; either choice works.

  Certificate cert{tree, {}, {}, false, false};
  for (Vertex v = 0; v < n; ++v) {
    if (colors[v]) cert.set.members.push_back(v);
    if (u.cut[v]) cert.boundary.push_back(v);
  }

  // Independent check: colored subtree types, with each boundary vertex
  // given a private type so automorphisms must fix it.
  std::vector<std::uint64_t> type(n);
  std::map<std::tuple<int, std::uint64_t, std::vector<std::uint64_t>>, std::uint64_t> ids;
  bool distinct = true;
  for (std::size_t v = n; v-- > 0;) {
    std::vector<std::uint64_t> kids;
    for (Vertex c : tree.children(static_cast<Vertex>(v))) kids.push_back(type[c]);
    std::sort(kids.begin(), kids.end());
    if (std::adjacent_find(kids.begin(), kids.end()) != kids.end()) distinct = false;
    std::uint64_t anchor = u.cut[v] ? v + 1 : 0;
    auto key = std::make_tuple(int{colors[v]}, anchor, std::move(kids));
    type[v] = ids.emplace(std::move(key), ids.size()).first->second;
  }
  cert.verified = distinct;
  cert.fully_asymmetric = verify_asym_set(cert.truncation, cert.set.members);
  return cert;
}

}  // namespace asymtree::presented
