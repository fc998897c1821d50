#include "asymtree/asym.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <queue>

#include "asymtree/error.hpp"

namespace asymtree {

namespace {

// ---------------------------------------------------------------------------
// Lazily produced, size-sorted streams of colorings.
//
// A stream item is a coloring of one rooted subtree type (up to root-fixing
// isomorphism). Items come out ordered by (number of colored vertices,
// structural tuple), and every stream memoizes what it has produced so that
// items can be addressed by index from parent streams.

class Stream {
 public:
  virtual ~Stream() = default;

  bool ensure(std::size_t i) {
    while (sizes_.size() <= i) {
      if (!produce()) return false;
    }
    return true;
  }
  std::size_t size_of(std::size_t i) const { return sizes_[i]; }

 protected:
  virtual bool produce() = 0;
  std::vector<std::size_t> sizes_;
};

// Root-membership bit: white (size 0), then colored (size 1). A virtual root
// only has the white item.
class BitStream final : public Stream {
 public:
  explicit BitStream(bool allow_colored) : allow_colored_(allow_colored) {}

 protected:
  bool produce() override {
    if (sizes_.size() >= (allow_colored_ ? 2u : 1u)) return false;
    sizes_.push_back(sizes_.size());
    return true;
  }

 private:
  bool allow_colored_;
};

using Tuple = std::vector<std::uint32_t>;

// Best-first enumeration over a tree of tuples in which every child has a
// strictly larger (size, tuple) key than its parent. Expansion of the last
// popped item is deferred until the next item is requested so that asking
// for item i never forces item i+1 of any sub-stream.
class TupleStream : public Stream {
 public:
  const Tuple& tuple(std::size_t i) const { return tuples_[i]; }

 protected:
  struct Entry {
    std::size_t size;
    Tuple tuple;
    bool operator>(const Entry& o) const { return size != o.size ? size > o.size : tuple > o.tuple; }
  };

  virtual std::optional<Entry> initial() = 0;
  virtual void expand(const Tuple& t, std::size_t size, std::vector<Entry>& out) = 0;

  bool produce() override {
    if (!started_) {
      started_ = true;
      if (auto e = initial()) heap_.push(std::move(*e));
    }
    if (expand_pending_) {
      expand_pending_ = false;
      std::vector<Entry> kids;
      expand(tuples_.back(), sizes_.back(), kids);
      for (auto& k : kids) heap_.push(std::move(k));
    }
    if (heap_.empty()) return false;
    Entry top = heap_.top();
    heap_.pop();
    tuples_.push_back(std::move(top.tuple));
    sizes_.push_back(top.size);
    expand_pending_ = true;
    return true;
  }

 private:
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap_;
  std::vector<Tuple> tuples_;
  bool started_ = false;
  bool expand_pending_ = false;
};

// One item per tuple of factor items. Parent of a tuple: decrement its last
// nonzero coordinate.
class ProductStream final : public TupleStream {
 public:
  explicit ProductStream(std::vector<Stream*> factors) : factors_(std::move(factors)) {}

 protected:
  std::optional<Entry> initial() override {
    Entry e{0, Tuple(factors_.size(), 0)};
    for (Stream* f : factors_) {
      if (!f->ensure(0)) return std::nullopt;
      e.size += f->size_of(0);
    }
    return e;
  }

  void expand(const Tuple& t, std::size_t size, std::vector<Entry>& out) override {
    std::size_t last = 0;
    for (std::size_t j = 0; j < t.size(); ++j) {
      if (t[j] != 0) last = j;
    }
    for (std::size_t j = last; j < t.size(); ++j) {
      if (!factors_[j]->ensure(t[j] + 1)) continue;
      Entry e{size - factors_[j]->size_of(t[j]) + factors_[j]->size_of(t[j] + 1), t};
      ++e.tuple[j];
      out.push_back(std::move(e));
    }
  }

 private:
  std::vector<Stream*> factors_;
};

// tau pairwise distinct items of `child`, as ascending index tuples. Parent of
// a combination: decrement the first coordinate that is above its minimum.
class CombinationStream final : public TupleStream {
 public:
  CombinationStream(Stream* child, std::size_t tau) : child_(child), tau_(tau) {}

 protected:
  std::optional<Entry> initial() override {
    if (!child_->ensure(tau_ - 1)) return std::nullopt;
    Entry e{0, Tuple(tau_)};
    for (std::size_t q = 0; q < tau_; ++q) {
      e.tuple[q] = static_cast<std::uint32_t>(q);
      e.size += child_->size_of(q);
    }
    return e;
  }

  void expand(const Tuple& c, std::size_t size, std::vector<Entry>& out) override {
    std::size_t gap = 0;
    while (gap < tau_ && c[gap] == gap) ++gap;
    for (std::size_t p = 0; p <= std::min(gap, tau_ - 1); ++p) {
      std::uint32_t next = c[p] + 1;
      bool ok = p + 1 == tau_ ? child_->ensure(next) : next < c[p + 1];
      if (!ok) continue;
      Entry e{size - child_->size_of(c[p]) + child_->size_of(next), c};
      e.tuple[p] = next;
      out.push_back(std::move(e));
    }
  }

 private:
  Stream* child_;
  std::size_t tau_;
};

struct ClassSlot {
  std::uint32_t child_type;
  std::size_t tau;
};

// Shared machinery for counting, motion and enumeration on a rooted tree
// whose root may be a virtual vertex (center edge of an unrooted tree).
class HungTree {
 public:
  HungTree(const RootedTree& tree, bool virtual_root)
      : tree_(tree), virtual_root_(virtual_root), types_(subtree_types(tree)) {
    rep_.assign(types_.count, kNoVertex);
    for (Vertex v : tree_.preorder()) {
      if (rep_[types_.type[v]] == kNoVertex) rep_[types_.type[v]] = v;
    }
  }

  const RootedTree& tree() const { return tree_; }
  const TypeTable& types() const { return types_; }

  // Children of v grouped by type, classes ordered by type id, members ascending.
  std::vector<std::pair<ClassSlot, std::vector<Vertex>>> classes(Vertex v) const {
    std::map<std::uint32_t, std::vector<Vertex>> groups;
    for (Vertex c : tree_.children(v)) groups[types_.type[c]].push_back(c);
    std::vector<std::pair<ClassSlot, std::vector<Vertex>>> out;
    for (auto& [t, members] : groups) {
      std::sort(members.begin(), members.end());
      out.push_back({ClassSlot{t, members.size()}, std::move(members)});
    }
    return out;
  }

  Natural count() const {
    std::vector<Natural> a(types_.count);
    for (std::uint32_t t = 0; t < types_.count; ++t) {
      Vertex r = rep_[t];
      Natural value = is_virtual(r) ? 1 : 2;
      for (const auto& [slot, members] : classes(r)) {
        const Natural& child = a[slot.child_type];
        if (child < slot.tau) {
          value = 0;
          break;
        }
        Natural b;
        mpz_bin_ui(b.get_mpz_t(), child.get_mpz_t(), slot.tau);
        value *= b;
      }
      a[t] = std::move(value);
    }
    return a[types_.type[tree_.root()]];
  }

  MotionResult motion() const {
    auto sizes = subtree_sizes(tree_);
    MotionResult best;
    for (Vertex y = 0; y < tree_.size(); ++y) {
      for (const auto& [slot, members] : classes(y)) {
        if (slot.tau < 2) continue;
        std::size_t moved = 2 * sizes[members.front()];
        if (!best.moved || moved < *best.moved) best.moved = moved;
      }
    }
    return best;
  }

  bool verify(std::span<const Vertex> set) const {
    Coloring colors = to_coloring(tree_.size(), set);
    TypeTable colored = subtree_types(tree_, colors);
    std::vector<std::uint32_t> seen;
    for (Vertex y = 0; y < tree_.size(); ++y) {
      seen.clear();
      for (Vertex c : tree_.children(y)) seen.push_back(colored.type[c]);
      std::sort(seen.begin(), seen.end());
      if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) return false;
    }
    return true;
  }

  // --- enumeration ---------------------------------------------------------

  ProductStream& type_stream(std::uint32_t t) {
    auto it = type_streams_.find(t);
    if (it != type_streams_.end()) return *it->second;
    Vertex r = rep_[t];
    std::vector<Stream*> factors;
    factors.push_back(is_virtual(r) ? &white_only_ : &bit_);
    for (const auto& [slot, members] : classes(r)) factors.push_back(&combination_stream(slot));
    auto stream = std::make_unique<ProductStream>(std::move(factors));
    auto& ref = *stream;
    type_streams_.emplace(t, std::move(stream));
    return ref;
  }

  ProductStream& root_stream() { return type_stream(types_.type[tree_.root()]); }

  // Colors the subtree of v according to item `index` of its type stream.
  void materialize(Vertex v, std::size_t index, std::vector<Vertex>& out) {
    std::vector<std::pair<Vertex, std::size_t>> stack{{v, index}};
    while (!stack.empty()) {
      auto [x, i] = stack.back();
      stack.pop_back();
      const Tuple& t = type_stream(types_.type[x]).tuple(i);
      if (t[0] == 1) out.push_back(x);
      std::size_t f = 1;
      for (const auto& [slot, members] : classes(x)) {
        const Tuple& comb = combination_stream(slot).tuple(t[f++]);
        for (std::size_t k = 0; k < members.size(); ++k) {
          stack.emplace_back(members[k], comb[slot.tau - 1 - k]);
        }
      }
    }
  }

  bool is_virtual(Vertex v) const { return virtual_root_ && v == tree_.root(); }

 private:
  CombinationStream& combination_stream(const ClassSlot& slot) {
    auto key = std::make_pair(slot.child_type, slot.tau);
    auto it = combination_streams_.find(key);
    if (it != combination_streams_.end()) return *it->second;
    auto stream = std::make_unique<CombinationStream>(&type_stream(slot.child_type), slot.tau);
    auto& ref = *stream;
    combination_streams_.emplace(key, std::move(stream));
    return ref;
  }

  const RootedTree& tree_;
  bool virtual_root_;
  TypeTable types_;
  std::vector<Vertex> rep_;
  BitStream bit_{true};
  BitStream white_only_{false};
  std::map<std::uint32_t, std::unique_ptr<ProductStream>> type_streams_;
  std::map<std::pair<std::uint32_t, std::size_t>, std::unique_ptr<CombinationStream>> combination_streams_;
};

}  // namespace

Coloring to_coloring(std::size_t n, std::span<const Vertex> set) {
  Coloring colors(n, 0);
  for (Vertex v : set) {
    if (v >= n) throw PreconditionError("set member outside the tree");
    colors[v] = 1;
  }
  return colors;
}

Natural count_rooted(const RootedTree& tree) { return HungTree(tree, false).count(); }

Natural count_unrooted(const UnrootedTree& tree) {
  CenteredTree ct = center_rooted(tree);
  return HungTree(ct.tree, ct.virtual_root).count();
}

MotionResult motion_rooted(const RootedTree& tree) { return HungTree(tree, false).motion(); }

MotionResult motion(const UnrootedTree& tree) {
  CenteredTree ct = center_rooted(tree);
  return HungTree(ct.tree, ct.virtual_root).motion();
}

bool verify_asym_set(const RootedTree& tree, std::span<const Vertex> set) {
  return HungTree(tree, false).verify(set);
}

bool verify_asym_set(const UnrootedTree& tree, std::span<const Vertex> set) {
  CenteredTree ct = center_rooted(tree);
  return HungTree(ct.tree, ct.virtual_root).verify(set);
}

struct AsymSetEnumerator::Impl {
  std::optional<RootedTree> owned;
  std::unique_ptr<HungTree> hung;
  bool rooted = true;
  std::size_t next = 0;
};

AsymSetEnumerator::AsymSetEnumerator(const RootedTree& tree) : impl_(std::make_unique<Impl>()) {
  impl_->owned.emplace(tree);
  impl_->hung = std::make_unique<HungTree>(*impl_->owned, false);
}

AsymSetEnumerator::AsymSetEnumerator(const UnrootedTree& tree) : impl_(std::make_unique<Impl>()) {
  CenteredTree ct = center_rooted(tree);
  impl_->owned.emplace(std::move(ct.tree));
  impl_->hung = std::make_unique<HungTree>(*impl_->owned, ct.virtual_root);
  impl_->rooted = false;
}

AsymSetEnumerator::~AsymSetEnumerator() = default;
AsymSetEnumerator::AsymSetEnumerator(AsymSetEnumerator&&) noexcept = default;
AsymSetEnumerator& AsymSetEnumerator::operator=(AsymSetEnumerator&&) noexcept = default;

std::optional<AsymSet> AsymSetEnumerator::next() {
  HungTree& hung = *impl_->hung;
  if (!hung.root_stream().ensure(impl_->next)) return std::nullopt;
  AsymSet set;
  set.rooted = impl_->rooted;
  hung.materialize(hung.tree().root(), impl_->next++, set.members);
  std::sort(set.members.begin(), set.members.end());
  return set;
}

std::vector<AsymSet> enumerate_asym_sets(const RootedTree& tree, std::size_t limit) {
  std::vector<AsymSet> out;
  AsymSetEnumerator e(tree);
  while (out.size() < limit) {
    auto s = e.next();
    if (!s) break;
    out.push_back(std::move(*s));
  }
  return out;
}

std::vector<AsymSet> enumerate_asym_sets(const UnrootedTree& tree, std::size_t limit) {
  std::vector<AsymSet> out;
  AsymSetEnumerator e(tree);
  while (out.size() < limit) {
    auto s = e.next();
    if (!s) break;
    out.push_back(std::move(*s));
  }
  return out;
}

std::optional<AsymSet> find_asym_set(const RootedTree& tree) { return AsymSetEnumerator(tree).next(); }

std::optional<AsymSet> find_asym_set(const UnrootedTree& tree) { return AsymSetEnumerator(tree).next(); }

std::string render_set(std::span<const std::string> labels, std::span<const Vertex> set) {
  std::vector<std::string> names;
  names.reserve(set.size());
  for (Vertex v : set) names.push_back(labels[v]);
  std::sort(names.begin(), names.end());
  std::string out = "{";
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ',';
    out += names[i];
  }
  return out + "}";
}

std::vector<Vertex> parse_set(std::string_view text, const std::vector<std::string>& labels) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (!text.empty() && text.front() == '{') {
    if (text.back() != '}') throw InputError("unbalanced braces in set");
    text = trim(text.substr(1, text.size() - 2));
  }
  std::vector<Vertex> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    std::string name(trim(text.substr(start, end - start)));
    auto it = std::find(labels.begin(), labels.end(), name);
    if (name.empty() || it == labels.end()) throw InputError("unknown vertex '" + name + "' in set");
    out.push_back(static_cast<Vertex>(it - labels.begin()));
    start = end + 1;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace asymtree
