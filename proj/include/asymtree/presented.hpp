#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "asymtree/asym.hpp"
#include "asymtree/cardinal.hpp"
#include "asymtree/tree.hpp"

namespace asymtree::presented {

struct Slot {
  std::size_t child;     // class index
  Cardinal multiplicity;  // >= 1
};

struct ClassDef {
  std::string name;
  std::vector<Slot> slots;
};

// Finite system of classes. The denoted rooted tree is the unfolding from
// `classes[0]`: a vertex of class c has, for each slot (d, mu), exactly mu
// children of class d. Cycles in the class graph produce rays.
struct TreePresentation {
  std::vector<ClassDef> classes;
};

// Line grammar `class NAME: d*MULT, e*MULT`, lines or `/`-separated; the
// `class` keyword is optional. MULT is decimal, `w`, or `beth_k`.
TreePresentation parse_presentation(std::string_view text);
std::string serialize(const TreePresentation& p);

// Quotient by bisimilarity (coarsest stable partition with cardinal-valued
// aggregated child counts), restricted to classes reachable from the root.
// Classes are merged iff their unfoldings are isomorphic, so after this step
// twin siblings are exactly the members of one slot.
TreePresentation minimize(const TreePresentation& p);

enum class Kind { kFiniteTree, kRaylessInfinite, kOneEnded, kHasDoubleRay };
std::string to_string(Kind kind);

struct Classification {
  Kind kind = Kind::kFiniteTree;
  std::vector<bool> reaches_cycle;   // per class: some ray starts here
  std::vector<bool> on_double_ray;   // per class: some occurrence lies on a double ray
  std::vector<Cardinal> class_size;  // |T^c| per class
  Cardinal size;                     // |T|
};

Classification classify(const TreePresentation& p);

// Recursive rank for acyclic presentations; throws PreconditionError on a
// presentation whose unfolding has rays.
std::size_t rank_presented(const TreePresentation& p);

struct PresentedMotion {
  std::optional<Cardinal> moved;  // nullopt: asymmetric

  bool asymmetric() const { return !moved; }
  std::string str() const { return moved ? moved->str() : "asymmetric"; }
  friend bool operator==(const PresentedMotion&, const PresentedMotion&) = default;
};

PresentedMotion motion_presented(const TreePresentation& p);

struct PresentedReport {
  Classification classification;
  PresentedMotion motion;
  // a(T,w) for finite, rayless and one-ended trees; a(T) for trees with a
  // double ray (that theorem is stated for the unrooted tree).
  Cardinal count;
  std::optional<std::size_t> rank;  // rayless (incl. finite) only
  std::string theorem;              // finite | rayless | one-ended | double-ray
};

// Minimizes, classifies and evaluates the applicable counting rule.
PresentedReport count_presented(const TreePresentation& p);

// Unfolding down to `depth` (all vertices when nullopt; then the presentation
// must be finite). Vertex labels are `<class>_<preorder index>`. Throws
// UnsupportedFragment if an infinite multiplicity is met or more than
// `max_vertices` vertices would be produced.
RootedTree unfold(const TreePresentation& p, std::optional<std::size_t> depth = std::nullopt,
                  std::size_t max_vertices = 1'000'000);

struct Certificate {
  RootedTree truncation;
  AsymSet set;
  // Vertices at the depth limit whose unfolding continues below it.
  std::vector<Vertex> boundary;
  bool verified = false;
  // The colored truncation is asymmetric even without fixing the boundary.
  bool fully_asymmetric = false;
};

// 2-coloring of the depth-limited unfolding. Siblings of one class receive
// pairwise inequivalent asymmetrizing colorings of their truncated subtree;
// where a subtree cut by the depth limit has too few, its members are colored
// one level further down instead. `verified` is the independent check that
// the colored truncation has no nontrivial automorphism fixing every boundary
// vertex.
// Throws PreconditionError when the count is 0 or depth is 0; nullopt when
// some class lacks enough inequivalent colorings inside the truncation.
std::optional<Certificate> asym_certificate(const TreePresentation& p, std::size_t depth);

}  // namespace asymtree::presented
