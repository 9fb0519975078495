#pragma once

#include <compare>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pathtsp/instance.hpp"
#include "pathtsp/rational.hpp"

namespace pathtsp {

/// Edge set of a spanning tree, kept sorted so trees compare lexicographically.
class Tree {
 public:
  Tree() = default;
  explicit Tree(std::vector<Edge> edges);

  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t size() const { return edges_.size(); }
  bool contains(Edge e) const;

  /// |S ∩ δ(U)|
  int crossing_count(std::span<const char> in_set) const;

  /// (S \ {removed}) ∪ {added}; the result is not checked for being a tree.
  Tree exchanged(Edge removed, Edge added) const;

  auto operator<=>(const Tree&) const = default;

 private:
  std::vector<Edge> edges_;
};

/// n-1 edges, connected, acyclic (union-find).
bool is_spanning_tree(const Tree& tree, int n);

/// Edges of the unique from-to path, ordered starting at `from`.
std::vector<Edge> tree_path(const Tree& tree, int n, int from, int to);

std::vector<int> tree_degrees(const Tree& tree, int n);

/// One weighted tree of a distribution. `origin` is provenance only
/// ("decomposition", "exchange", "residual", "fixture", ...).
struct Atom {
  Tree tree;
  Rational weight;
  std::string origin;
};

/// Convex (or, during intermediate passes, sub-convex) combination of spanning
/// trees. Atoms stay sorted by tree; adding an existing tree merges weights.
class TreeDistribution {
 public:
  TreeDistribution() = default;

  void add(const Tree& tree, const Rational& weight, const std::string& origin);
  /// Subtracts weight; drops the atom when it reaches zero. Throws if absent or overdrawn.
  void remove(const Tree& tree, const Rational& weight);

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }
  const Atom* find(const Tree& tree) const;

  Rational total_weight() const;
  /// Σ_S p_S χ^S
  EdgeVector reconstruct() const;

 private:
  std::vector<Atom> atoms_;
};

/// Blocks "tree a/b" followed by the tree's edges "u v", in canonical tree order.
std::string emit_distribution(const TreeDistribution& d);
TreeDistribution parse_distribution(std::string_view text, int n);

}  // namespace pathtsp
