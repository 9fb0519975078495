#pragma once

#include <cstddef>
#include <utility>

#include "pathtsp/instance.hpp"
#include "pathtsp/tree.hpp"

namespace pathtsp {

/// Minimum-weight spanning tree of the graph on n vertices with the given edges
/// (Kruskal; ties broken by edge order). Throws if the edges do not connect V.
Tree min_spanning_tree(int n, const std::vector<std::pair<Edge, Rational>>& weighted_edges);

/// x as a convex combination of spanning trees of its support, by column
/// generation on the packing master  max Σ p_S  s.t.  Σ p_S χ^S ≤ x.
/// Throws PreconditionError when x is not in the spanning tree polytope.
TreeDistribution decompose(const EdgeVector& x, int n, std::size_t pivot_limit = 2'000'000);

struct RoundedDistribution {
  TreeDistribution rounded;   // weights (ε/n²)⌊(n²/ε) p⌋
  TreeDistribution residual;  // the remainders, tagged "residual"
};

RoundedDistribution round_distribution(const TreeDistribution& d, const Rational& eps, int n);

/// True when every weight is an integer multiple of ε/n².
bool on_grid(const TreeDistribution& d, const Rational& eps, int n);

}  // namespace pathtsp
