#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pathtsp/instance.hpp"
#include "pathtsp/tree.hpp"

namespace pathtsp {

/// Nested shores {s} = L_0 ⊂ L_1 ⊂ ... ⊂ L_ℓ = V∖{t}, stored as a rank per
/// vertex: v ∈ L_j iff rank[v] ≤ j (rank[t] = ℓ+1). Levels whose load is below
/// ξ form the ξ-narrow subchain, indexed q = 0..ℓ'.
class CutChain {
 public:
  CutChain() = default;
  CutChain(int n, int s, int t, std::vector<int> rank, std::vector<Rational> loads, Rational xi = 2);

  /// Builds the ranks from explicit shores (each a vertex list).
  static CutChain from_levels(int n, int s, int t, const std::vector<std::vector<int>>& levels, std::vector<Rational> loads,
                              Rational xi = 2);

  int n() const { return n_; }
  int s() const { return s_; }
  int t() const { return t_; }
  const Rational& xi() const { return xi_; }
  CutChain with_xi(const Rational& xi) const;
  /// The same chain seen from t: level j becomes V ∖ L_{ℓ-j}.
  CutChain reversed() const;

  int level_count() const { return static_cast<int>(loads_.size()); }
  const Rational& load(int level) const { return loads_[level]; }
  const std::vector<int>& rank() const { return rank_; }
  std::vector<char> level_set(int level) const;
  std::vector<int> level_members(int level) const;

  /// Levels crossed by e form the half-open range [first, second).
  std::pair<int, int> level_span(Edge e) const;
  bool level_crossed(Edge e, int level) const {
    const auto [lo, hi] = level_span(e);
    return lo <= level && level < hi;
  }

  int xi_count() const { return static_cast<int>(xi_levels_.size()); }
  int xi_level(int q) const { return xi_levels_[q]; }
  /// -1 when the level is not ξ-narrow.
  int xi_index_of_level(int level) const { return xi_index_[level]; }
  std::pair<int, int> xi_span(Edge e) const;
  bool xi_crossed(Edge e, int q) const { return level_crossed(e, xi_levels_[q]); }

  /// |S ∩ δ(L_j)| for every level j.
  std::vector<int> crossings(const Tree& tree) const;

  bool operator==(const CutChain&) const = default;

 private:
  int n_ = 0;
  int s_ = 0;
  int t_ = 0;
  std::vector<int> rank_;
  std::vector<Rational> loads_;
  Rational xi_;
  std::vector<int> xi_levels_;
  std::vector<int> xi_index_;
};

/// All cuts δ(U), s ∈ U ∌ t, with x(δ(U)) < 2, as a chain. Exhaustive for
/// n ≤ 22, exact max-flow per vertex pair above. Throws PreconditionError when
/// the narrow cuts do not nest or an even cut is below 2 (x infeasible).
CutChain narrow_cuts(const EdgeVector& x, const Instance& inst, const Rational& xi = 2);

struct IntersectionMargin {
  int first;
  int second;
  Rational shared;  // x(C ∩ C')
  Rational margin;  // ½x(C) + ½x(C') − 1 − x(C ∩ C')
};

std::vector<IntersectionMargin> pairwise_intersection_check(const CutChain& chain, const EdgeVector& x);

struct CutStats {
  int level = 0;
  Rational load;
  Rational p_even;
  Rational p_one;
  Rational p_many;
  Rational crossing_mass;  // Σ p_S |S ∩ C|
  bool tree_disjoint = false;  // some atom misses the cut
};

std::vector<CutStats> cut_stats(const CutChain& chain, const TreeDistribution& d);

/// Human-readable violations of the even/one/many relations; empty when all hold.
std::vector<std::string> cut_stats_violations(const std::vector<CutStats>& stats);

struct PackingMargin {
  Edge edge;
  Rational singleton_mass;  // Σ_C Σ_{S : S∩C = {e}} p_S
  Rational path_mass;       // Σ_{S : e ∈ I_S} p_S
};

/// Per-edge terms of the packing inequality; it holds iff singleton ≤ path everywhere.
std::vector<PackingMargin> packing_check(const CutChain& chain, const TreeDistribution& d);

}  // namespace pathtsp
